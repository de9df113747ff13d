import itertools

import pytest

from qcartan import Form, Op
from qcartan.cartan import CartanError


def forms(ctx):
    calc = ctx.calc
    a, b = ctx.gens()[:2]
    return [ctx.form0(b), calc.omega(1), calc.d(a),
            Form(ctx.inst, 2, {(0, 3): b}), Form(ctx.inst, 2, {(2, 1): ctx.inst.one()})]


def test_contraction_of_basis(ctx):
    cart = ctx.cartan
    for i in range(ctx.n):
        for j in range(ctx.n):
            val = cart.contract(ctx.calc.t(i), ctx.calc.omega(j))
            assert val[()] == (ctx.inst.one() if i == j else ctx.inst.zero())


def test_lie_along_t_is_chi_convolution(ctx):
    cart = ctx.cartan
    for th in forms(ctx):
        for i in (0, 3):
            assert cart.equal(cart.lie(ctx.calc.t(i), th), cart.lie_t(i, th))


def test_d_commutes_with_lie(ctx):
    cart = ctx.cartan
    V = ctx.test_field()
    for th in forms(ctx)[:4]:
        assert cart.equal(cart.d(cart.lie(V, th)), cart.lie(V, cart.d(th)))


def _mixed(ctx, i, k, th, reverse):
    cart = ctx.cartan
    Bf = ctx.braid.B_f
    C = cart.structure_constants()
    lhs = cart.lie_t(i, cart.contract(ctx.calc.t(k), th))
    for (r, s), c in Bf[(i, k)].items():
        if reverse:
            term = cart.lie_t(s, cart.contract(ctx.calc.t(r), th))
        else:
            term = cart.contract(ctx.calc.t(r), cart.lie_t(s, th))
        lhs = lhs - term.scale(c)
    rhs = Form(ctx.inst, th.degree - 1)
    for l in range(ctx.n):
        if C[i][l][k]:
            rhs = rhs + cart.contract(ctx.calc.t(l), th).scale(C[i][l][k])
    return cart.equal(lhs, rhs)


def test_braided_mixed_commutator(ctx):
    th = Form(ctx.inst, 2, {(0, 3): ctx.gens()[1], (1, 2): ctx.inst.one()})
    for i, k in itertools.product(range(ctx.n), repeat=2):
        assert _mixed(ctx, i, k, th, reverse=False)


def test_wrong_factor_order_fails(ctx):
    th = Form(ctx.inst, 2, {(0, 3): ctx.gens()[1], (1, 2): ctx.inst.one()})
    assert not all(_mixed(ctx, i, k, th, reverse=True)
                   for i, k in itertools.product(range(ctx.n), repeat=2))


def test_structure_constants_classical(ctx1):
    # [X_i, X_k] = C_i^l_k X_l for the gl(2) vector fields at q = 1
    calc, n = ctx1.calc, ctx1.n
    C = ctx1.cartan.structure_constants()
    for a in ctx1.monomials(2):
        for i, k in itertools.product(range(n), repeat=2):
            Xi, Xk = calc.t(i), calc.t(k)
            lhs = calc.apply(Xi, calc.apply(Xk, a)) - calc.apply(Xk, calc.apply(Xi, a))
            rhs = ctx1.inst.zero()
            for l in range(n):
                rhs = rhs + C[i][l][k] * calc.apply(calc.t(l), a)
            assert lhs == rhs


def test_defect_index_nonzero_at_generic_q(ctx):
    a = ctx.gens()[0]
    vals = [ctx.cartan.defect_index(i, k, a).value
            for i, k in itertools.product(range(ctx.n), repeat=2)]
    assert any(not v.is_zero() for v in vals)


def test_defect_index_vanishes_at_q_one(ctx1):
    for x in ctx1.gens():
        for i, k in itertools.product(range(ctx1.n), repeat=2):
            assert ctx1.cartan.defect_index(i, k, x).value.is_zero()


def test_delta_normal_form_reproduces_operator(ctx):
    cart = ctx.cartan
    th = ctx.calc.omega(2)
    x = Form(ctx.inst, 1, {(1,): ctx.gens()[0]})
    word = (Op("lt", index=0), Op("it", index=3))
    terms = cart.delta(word, th)
    assert cart.equal(cart.apply_terms(terms, x), cart.apply_word(word, ctx.ext.wedge(th, x)))


def test_field_on_form_rejected(ctx):
    with pytest.raises(CartanError):
        ctx.cartan.apply(Op("field", V=ctx.calc.t(0)), ctx.calc.omega(0))
