import pytest

from qcartan import Context, Functional, build_f_chi, counit, evaluate, gl_q2, solve_x_basis
from qcartan.dual import DualError, convolve
from qcartan.qscalar import LAMBDA, ONE, ZERO


def words(ctx):
    return ctx.monomials(2)


def test_values_on_unit(ctx, inst):
    one = inst.one()
    for i in range(ctx.n):
        assert ctx.basis.chi(i, one) == ZERO
        for j in range(ctx.n):
            assert ctx.basis.f(i, j, one) == (ONE if i == j else ZERO)


def test_f_is_multiplicative(ctx):
    b = ctx.basis
    monos = ctx.monomials(1)
    for x in monos:
        for y in monos:
            for i in range(ctx.n):
                for j in range(ctx.n):
                    rhs = sum((b.f(i, k, x) * b.f(k, j, y) for k in range(ctx.n)), ZERO)
                    assert b.f(i, j, x * y) == rhs


def test_chi_recursion(ctx):
    b = ctx.basis
    monos = ctx.monomials(1)
    for x in monos:
        for y in monos:
            for i in range(ctx.n):
                rhs = b.chi(i, x) * counit(y) + sum(
                    (b.f(i, j, x) * b.chi(j, y) for j in range(ctx.n)), ZERO)
                assert b.chi(i, x * y) == rhs


def test_raw_is_lambda_times_normalized(inst, ctx):
    raw = build_f_chi(inst, "raw")
    for x in ctx.monomials(2):
        for i in range(ctx.n):
            assert raw.chi(i, x) == LAMBDA * ctx.basis.chi(i, x)


def test_classical_limit_of_f_and_chi(ctx1):
    b = ctx1.basis
    for x in ctx1.monomials(1):
        for y in ctx1.monomials(1):
            for i in range(ctx1.n):
                assert b.chi(i, x * y) == b.chi(i, x) * counit(y) + counit(x) * b.chi(i, y)
                for j in range(ctx1.n):
                    assert b.f(i, j, x) == (counit(x) if i == j else ZERO)


def test_lambda_rejects_instance_fixed_at_one():
    with pytest.raises(DualError):
        build_f_chi(gl_q2().specialize(1), "lambda")
    build_f_chi(gl_q2().specialize(1), "raw")


def test_x_basis_is_dual_to_chi(ctx):
    xb = solve_x_basis(ctx.basis)
    for j, x in enumerate(xb.x):
        assert counit(x) == ZERO
        for i in range(ctx.n):
            assert ctx.basis.chi(i, x) == (ONE if i == j else ZERO)


def test_functional_expressions(ctx):
    b = ctx.basis
    chi0 = Functional.prim("chi", 0)
    eps = Functional.eps()
    for a in ctx.monomials(2):
        assert evaluate(eps * chi0, a, b) == b.chi(0, a)
        assert evaluate(chi0 * eps, a, b) == b.chi(0, a)
        assert evaluate(2 * chi0 + eps, a, b) == 2 * b.chi(0, a) + counit(a)
        assert convolve("left", eps, a, b) == a
        assert convolve("right", eps, a, b) == a
        assert convolve("left", chi0, a, b) == b.chi_conv(0, a, "left")


def test_specialized_context_matches_symbolic(ctx, inst):
    c2 = Context(inst, q=2)
    for a, a2 in zip(ctx.monomials(2), c2.monomials(2)):
        for i in range(ctx.n):
            assert ctx.basis.chi(i, a).specialize(2) == c2.basis.chi(i, a2)
