import itertools

import pytest

from qcartan import Form
from qcartan.linalg import nullspace
from qcartan.wedge import WedgeError, mat_add, mat_equal, mat_identity, mat_mul


def rank(W, n, deg):
    idx = list(itertools.product(range(n), repeat=deg))
    pos = {I: k for k, I in enumerate(idx)}
    rows = [{pos[I]: c for I, c in W.get(K, {}).items()} for K in idx]
    return len(idx) - len(nullspace(rows, len(idx)))


def test_braid_equation_and_inverse(ctx):
    br = ctx.braid
    assert br.braid_equation()
    assert mat_equal(mat_mul(br.sigma, br.B), mat_identity(ctx.n, 2))
    assert not br.is_flip()


def test_W2(ctx):
    br = ctx.braid
    assert mat_equal(br.W(2), mat_add(mat_identity(ctx.n, 2), br.sigma, -1))


@pytest.mark.parametrize("q", [None, 2])
def test_exterior_dimensions_are_classical(inst, q):
    from qcartan import Context
    c = Context(inst, q=q)
    assert [rank(c.braid.W(k), c.n, k) for k in (2, 3, 4)] == [6, 4, 1]
    assert len(c.ext.kernel_W2()) == 10


def test_classical_sigma_is_flip(ctx1):
    assert ctx1.braid.is_flip()
    calc, ext = ctx1.calc, ctx1.ext
    for i in range(ctx1.n):
        for j in range(ctx1.n):
            wij = ext.wedge(calc.omega(i), calc.omega(j))
            wji = ext.wedge(calc.omega(j), calc.omega(i))
            assert ext.is_zero(wij + wji)


def test_d_squared(ctx):
    ext, calc = ctx.ext, ctx.calc
    for a in ctx.gens():
        assert ext.is_zero(ext.d(calc.d(a)))
    for i in range(ctx.n):
        assert ext.is_zero(ext.d(ext.d(calc.omega(i))))


def test_graded_leibniz(ctx):
    ext, calc = ctx.ext, ctx.calc
    a, b = ctx.gens()[:2]
    x = calc.d(a)
    y = Form(ctx.inst, 1, {(2,): b})
    lhs = ext.d(ext.wedge(x, y))
    rhs = ext.wedge(ext.d(x), y) - ext.wedge(x, ext.d(y))
    assert ext.equal(lhs, rhs)


def test_wedge_associative(ctx):
    ext, calc = ctx.ext, ctx.calc
    a = ctx.gens()[2]
    x, y, z = calc.omega(0), calc.d(a), calc.omega(3)
    assert ext.equal(ext.wedge(ext.wedge(x, y), z), ext.wedge(x, ext.wedge(y, z)))


def test_top_degree_nonzero_and_cap(ctx):
    ext, calc = ctx.ext, ctx.calc
    top = calc.omega(0)
    for i in (1, 2, 3):
        top = ext.wedge(top, calc.omega(i))
    assert not ext.is_zero(top)
    with pytest.raises(WedgeError):
        ext.wedge(top, calc.omega(0))
