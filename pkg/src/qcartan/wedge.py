"""Braiding, antisymmetrizers and the exterior algebra of forms.

Numerical operators on Gamma^(x)n are sparse matrices ``{row: {col: c}}``
keyed by index tuples; row = lower index, so an operator W sends
``omega^I a_I`` to ``omega^K W_K^I a_I``.  Products compose as matrices: in
``A B`` the factor B acts first.

An n-form is stored as any representative tensor; its value is the image
under W_n and two forms are equal when their images agree.  Wedge products
are tensor products of representatives.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from .calculus import Calculus, Field, Form, _add_el
from .dual import _matinv, solve_x_basis
from .linalg import nullspace
from .ncalg import AlgebraElement, CheckRow, _acc, antipode, coproduct
from .qscalar import ONE, ZERO, get_degree_cap

__all__ = ["BraidData", "Exterior", "WedgeError", "apply_op", "mat_add", "mat_equal",
           "mat_identity", "mat_mul"]


class WedgeError(ValueError):
    """Braid data inconsistent or degree above the wedge cap."""


def mat_identity(n: int, deg: int) -> dict:
    return {I: {I: ONE} for I in itertools.product(range(n), repeat=deg)}


def mat_mul(A: dict, B: dict) -> dict:
    out = {}
    for r, row in A.items():
        acc: dict = {}
        for k, a in row.items():
            for c, b in B.get(k, {}).items():
                _acc(acc, c, a * b)
        if acc:
            out[r] = acc
    return out


def mat_add(A: dict, B: dict, sign: int = 1) -> dict:
    out = {r: dict(row) for r, row in A.items()}
    for r, row in B.items():
        tgt = out.setdefault(r, {})
        for c, v in row.items():
            _acc(tgt, c, v if sign > 0 else -v)
        if not tgt:
            del out[r]
    return out


def mat_equal(A: dict, B: dict) -> bool:
    clean = lambda M: {r: row for r, row in M.items() if row}
    return clean(A) == clean(B)


def embed(op2: dict, n: int, deg: int, slot: int) -> dict:
    """Operator on slots (slot, slot+1) of degree ``deg`` (0-based slot)."""
    out = {}
    for K in itertools.product(range(n), repeat=deg):
        row = {}
        for (i, j), c in op2.get((K[slot], K[slot + 1]), {}).items():
            row[K[:slot] + (i, j) + K[slot + 2:]] = c
        if row:
            out[K] = row
    return out


def shift(op: dict, n: int, offset: int, total: int) -> dict:
    """Place an operator on slots offset..offset+d-1, identity elsewhere."""
    d = len(next(iter(op))) if op else 0
    out = {}
    for K in itertools.product(range(n), repeat=total):
        mid = K[offset:offset + d]
        row = {}
        for I, c in op.get(mid, {}).items():
            row[K[:offset] + I + K[offset + d:]] = c
        if row:
            out[K] = row
    return out


def dense16(n: int, M: dict) -> list:
    idx = list(itertools.product(range(n), repeat=2))
    return [[M.get(r, {}).get(c, ZERO) for c in idx] for r in idx]


@dataclass
class BraidData:
    n: int
    sigma: dict
    B: dict  # exact inverse of sigma
    B_f: dict  # f_i^s(N^r_k)
    _I: dict = field(default_factory=dict)
    _W: dict = field(default_factory=dict)

    @classmethod
    def build(cls, calc: Calculus, check: bool = True) -> "BraidData":
        n, basis = calc.n, calc.basis
        Fm = [[basis.f_matrix(calc.M[j][k]) for k in range(n)] for j in range(n)]
        Fn = [[basis.f_matrix(calc.N[r][k]) for k in range(n)] for r in range(n)]
        sigma, Bf = {}, {}
        for i, j in itertools.product(range(n), repeat=2):
            row = {}
            for k, l in itertools.product(range(n), repeat=2):
                v = Fm[j][k][i][l]
                if v:
                    row[(k, l)] = v
            sigma[(i, j)] = row
        for i, k in itertools.product(range(n), repeat=2):
            row = {}
            for r, s in itertools.product(range(n), repeat=2):
                v = Fn[r][k][i][s]
                if v:
                    row[(r, s)] = v
            Bf[(i, k)] = row
        idx = list(itertools.product(range(n), repeat=2))
        inv = _matinv(dense16(n, sigma))
        B = {idx[a]: {idx[b]: inv[a][b] for b in range(len(idx)) if inv[a][b]}
             for a in range(len(idx))}
        out = cls(n, sigma, B, Bf)
        if check and not out.braid_equation():
            raise WedgeError("sigma does not satisfy the braid equation")
        return out

    def braid_equation(self) -> bool:
        s12 = embed(self.sigma, self.n, 3, 0)
        s23 = embed(self.sigma, self.n, 3, 1)
        return mat_equal(mat_mul(mat_mul(s12, s23), s12), mat_mul(mat_mul(s23, s12), s23))

    def is_flip(self) -> bool:
        flip = {(i, j): {(j, i): ONE} for i, j in itertools.product(range(self.n), repeat=2)}
        return mat_equal(self.sigma, flip)

    def chain(self, deg: int, k: int) -> dict:
        """sigma_12 sigma_23 ... sigma_{k,k+1} on degree ``deg``."""
        out = mat_identity(self.n, deg)
        for s in range(k):
            out = mat_mul(out, embed(self.sigma, self.n, deg, s))
        return out

    def I(self, deg: int) -> dict:
        hit = self._I.get(deg)
        if hit is None:
            hit = mat_identity(self.n, deg)
            for k in range(1, deg):
                hit = mat_add(hit, self.chain(deg, k), -1 if k % 2 else 1)
            self._I[deg] = hit
        return hit

    def W(self, deg: int) -> dict:
        hit = self._W.get(deg)
        if hit is None:
            if deg <= 1:
                hit = mat_identity(self.n, deg)
            else:
                hit = mat_mul(shift(self.W(deg - 1), self.n, 1, deg), self.I(deg))
            self._W[deg] = hit
        return hit

    def decomposition_holds(self, deg: int, k: int) -> bool:
        """I_{1..n} = I_{1..k} + (-1)^k sigma_12...sigma_{k,k+1} I_{k+1..n}."""
        left = shift(self.I(k), self.n, 0, deg)
        tail = shift(self.I(deg - k), self.n, k, deg)
        rhs = mat_add(left, mat_mul(self.chain(deg, k), tail), -1 if k % 2 else 1)
        return mat_equal(self.I(deg), rhs)


def apply_op(op: dict, rho: Form) -> Form:
    out: dict = {}
    for K, row in op.items():
        acc = None
        for I, c in row.items():
            a = rho.coeffs.get(I)
            if a is not None:
                acc = a * c if acc is None else acc + a * c
        if acc is not None and not acc.is_zero():
            out[K] = acc
    return Form(rho.inst, rho.degree, out)


class Exterior:
    """Wedge products, exterior d, contractions and convolutions on forms."""

    def __init__(self, calc: Calculus, braid: Optional[BraidData] = None,
                 max_degree: int = 4):
        self.calc = calc
        self.inst = calc.inst
        self.n = calc.n
        self.basis = calc.basis
        self.braid = braid or BraidData.build(calc)
        self.max_degree = max_degree
        self._tau = None
        self._MK: dict = {}

    def _cap(self, deg: int) -> None:
        if deg > self.max_degree:
            raise WedgeError(f"form degree {deg} exceeds wedge cap {self.max_degree}")

    # -- values and equality ----------------------------------------------

    def value(self, rho: Form) -> Form:
        if rho.degree <= 1:
            return rho
        self._cap(rho.degree)
        return apply_op(self.braid.W(rho.degree), rho)

    def equal(self, x: Form, y: Form) -> bool:
        if x.degree != y.degree:
            return self.is_zero(x) and self.is_zero(y)
        return self.value(x - y).is_zero()

    def is_zero(self, x: Form) -> bool:
        return self.value(x).is_zero()

    # -- products -----------------------------------------------------------

    def wedge(self, x: Form, y: Form) -> Form:
        """Tensor product of representatives, coefficients moved across."""
        self._cap(x.degree + y.degree)
        calc = self.calc
        out: dict = {}
        for I, a in x.coeffs.items():
            moved = calc.left_multiply(a, y)
            for J, b in moved.coeffs.items():
                _add_el(out, I + J, b)
        return Form(self.inst, x.degree + y.degree, out)

    def tensor(self, x: Form, y: Form) -> Form:
        return self.wedge(x, y)

    # -- exterior derivative -----------------------------------------------

    def maurer_cartan(self) -> list:
        """Representatives of d(omega^i) from omega^i = d(x_2) S^-1(x_1)."""
        if self._tau is None:
            calc = self.calc
            xb = solve_x_basis(self.basis)
            taus = []
            for i in range(self.n):
                tau = Form(self.inst, 2)
                for (w1, w2), c in coproduct(xb.x[i]).terms.items():
                    da = calc.d(AlgebraElement(self.inst, {w2: c}))
                    db = calc.d(antipode(AlgebraElement(self.inst, {w1: ONE}), inverse=True))
                    tau = tau - self.wedge(da, db)
                taus.append(tau)
            self._tau = taus
        return self._tau

    def cartan_maurer_tensor(self, i: int) -> Form:
        """``omega^a (x) omega^b chi_a(M_b^i)`` as a plain tensor."""
        out = {}
        for a in range(self.n):
            for b in range(self.n):
                v = self.basis.chi(a, self.calc.M[b][i])
                if v:
                    out[(a, b)] = self.inst.scalar(v)
        return Form(self.inst, 2, out)

    def d(self, rho: Form) -> Form:
        if rho.degree == 0:
            return self.calc.d(rho[()])
        self._cap(rho.degree + 1)
        taus = self.maurer_cartan()
        out = Form(self.inst, rho.degree + 1)
        n = rho.degree
        for I, a in rho.coeffs.items():
            for s in range(n):
                pre = I[:s]
                post = Form(self.inst, n - s - 1, {I[s + 1:]: a})
                term = self.wedge(taus[I[s]], post)
                term = Form(self.inst, n + 1, {pre + K: v for K, v in term.coeffs.items()})
                out = out + term if s % 2 == 0 else out - term
            term = Form(self.inst, n + 1, {I + K: v for K, v in self.calc.d(a).coeffs.items()})
            out = out + term if n % 2 == 0 else out - term
        return out

    # -- brackets and contractions -------------------------------------------

    def general_bracket(self, v: Field, tau: Form) -> Form:
        """``<b^J t_J, omega^I a_I> = b^{i_p...i_1} omega^{i_{p+1}...} a_I``."""
        p, m = v.degree, tau.degree
        if p > m:
            return Form(self.inst, 0)
        out = Form(self.inst, m - p)
        for I, a in tau.coeffs.items():
            b = v.coeffs.get(tuple(reversed(I[:p])))
            if b is not None:
                out = out + self.calc.left_multiply(b, Form(self.inst, m - p, {I[p:]: a}))
        return out

    def contract(self, V: Field, rho: Form) -> Form:
        """``i_V`` on forms, via the first-slot contraction of I_n(rho)."""
        if V.degree != 1:
            raise ValueError("contraction needs a vector field")
        if rho.degree == 0:
            return Form(self.inst, 0)
        irho = apply_op(self.braid.I(rho.degree), rho) if rho.degree > 1 else rho
        pieces: dict = {}
        for K, a in irho.coeffs.items():
            pieces.setdefault(K[0], {})[K[1:]] = a
        out = Form(self.inst, rho.degree - 1)
        for (j,), b in V.coeffs.items():
            if j in pieces:
                out = out + self.calc.left_multiply(b, Form(self.inst, rho.degree - 1, pieces[j]))
        return out

    # -- convolutions -----------------------------------------------------------

    def conv(self, kind: str, idx, rho: Form, side: str = "left") -> Form:
        """``phi * rho`` (left, through the right coaction) or ``rho * phi``.

        ``kind`` is ``"f"`` with ``idx = (a, b)`` or ``"chi"`` with ``idx = a``.
        """
        inst, basis = self.inst, self.basis
        if side == "right":
            out = {}
            for I, c in rho.coeffs.items():
                v = basis.f_conv(idx[0], idx[1], c, "right") if kind == "f" \
                    else basis.chi_conv(idx, c, "right")
                if not v.is_zero():
                    out[I] = v
            return Form(inst, rho.degree, out)
        out: dict = {}
        n = self.n
        for I, c in rho.coeffs.items():
            for (w1, w2), c2 in coproduct(c).terms.items():
                Fw = basis.f_word(w2)
                Xw = basis.chi_word(w2)
                ew = inst.counit_word(w2)
                for K in itertools.product(range(n), repeat=rho.degree):
                    FK, XK = self._mk_eval(K, I)
                    if kind == "f":
                        a, b = idx
                        v = sum((FK[a][m] * Fw[m][b] for m in range(n)), ZERO)
                    else:
                        a = idx
                        v = XK[a] * ew + sum((FK[a][m] * Xw[m] for m in range(n)), ZERO)
                    if v:
                        _add_el(out, K, AlgebraElement(inst, {w1: c2 * v}))
        return Form(inst, rho.degree, out)

    def _mk_eval(self, K, I):
        # F and chi of the product M_{k1}^{i1} ... M_{km}^{im}
        key = (K, I)
        hit = self._MK.get(key)
        if hit is not None:
            return hit
        n = self.n
        if not K:
            hit = ([[ONE if a == b else ZERO for b in range(n)] for a in range(n)], [ZERO] * n)
        else:
            Ft, Xt = self.calc.M_tables()
            Frest, Xrest = self._mk_eval(K[1:], I[1:])
            eps_rest = ONE if K[1:] == I[1:] else ZERO
            Fk, Xk = Ft[K[0]][I[0]], Xt[K[0]][I[0]]
            F = [[sum((Fk[a][m] * Frest[m][b] for m in range(n) if Fk[a][m]), ZERO)
                  for b in range(n)] for a in range(n)]
            X = [Xk[a] * eps_rest + sum((Fk[a][m] * Xrest[m] for m in range(n) if Fk[a][m]), ZERO)
                 for a in range(n)]
            hit = (F, X)
        self._MK[key] = hit
        return hit

    def f_conv(self, i: int, j: int, rho: Form, side: str = "left") -> Form:
        return self.conv("f", (i, j), rho, side)

    def chi_conv(self, i: int, rho: Form, side: str = "left") -> Form:
        return self.conv("chi", i, rho, side)

    # -- kernels (well-definedness of the quotient) --------------------------

    def kernel_W2(self) -> list:
        W = self.braid.W(2)
        idx = list(itertools.product(range(self.n), repeat=2))
        pos = {I: k for k, I in enumerate(idx)}
        rows = [{pos[I]: c for I, c in W.get(K, {}).items()} for K in idx]
        vecs = nullspace(rows, len(idx))
        return [Form(self.inst, 2, {idx[k]: self.inst.scalar(c) for k, c in v.items()})
                for v in vecs]
