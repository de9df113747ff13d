"""First-order bicovariant calculus: forms, vector fields, d, M and N.

Covariant tensors are stored in right-coefficient form
``omega^{i1} (x) ... (x) omega^{in} a_{i1...in}`` and contravariant ones in
left-coefficient form ``b^{i1...ip} t_{i1} (x) ... (x) t_{ip}``.  A one-form is
a degree-1 :class:`Form`; a vector field is a degree-1 :class:`Field`.

Index tuples are 0-based; for GL_q(2) the double index ``(i1, i2)`` is the
single index ``2*i1 + i2``.
"""

from __future__ import annotations

import itertools
from typing import Mapping, Optional

from .dual import BasisFunctionals
from .ncalg import (AlgebraElement, AlgebraError, Instance, TensorElement, _acc,
                    antipode, coproduct, counit)
from .qscalar import ONE, ZERO, QScalar

__all__ = ["Form", "Field", "Calculus", "OneForm", "VectorField"]


def _add_el(store: dict, key, el: AlgebraElement) -> None:
    cur = store.get(key)
    el = el if cur is None else cur + el
    if el.is_zero():
        store.pop(key, None)
    else:
        store[key] = el


class _Graded:
    __slots__ = ("inst", "degree", "coeffs")

    def __init__(self, inst: Instance, degree: int, coeffs: Mapping = ()):
        self.inst = inst
        self.degree = degree
        self.coeffs = {}
        for k, v in dict(coeffs).items():
            if len(k) != degree:
                raise ValueError(f"index {k} does not match degree {degree}")
            if not v.is_zero():
                self.coeffs[tuple(k)] = v

    def _same(self, other):
        if type(other) is not type(self):
            return False
        if other.degree != self.degree:
            raise ValueError(f"degree mismatch {self.degree} vs {other.degree}")
        return True

    def __add__(self, other):
        # an empty tensor is neutral whatever its nominal degree
        if type(other) is type(self) and other.degree != self.degree:
            if other.is_zero():
                return self
            if self.is_zero():
                return other
        if not self._same(other):
            return NotImplemented
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            _add_el(out, k, v)
        return type(self)(self.inst, self.degree, out)

    def __neg__(self):
        return type(self)(self.inst, self.degree, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "_Graded":
        return type(self)(self.inst, self.degree, {k: v * c for k, v in self.coeffs.items()})

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.degree, frozenset(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, idx) -> AlgebraElement:
        return self.coeffs.get(tuple(idx), self.inst.zero())

    def specialize(self, q0):
        return {k: v.specialize(q0) for k, v in self.coeffs.items()}


class Form(_Graded):
    """``sum_I omega^I a_I`` in the tensor power of Gamma (right coefficients)."""

    __slots__ = ()

    def __mul__(self, a):
        # right multiplication by a function or scalar
        if isinstance(a, AlgebraElement):
            return Form(self.inst, self.degree, {k: v * a for k, v in self.coeffs.items()})
        return self.scale(a)

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(
            "omega" + "".join(f"[{i + 1}]" for i in k) + f"*({v})" if k else f"({v})"
            for k, v in sorted(self.coeffs.items()))

    __repr__ = __str__


class Field(_Graded):
    """``sum_I b^I t_I`` in the tensor power of Xi (left coefficients)."""

    __slots__ = ()

    def __rmul__(self, a):
        if isinstance(a, AlgebraElement):
            return Field(self.inst, self.degree, {k: a * v for k, v in self.coeffs.items()})
        return self.scale(a)

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"({v})*t" + "".join(f"[{i + 1}]" for i in k)
                          for k, v in sorted(self.coeffs.items()))

    __repr__ = __str__


def OneForm(inst: Instance, coeffs) -> Form:
    """Degree-1 form from a list of right coefficients ``a_i``."""
    return Form(inst, 1, {(i,): c for i, c in enumerate(coeffs)})


def VectorField(inst: Instance, coeffs) -> Field:
    """Degree-1 field from a list of left coefficients ``a^i``."""
    return Field(inst, 1, {(i,): c for i, c in enumerate(coeffs)})


class Calculus:
    """The bicovariant bimodules Gamma and Xi over an FRT instance."""

    def __init__(self, basis: BasisFunctionals):
        self.basis = basis
        self.inst = inst = basis.inst
        self.n = n = basis.n
        frt = inst.frt
        m = frt.n
        if m * m != n:
            raise AlgebraError("adjoint matrices need an FRT instance with n^2 functionals")
        T = lambda i, j: AlgebraElement(inst, {(inst.index[frt.T[i][j]],): ONE})
        Tsinv = lambda i, j: antipode(T(i, j), inverse=True)
        Ts = lambda i, j: antipode(T(i, j))
        # M_{i1i2}^{j1j2} = S^-1(T^{j2}_{i2}) T^{i1}_{j1};  N^{j1j2}_{i1i2} = S(T^{i1}_{j1}) T^{j2}_{i2}
        self.M = [[Tsinv(j % m, i % m) * T(i // m, j // m) for j in range(n)] for i in range(n)]
        self.N = [[Ts(i // m, j // m) * T(j % m, i % m) for i in range(n)] for j in range(n)]
        self._lm_memo: dict = {}
        self._Mtab = None

    # -- bases ------------------------------------------------------------

    def omega(self, i: int) -> Form:
        return Form(self.inst, 1, {(i,): self.inst.one()})

    def t(self, i: int) -> Field:
        return Field(self.inst, 1, {(i,): self.inst.one()})

    def omega_tensor(self, idx) -> Form:
        return Form(self.inst, len(idx), {tuple(idx): self.inst.one()})

    def t_tensor(self, idx) -> Field:
        return Field(self.inst, len(idx), {tuple(idx): self.inst.one()})

    def eta(self, i: int) -> Form:
        """Right-invariant basis form ``omega^j S(M_j^i)``."""
        return Form(self.inst, 1, {(j,): antipode(self.M[j][i]) for j in range(self.n)})

    def h(self, i: int) -> Field:
        """Right-invariant field ``S^-1(N^j_i) t_j``."""
        return Field(self.inst, 1, {(j,): antipode(self.N[j][i], inverse=True)
                                    for j in range(self.n)})

    def scalar_form(self, a: AlgebraElement) -> Form:
        return Form(self.inst, 0, {(): a})

    # -- bimodule structure of Gamma ----------------------------------------

    def left_multiply(self, b: AlgebraElement, rho: Form) -> Form:
        """``b omega^i = omega^j (f_j^i * b)``, slot by slot."""
        if rho.degree == 0:
            return Form(self.inst, 0, {(): b * rho[()]} if rho.coeffs else {})
        out: dict = {}
        for idx, a in rho.coeffs.items():
            for jdx, c in self._push(b, idx).items():
                _add_el(out, jdx, c * a)
        return Form(self.inst, rho.degree, out)

    def _push(self, b: AlgebraElement, idx) -> dict:
        # b omega^idx = sum_J omega^J c_J ; memoized per (normal word, idx)
        out: dict = {}
        for w, c in b.terms.items():
            for jdx, el in self._push_word(w, tuple(idx)).items():
                _add_el(out, jdx, el * c)
        return out

    def _push_word(self, w, idx) -> dict:
        key = (w, idx)
        hit = self._lm_memo.get(key)
        if hit is not None:
            return hit
        state = {(): AlgebraElement(self.inst, {w: ONE})}
        for i in idx:
            nxt: dict = {}
            for pre, c in state.items():
                for j in range(self.n):
                    _add_el(nxt, pre + (j,), self.basis.f_conv(j, i, c, "left"))
            state = nxt
        self._lm_memo[key] = state
        return state

    def to_left(self, rho: Form) -> list:
        """Left coefficients ``b_j`` with ``rho = b_j omega^j``:
        ``omega^i a = a_1 f_j^i(S a_2) omega^j``."""
        if rho.degree != 1:
            raise ValueError("left-coefficient form is defined for one-forms")
        inst = self.inst
        out = [inst.zero() for _ in range(self.n)]
        for (i,), a in rho.coeffs.items():
            for w, c in a.terms.items():
                for (w1, w2), c2 in inst.coproduct_word(w).items():
                    fm = self.basis.F.element(inst.antipode_word(w2))
                    for j in range(self.n):
                        if fm[j][i]:
                            out[j] = out[j] + AlgebraElement(inst, {w1: c * c2 * fm[j][i]})
        return out

    def from_left(self, bs) -> Form:
        out = Form(self.inst, 1)
        for j, b in enumerate(bs):
            if not b.is_zero():
                out = out + self.left_multiply(b, self.omega(j))
        return out

    # -- d, P and the bracket ---------------------------------------------

    def d(self, a: AlgebraElement) -> Form:
        """``da = omega^i (chi_i * a)``."""
        return Form(self.inst, 1, {(i,): self.basis.chi_conv(i, a, "left")
                                   for i in range(self.n)})

    def d_left(self, a: AlgebraElement) -> list:
        """Left coefficients of da from ``da = (-S chi_i * a) omega^i``."""
        inst = self.inst
        out = [inst.zero() for _ in range(self.n)]
        for w, c in a.terms.items():
            for (w1, w2), c2 in inst.coproduct_word(w).items():
                v = self.basis.chi_vector(AlgebraElement(inst, inst.antipode_word(w2)))
                for i in range(self.n):
                    if v[i]:
                        out[i] = out[i] - AlgebraElement(inst, {w1: c * c2 * v[i]})
        return out

    def P(self, rho: Form) -> Form:
        """Projection to left-invariant forms: ``omega^i a_i -> omega^i eps(a_i)``."""
        return Form(self.inst, rho.degree,
                    {k: self.inst.scalar(counit(v)) for k, v in rho.coeffs.items()})

    def bracket(self, V: Field, rho: Form) -> AlgebraElement:
        """``<b^j t_j, omega^i a_i> = b^i a_i``."""
        if V.degree != 1 or rho.degree != 1:
            raise ValueError("bracket pairs a vector field with a one-form")
        out = self.inst.zero()
        for (i,), b in V.coeffs.items():
            a = rho.coeffs.get((i,))
            if a is not None:
                out = out + b * a
        return out

    # -- vector fields ------------------------------------------------------

    def apply(self, V: Field, b: AlgebraElement) -> AlgebraElement:
        """``V(b) = a^i (chi_i * b)``."""
        if V.degree != 1:
            raise ValueError("only vector fields act on functions")
        out = self.inst.zero()
        for (i,), a in V.coeffs.items():
            out = out + a * self.basis.chi_conv(i, b, "left")
        return out

    def box(self, v: Field, a: AlgebraElement) -> Field:
        """Right product ``t_i [] a = (f_i^j * a) t_j``, last slot first."""
        out: dict = {}
        for idx, b in v.coeffs.items():
            state = {(): a}
            for i in reversed(idx):
                nxt: dict = {}
                for suf, c in state.items():
                    for j in range(self.n):
                        _add_el(nxt, (j,) + suf, self.basis.f_conv(i, j, c, "left"))
                state = nxt
            for jdx, c in state.items():
                _add_el(out, jdx, b * c)
        return Field(self.inst, v.degree, out)

    def field_tensor(self, v: Field, w: Field) -> Field:
        """``(b^I t_I) (x) (c^J t_J) = b^I (t_I [] c^J) (x) t_J``."""
        out: dict = {}
        for idx, b in v.coeffs.items():
            for jdx, c in w.coeffs.items():
                moved = self.box(Field(self.inst, len(idx), {idx: self.inst.one()}), c)
                for kdx, e in moved.coeffs.items():
                    _add_el(out, kdx + jdx, b * e)
        return Field(self.inst, v.degree + w.degree, out)

    # -- coactions ------------------------------------------------------------

    def M_product(self, K, I) -> AlgebraElement:
        out = self.inst.one()
        for k, i in zip(K, I):
            out = out * self.M[k][i]
        return out

    def form_right_coaction(self, rho: Form) -> dict:
        """``omega^I c -> omega^K c_1 (x) M_K^I c_2`` as {(K, w1, w2): coeff}."""
        out: dict = {}
        for idx, c in rho.coeffs.items():
            dc = coproduct(c)
            for K in itertools.product(range(self.n), repeat=rho.degree):
                mk = self.M_product(K, idx)
                if mk.is_zero():
                    continue
                for (w1, w2), c2 in dc.terms.items():
                    for w3, c3 in (mk * AlgebraElement(self.inst, {w2: ONE})).terms.items():
                        _acc(out, (K, w1, w3), c2 * c3)
        return out

    def form_left_coaction(self, rho: Form) -> dict:
        """``omega^I c -> c_1 (x) omega^I c_2`` as {(I, w1, w2): coeff}."""
        out: dict = {}
        for idx, c in rho.coeffs.items():
            for (w1, w2), c2 in coproduct(c).terms.items():
                _acc(out, (idx, w1, w2), c2)
        return out

    def field_left_coaction(self, v: Field) -> dict:
        """``b^I t_I -> b_1 (x) b_2 t_I`` as {(I, w1, w2): coeff}."""
        out: dict = {}
        for idx, b in v.coeffs.items():
            for (w1, w2), c in coproduct(b).terms.items():
                _acc(out, (idx, w1, w2), c)
        return out

    def field_right_coaction(self, v: Field) -> dict:
        """``b^I t_I -> b_1 t_K (x) b_2 N^K_I`` as {(K, w1, w2): coeff}."""
        out: dict = {}
        for idx, b in v.coeffs.items():
            db = coproduct(b)
            for K in itertools.product(range(self.n), repeat=v.degree):
                nk = self.inst.one()
                for k, i in zip(K, idx):
                    nk = nk * self.N[k][i]
                if nk.is_zero():
                    continue
                for (w1, w2), c in db.terms.items():
                    for w3, c3 in (AlgebraElement(self.inst, {w2: ONE}) * nk).terms.items():
                        _acc(out, (K, w1, w3), c * c3)
        return out

    def invariant_form(self, rho: Form, side: str) -> dict:
        """Expected coaction of an invariant form: I (x) rho or rho (x) I."""
        out: dict = {}
        for idx, c in rho.coeffs.items():
            for w, v in c.terms.items():
                key = (idx, (), w) if side == "left" else (idx, w, ())
                _acc(out, key, v)
        return out

    # -- tables for convolutions of forms ------------------------------------

    def M_tables(self):
        """F(M_k^i) (n x n matrices) and chi(M_k^i) (length-n vectors)."""
        if self._Mtab is None:
            F = [[self.basis.f_matrix(self.M[k][i]) for i in range(self.n)] for k in range(self.n)]
            X = [[self.basis.chi_vector(self.M[k][i]) for i in range(self.n)] for k in range(self.n)]
            self._Mtab = (F, X)
        return self._Mtab
