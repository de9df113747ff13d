"""Cartan calculus on forms: i_V, Lie derivatives, commutation rules, defect index.

Operators act to the right on forms; in a word ``(O1, O2, ..., Om)`` the
rightmost operator acts first.  A commutation normal form of ``O`` past a
form ``th`` is a list of pairs ``(phi, word)`` meaning
``O(th ^ x) = sum phi ^ word(x)`` for every form ``x``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .calculus import Calculus, Field, Form
from .ncalg import AlgebraElement
from .qscalar import ONE
from .wedge import Exterior

__all__ = ["Op", "Cartan", "DefectIndexValue", "CartanError"]


class CartanError(ValueError):
    """Unsupported operator or inhomogeneous argument."""


@dataclass(frozen=True)
class Op:
    """A first-order operator: ``d``, ``i`` (contraction), ``lie``, ``field``
    (vector field acting on functions), ``lieR`` (right Lie derivative along
    ``h_i``), ``lt``/``it`` (Lie derivative / contraction along ``t_i``)."""

    kind: str
    V: Optional[Field] = None
    index: Optional[int] = None

    def __str__(self):
        if self.kind == "d":
            return "d"
        if self.kind in ("lt", "it", "lieR"):
            return f"{self.kind}[{self.index + 1}]"
        return f"{self.kind}({self.V})"


@dataclass(frozen=True)
class DefectIndexValue:
    i: int
    k: int
    argument: AlgebraElement
    value: Form


def _deg(th: Form) -> int:
    return th.degree


class Cartan:
    def __init__(self, ext: Exterior):
        self.ext = ext
        self.calc: Calculus = ext.calc
        self.inst = ext.inst
        self.n = ext.n
        self.basis = ext.basis

    # -- helpers -------------------------------------------------------------

    def form(self, a: AlgebraElement) -> Form:
        return Form(self.inst, 0, {(): a})

    def t_field(self, i: int) -> Field:
        return self.calc.t(i)

    def scale_field(self, b: AlgebraElement, V: Field) -> Field:
        return b * V

    def wedge(self, x: Form, y: Form) -> Form:
        return self.ext.wedge(x, y)

    def equal(self, x: Form, y: Form) -> bool:
        return self.ext.equal(x, y)

    # -- the three basic operators ----------------------------------------------

    def d(self, th: Form) -> Form:
        return self.ext.d(th)

    def contract(self, V: Field, th: Form) -> Form:
        return self.ext.contract(V, th)

    def lie(self, V: Field, th: Form) -> Form:
        """``l_V = i_V d + d i_V``."""
        out = self.contract(V, self.d(th))
        if th.degree > 0:
            out = out + self.d(self.contract(V, th))
        return out

    def lie_t(self, i: int, th: Form) -> Form:
        """Lie derivative along ``t_i`` as the convolution ``chi_i * th``."""
        return self.ext.chi_conv(i, th, "left")

    def lie_right(self, i: int, th: Form) -> Form:
        """``l^R_{h_i}(th) = th * chi_i`` (through the left coaction)."""
        return self.ext.chi_conv(i, th, "right")

    def apply(self, op: Op, th: Form) -> Form:
        k = op.kind
        if k == "d":
            return self.d(th)
        if k == "i":
            return self.contract(op.V, th)
        if k == "lie":
            return self.lie(op.V, th)
        if k == "it":
            return self.contract(self.t_field(op.index), th)
        if k == "lt":
            return self.lie_t(op.index, th)
        if k == "lieR":
            return self.lie_right(op.index, th)
        if k == "field":
            if th.degree != 0:
                raise CartanError("a vector field acts on functions only")
            return self.form(self.calc.apply(op.V, th[()]))
        raise CartanError(f"unsupported operator {k!r}")

    def apply_word(self, word: Sequence[Op], th: Form) -> Form:
        for op in reversed(list(word)):
            th = self.apply(op, th)
        return th

    # -- commutation relations ---------------------------------------------------

    def commutation_normal_form(self, op: Op, th: Form) -> list:
        """Terms ``(phi, word)`` with ``op(th ^ x) = sum phi ^ word(x)``."""
        p = th.degree
        sign = -1 if p % 2 else 1
        k = op.kind
        ext, inst = self.ext, self.inst
        if k == "d":
            return [(self.d(th), ()), (th.scale(sign), (Op("d"),))]
        if k in ("i", "it"):
            V = op.V if k == "i" else self.t_field(op.index)
            out = [(self.contract(V, th), ())]
            for (i,), b in V.coeffs.items():
                for j in range(self.n):
                    phi = self.calc.left_multiply(b, ext.f_conv(i, j, th)).scale(sign)
                    if not phi.is_zero():
                        out.append((phi, (Op("it", index=j),)))
            return out
        if k in ("lie", "lt"):
            V = op.V if k == "lie" else self.t_field(op.index)
            lv = self.lie(V, th) if k == "lie" else self.lie_t(op.index, th)
            out = [(lv, ())]
            for (i,), b in V.coeffs.items():
                db = self.calc.d(b)
                for j in range(self.n):
                    fth = ext.f_conv(i, j, th)
                    if fth.is_zero():
                        continue
                    out.append((self.calc.left_multiply(b, fth), (Op("lt", index=j),)))
                    if not db.is_zero():
                        out.append((self.wedge(db, fth).scale(sign), (Op("it", index=j),)))
            return out
        if k == "field":
            if p != 0:
                raise CartanError("a vector field commutes past functions only")
            a = th[()]
            out = [(self.form(self.calc.apply(op.V, a)), ())]
            for (i,), b in op.V.coeffs.items():
                for j in range(self.n):
                    c = b * self.basis.f_conv(i, j, a, "left")
                    if not c.is_zero():
                        out.append((self.form(c), (Op("field", V=self.t_field(j)),)))
            return out
        raise CartanError(f"no commutation rule for {k!r}")

    def delta(self, word: Sequence[Op], th: Form) -> list:
        """Normal form of a word past ``th`` by iterating the first-order rules."""
        terms = [(th, ())]
        for op in reversed(list(word)):
            nxt = []
            for phi, rest in terms:
                for psi, w in self.commutation_normal_form(op, phi):
                    nxt.append((psi, tuple(w) + tuple(rest)))
            terms = nxt
        return terms

    def apply_terms(self, terms: Iterable, x: Form) -> Form:
        out = None
        for phi, word in terms:
            y = self.wedge(phi, self.apply_word(word, x))
            out = y if out is None else out + y
        return out

    # -- right-invariant fields and the defect index -------------------------------

    def h_field(self, i: int) -> Field:
        return self.calc.h(i)

    def defect_index(self, i: int, k: int, a: AlgebraElement) -> DefectIndexValue:
        """``d(M_i^j)(f_j^k * a) - (a * f_i^j) d(M_j^k)``."""
        calc, basis = self.calc, self.basis
        val = Form(self.inst, 1)
        for j in range(self.n):
            left = basis.f_conv(j, k, a, "left")
            if not left.is_zero():
                val = val + calc.d(calc.M[i][j]) * left
            right = basis.f_conv(i, j, a, "right")
            if not right.is_zero():
                val = val - calc.left_multiply(right, calc.d(calc.M[j][k]))
        return DefectIndexValue(i, k, a, val)

    def structure_constants(self) -> list:
        """``f_i^l_k = chi_i(N^l_k)`` as C[i][l][k]."""
        N = self.calc.N
        return [[[self.basis.chi(i, N[l][k]) for k in range(self.n)]
                 for l in range(self.n)] for i in range(self.n)]
