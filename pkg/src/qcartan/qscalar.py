"""Exact rational functions of the deformation parameter ``q``.

Every coefficient in the engine is a :class:`QScalar`: a quotient of two
integer polynomials in ``q`` kept in lowest terms.  Negative powers of ``q``
are cleared into the denominator, so ``q - q^-1`` is stored as
``(q^2 - 1)/q``.

Polynomial arithmetic is delegated to FLINT (``python-flint``).
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

from flint import fmpz_poly

__all__ = [
    "QScalar",
    "ScalarError",
    "PoleError",
    "DegreeCapError",
    "ZERO",
    "ONE",
    "Q",
    "LAMBDA",
    "get_degree_cap",
    "set_degree_cap",
    "as_scalar",
]

_DEGREE_CAP = 64


class ScalarError(ValueError):
    """Malformed scalar text or invalid scalar operation."""


class PoleError(ZeroDivisionError):
    """Raised when a rational function is evaluated at a root of its denominator."""


class DegreeCapError(OverflowError):
    """Raised when a polynomial exceeds the configured degree cap."""


def get_degree_cap() -> int:
    return _DEGREE_CAP


def set_degree_cap(cap: int) -> int:
    """Set the global polynomial degree cap; returns the previous value."""
    global _DEGREE_CAP
    if cap < 1:
        raise ValueError("degree cap must be positive")
    old, _DEGREE_CAP = _DEGREE_CAP, int(cap)
    return old


_P_ONE = fmpz_poly([1])
_P_ZERO = fmpz_poly([])


def _check_cap(p: fmpz_poly) -> None:
    if p.degree() > _DEGREE_CAP:
        raise DegreeCapError(
            f"polynomial of degree {p.degree()} exceeds degree cap {_DEGREE_CAP}"
        )


def _poly_str(p: fmpz_poly) -> str:
    coeffs = [int(c) for c in p.coeffs()]
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = str(a)
        else:
            mono = "q" if k == 1 else f"q^{k}"
            body = mono if a == 1 else f"{a}*{mono}"
        parts.append((sign, body))
    if not parts:
        return "0"
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


class QScalar:
    """An element of Q(q), immutable and canonical.

    Canonical form: numerator and denominator coprime over Z[q], denominator
    with positive leading coefficient, zero stored as ``0/1``.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, value: Union[int, Fraction, "QScalar", str] = 0):
        if isinstance(value, QScalar):
            self.num, self.den, self._hash = value.num, value.den, value._hash
            return
        if isinstance(value, str):
            other = QScalar.parse(value)
            self.num, self.den, self._hash = other.num, other.den, None
            return
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            self.num, self.den = fmpz_poly([value]), _P_ONE
        elif isinstance(value, Fraction):
            self.num = fmpz_poly([value.numerator])
            self.den = fmpz_poly([value.denominator])
        else:
            raise TypeError(f"cannot build QScalar from {type(value).__name__}")
        self._hash = None

    @classmethod
    def from_polys(cls, num: fmpz_poly, den: fmpz_poly = _P_ONE) -> "QScalar":
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            return ZERO
        if den != _P_ONE:
            g = num.gcd(den)
            if g != _P_ONE:
                num = num // g
                den = den // g
            if den.leading_coefficient() < 0:
                num, den = -num, -den
        _check_cap(num)
        _check_cap(den)
        out = object.__new__(cls)
        out.num, out.den, out._hash = num, den, None
        return out

    @classmethod
    def laurent(cls, coeffs: dict[int, int]) -> "QScalar":
        """Build ``sum c_k q^k`` from a map exponent -> integer coefficient."""
        if not coeffs:
            return ZERO
        low = min(coeffs)
        shift = -low if low < 0 else 0
        top = max(coeffs) + shift
        c = [0] * (top + 1)
        for k, v in coeffs.items():
            c[k + shift] += v
        den = fmpz_poly([0] * shift + [1])
        return cls.from_polys(fmpz_poly(c), den)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return QScalar.from_polys(self.num + other.num, self.den)
        return QScalar.from_polys(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        if self.num.is_zero():
            return self
        out = object.__new__(QScalar)
        out.num, out.den, out._hash = -self.num, self.den, None
        return out

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.num.is_zero() or other.num.is_zero():
            return ZERO
        if self.den == _P_ONE and other.den == _P_ONE:
            return QScalar.from_polys(self.num * other.num)
        return QScalar.from_polys(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero QScalar")
        return QScalar.from_polys(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def inverse(self) -> "QScalar":
        return ONE / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        return QScalar.from_polys(self.num**k, self.den**k)

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return False
        return self.num == other.num and self.den == other.den

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(
                (tuple(int(c) for c in self.num.coeffs()),
                 tuple(int(c) for c in self.den.coeffs()))
            )
        return self._hash

    def __bool__(self):
        return not self.num.is_zero()

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.degree() <= 0 and self.den.degree() == 0

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ScalarError(f"{self} depends on q")
        n = int(self.num.coeffs()[0]) if not self.num.is_zero() else 0
        return Fraction(n, int(self.den.coeffs()[0]))

    # -- evaluation -------------------------------------------------------

    def specialize(self, q0) -> Fraction:
        """Exact value at ``q = q0``; raises :class:`PoleError` at a pole."""
        q0 = Fraction(q0)
        d = _eval_poly(self.den, q0)
        if d == 0:
            raise PoleError(f"pole at q={q0}: denominator {_poly_str(self.den)} vanishes")
        return _eval_poly(self.num, q0) / d

    def subs(self, q0) -> "QScalar":
        """Specialization returned as a constant QScalar."""
        return QScalar(self.specialize(q0))

    # -- text -------------------------------------------------------------

    def __str__(self):
        n = _poly_str(self.num)
        if self.den == _P_ONE:
            return n
        d = _poly_str(self.den)
        if len(self.num.coeffs()) > 1 and sum(1 for c in self.num.coeffs() if c) > 1:
            n = f"({n})"
        if sum(1 for c in self.den.coeffs() if c) > 1 or "*" in d:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"QScalar({str(self)!r})"

    @staticmethod
    def parse(text: str) -> "QScalar":
        return _ScalarParser(text).parse()


def _eval_poly(p: fmpz_poly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p.coeffs()):
        acc = acc * x + int(c)
    return acc


def _coerce(x):
    if isinstance(x, QScalar):
        return x
    if isinstance(x, (int, Fraction)):
        return QScalar(x)
    return NotImplemented


def as_scalar(x) -> QScalar:
    """Coerce ints, Fractions and scalar text to QScalar."""
    if isinstance(x, QScalar):
        return x
    if isinstance(x, str):
        return QScalar.parse(x)
    return QScalar(x)


ZERO = object.__new__(QScalar)
ZERO.num, ZERO.den, ZERO._hash = _P_ZERO, _P_ONE, None
ONE = QScalar(1)
Q = QScalar.from_polys(fmpz_poly([0, 1]))
LAMBDA = Q - ONE / Q


_TOKEN = re.compile(r"\s*(?:(\d+)|(q)|(.))")


class _ScalarParser:
    # grammar: expr := term (('+'|'-') term)*
    #          term := unary (('*'|'/') unary)*
    #          unary := '-' unary | power
    #          power := atom ('^' '-'? int)?
    def __init__(self, text: str):
        self.text = text
        self.toks = []
        for m in _TOKEN.finditer(text):
            if m.group(1):
                self.toks.append(("int", int(m.group(1)), m.start(1)))
            elif m.group(2):
                self.toks.append(("q", None, m.start(2)))
            elif m.group(3):
                self.toks.append(("op", m.group(3), m.start(3)))
        self.pos = 0

    def _peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else ("end", None, len(self.text))

    def _take(self):
        tok = self._peek()
        self.pos += 1
        return tok

    def _error(self, msg):
        col = self._peek()[2]
        raise ScalarError(f"{msg} at column {col + 1} in {self.text!r}")

    def parse(self) -> QScalar:
        if not self.toks:
            self._error("empty scalar")
        val = self.expr()
        if self._peek()[0] != "end":
            self._error("unexpected token")
        return val

    def expr(self):
        val = self.term()
        while self._peek()[:2] in (("op", "+"), ("op", "-")):
            op = self._take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.unary()
        while self._peek()[:2] in (("op", "*"), ("op", "/")):
            op = self._take()[1]
            rhs = self.unary()
            if op == "*":
                val = val * rhs
            else:
                if rhs.is_zero():
                    self._error("division by zero")
                val = val / rhs
        return val

    def unary(self):
        if self._peek()[:2] == ("op", "-"):
            self._take()
            return -self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self._peek()[:2] == ("op", "^"):
            self._take()
            sign = 1
            if self._peek()[:2] == ("op", "-"):
                self._take()
                sign = -1
            kind, val, _ = self._take()
            if kind != "int":
                self.pos -= 1
                self._error("expected integer exponent")
            if sign < 0 and base.is_zero():
                self._error("division by zero")
            base = base ** (sign * val)
        return base

    def atom(self):
        kind, val, _ = self._peek()
        if kind == "int":
            self._take()
            return QScalar(val)
        if kind == "q":
            self._take()
            return Q
        if (kind, val) == ("op", "("):
            self._take()
            inner = self.expr()
            if self._peek()[:2] != ("op", ")"):
                self._error("expected ')'")
            self._take()
            return inner
        self._error("unexpected token")
