"""Rewrite-presented Hopf algebras and the FRT builder.

An :class:`Instance` holds a finitely presented noncommutative algebra (quadratic
rewrite rules over a deg-lex order), its coproduct, counit, antipode and
inverse antipode tables, and optionally an FRT block (R-matrix, T-grid and
quantum determinant with an adjoined central inverse).

Words are tuples of generator indices.  Normal words are the irreducible ones;
an :class:`AlgebraElement` is a map normal word -> :class:`QScalar`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .linalg import solve_linear
from .qscalar import ONE, ZERO, QScalar, as_scalar

__all__ = [
    "AlgebraError",
    "Instance",
    "FRTData",
    "AlgebraElement",
    "TensorElement",
    "coproduct",
    "counit",
    "antipode",
    "build_frt_instance",
    "standard_r_matrix",
    "gl_q2",
    "verify_hopf_axioms",
    "CheckRow",
]

Word = tuple


class AlgebraError(ValueError):
    """Invalid instance data or an unsupported algebra operation."""


@dataclass(frozen=True)
class CheckRow:
    """One line of a verification report."""

    check: str
    equal: bool
    lhs: str = ""
    rhs: str = ""
    witness: Optional[str] = None
    expect: str = "equal"
    passed: Optional[bool] = None
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        """Verdict: ``equal`` for equalities, ``not equal`` for nonzero predicates."""
        if self.passed is not None:
            return self.passed
        return self.equal if self.expect == "equal" else not self.equal

    @property
    def status(self) -> str:
        return "pass" if self.ok else "fail"

    def as_dict(self) -> dict:
        return {
            "check": self.check,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "equal": self.equal,
            "expect": self.expect,
            "status": self.status,
            "elapsed": round(self.elapsed, 6),
            "witness": self.witness,
        }


def _acc(target: dict, key, c: QScalar) -> None:
    v = target.get(key)
    if v is None:
        target[key] = c
    else:
        v = v + c
        if v.is_zero():
            del target[key]
        else:
            target[key] = v


@dataclass
class FRTData:
    """FRT presentation data: R-matrix, T-grid and quantum determinant."""

    R: list  # n^2 x n^2 QScalar, row index i*n + j
    T: list  # n x n generator names
    det: dict  # normal word (names) -> QScalar
    det_inverse: Optional[str]  # None: det = I is imposed instead
    pivot: tuple  # generator names whose product is the pivot term of det

    @property
    def n(self) -> int:
        return len(self.T)


class Instance:
    """A Hopf algebra with invertible antipode given by rewrite rules and tables.

    ``rules`` maps a length-2 word (pair of generator indices) to its
    replacement (dict word -> QScalar).  All tables are keyed by generator
    index.  Instances are immutable after construction; memo caches only ever
    store values that are pure functions of the key.
    """

    def __init__(
        self,
        generators: Sequence[str],
        rules: Mapping[tuple, Mapping[tuple, QScalar]],
        coproduct: Mapping[int, Mapping[tuple, QScalar]],
        counit: Mapping[int, QScalar],
        antipode: Mapping[int, Mapping[tuple, QScalar]],
        antipode_inv: Mapping[int, Mapping[tuple, QScalar]],
        frt: Optional[FRTData] = None,
        q_value: Optional[Fraction] = None,
    ):
        self.generators = tuple(generators)
        self.index = {g: k for k, g in enumerate(self.generators)}
        if len(self.index) != len(self.generators):
            raise AlgebraError("duplicate generator names")
        self.rules = {tuple(k): dict(v) for k, v in rules.items()}
        for lhs in self.rules:
            if len(lhs) != 2:
                raise AlgebraError(f"rule lhs must have length 2, got {lhs}")
            for w in self.rules[lhs]:
                if not self._deglex_less(w, lhs):
                    raise AlgebraError(
                        f"rule {self.word_str(lhs)} -> ... does not decrease in deg-lex "
                        f"order (term {self.word_str(w)})"
                    )
        for name, table in (("coproduct", coproduct), ("counit", counit),
                            ("antipode", antipode), ("antipode_inv", antipode_inv)):
            missing = [self.generators[k] for k in range(len(self.generators)) if k not in table]
            if missing:
                raise AlgebraError(f"{name} table misses generators {missing}")
        for k, v in counit.items():
            if not v.is_constant():
                raise AlgebraError(f"counit of {self.generators[k]} is not a rational number")
        self.coproduct_table = {k: dict(v) for k, v in coproduct.items()}
        self.counit_table = dict(counit)
        self.antipode_table = {k: dict(v) for k, v in antipode.items()}
        self.antipode_inv_table = {k: dict(v) for k, v in antipode_inv.items()}
        self.frt = frt
        self.q_value = q_value
        self._det = None
        if frt is not None:
            self._det = (
                {tuple(self.index[s] for s in w): c for w, c in frt.det.items()},
                None if frt.det_inverse is None else self.index[frt.det_inverse],
                tuple(self.index[s] for s in frt.pivot),
            )
        self._nf_cache: dict = {}
        self._nfq_cache: dict = {}
        self._cop_cache: dict = {}
        self._anti_cache: dict = {}
        self._antiinv_cache: dict = {}

    # -- basics -----------------------------------------------------------

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def _deglex_less(self, u: Word, v: Word) -> bool:
        return (len(u), u) < (len(v), v)

    def word_str(self, w: Word) -> str:
        return "*".join(self.generators[k] for k in w) if w else "I"

    def parse_word(self, names: Iterable[str]) -> Word:
        out = []
        for s in names:
            if s not in self.index:
                raise AlgebraError(f"unknown generator {s!r}")
            out.append(self.index[s])
        return tuple(out)

    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, {(): ONE})

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {})

    def gen(self, name: str) -> "AlgebraElement":
        return AlgebraElement(self, {(self.index[name],): ONE})

    def scalar(self, c) -> "AlgebraElement":
        c = as_scalar(c)
        return AlgebraElement(self, {(): c} if c else {})

    def element(self, terms: Mapping) -> "AlgebraElement":
        """Normal form of a raw map word -> coefficient (words may be names)."""
        return AlgebraElement(self, self.normal_form(terms))

    # -- rewriting --------------------------------------------------------

    def normal_form(self, terms: Mapping) -> dict:
        out: dict = {}
        for w, c in terms.items():
            c = as_scalar(c)
            if c.is_zero():
                continue
            if w and isinstance(w[0], str):
                w = self.parse_word(w)
            for k in w:
                if not 0 <= k < self.ngens:
                    raise AlgebraError(f"unknown generator index {k}")
            for w2, c2 in self.nf_word(w).items():
                _acc(out, w2, c * c2)
        return out

    def nf_word(self, w: Word) -> dict:
        """Normal form of a single word (memoized)."""
        hit = self._nf_cache.get(w)
        if hit is not None:
            return hit
        res = self._nf_quadratic_then_det(w)
        self._nf_cache[w] = res
        return res

    def _nf_quad(self, w: Word) -> dict:
        hit = self._nfq_cache.get(w)
        if hit is not None:
            return hit
        res = None
        for k in range(len(w) - 1):
            rhs = self.rules.get((w[k], w[k + 1]))
            if rhs is not None:
                res = {}
                head, tail = w[:k], w[k + 2:]
                for mid, c in rhs.items():
                    for w2, c2 in self._nf_quad(head + mid + tail).items():
                        _acc(res, w2, c * c2)
                break
        if res is None:
            res = {w: ONE}
        self._nfq_cache[w] = res
        return res

    def _nf_quadratic_then_det(self, w: Word) -> dict:
        out: dict = {}
        for w2, c in self._nf_quad(w).items():
            red = self._det_reduce(w2)
            if red is None:
                _acc(out, w2, c)
            else:
                for w3, c3 in red.items():
                    _acc(out, w3, c * c3)
        return out

    def _det_reduce(self, w: Word) -> Optional[dict]:
        # pivot * det^-1 is eliminated through det * det^-1 = I; without an
        # inverse generator the pivot itself is eliminated through det = I
        if self._det is None:
            return None
        det, dinv, pivot = self._det
        if dinv is not None and dinv not in w:
            return None
        rest = list(w)
        for p in pivot:
            if p not in rest:
                return None
            rest.remove(p)
        tail = ()
        if dinv is not None:
            rest.remove(dinv)
            tail = (dinv,)
        beta = tuple(rest)
        expanded: dict = {}
        for dw, dc in det.items():
            for w2, c2 in self._nf_quad(beta + dw + tail).items():
                _acc(expanded, w2, dc * c2)
        kappa = expanded.pop(w, None)
        if kappa is None:
            raise AlgebraError(f"determinant pivot does not reproduce {self.word_str(w)}")
        out: dict = {}
        inv = ONE / kappa
        for w2, c2 in self.nf_word(beta).items():
            _acc(out, w2, inv * c2)
        for w2, c2 in expanded.items():
            for w3, c3 in self.nf_word(w2).items():
                _acc(out, w3, -inv * c2 * c3)
        return out

    def is_normal(self, w: Word) -> bool:
        return self.nf_word(w) == {w: ONE}

    def normal_monomials(self, degree: int) -> list:
        """All normal words of exactly ``degree`` letters."""
        words = [()]
        for _ in range(degree):
            words = [w + (k,) for w in words for k in range(self.ngens)
                     if not w or (w[-1], k) not in self.rules]
        return [w for w in words if self.is_normal(w)]

    # -- structure maps on words ------------------------------------------

    def coproduct_word(self, w: Word) -> dict:
        hit = self._cop_cache.get(w)
        if hit is not None:
            return hit
        if not w:
            res = {((), ()): ONE}
        else:
            left = self.coproduct_word(w[:-1])
            last = self.coproduct_table[w[-1]]
            res = {}
            for (x1, x2), c in left.items():
                for (y1, y2), c2 in last.items():
                    n1 = self.nf_word(x1 + y1)
                    n2 = self.nf_word(x2 + y2)
                    cc = c * c2
                    for z1, d1 in n1.items():
                        for z2, d2 in n2.items():
                            _acc(res, (z1, z2), cc * d1 * d2)
        self._cop_cache[w] = res
        return res

    def counit_word(self, w: Word) -> QScalar:
        out = ONE
        for k in w:
            out = out * self.counit_table[k]
            if out.is_zero():
                return ZERO
        return out

    def antipode_word(self, w: Word, inverse: bool = False) -> dict:
        cache = self._antiinv_cache if inverse else self._anti_cache
        hit = cache.get(w)
        if hit is not None:
            return hit
        table = self.antipode_inv_table if inverse else self.antipode_table
        if not w:
            res = {(): ONE}
        else:
            # S(w g) = S(g) S(w)
            res = _mul_terms(self, table[w[-1]], self.antipode_word(w[:-1], inverse))
        cache[w] = res
        return res

    # -- specialization ---------------------------------------------------

    def specialize(self, q0) -> "Instance":
        """Same presentation with every coefficient evaluated at ``q = q0``."""
        q0 = Fraction(q0)

        def sp(terms):
            out = {}
            for w, c in terms.items():
                v = c.specialize(q0)
                if v:
                    out[w] = QScalar(v)
            return out

        frt = None
        if self.frt is not None:
            f = self.frt
            frt = FRTData(
                R=[[QScalar(c.specialize(q0)) for c in row] for row in f.R],
                T=[list(r) for r in f.T],
                det={w: QScalar(c.specialize(q0)) for w, c in f.det.items()
                     if c.specialize(q0)},
                det_inverse=f.det_inverse,
                pivot=tuple(f.pivot),
            )
        return Instance(
            self.generators,
            {k: sp(v) for k, v in self.rules.items()},
            {k: sp(v) for k, v in self.coproduct_table.items()},
            {k: QScalar(v.specialize(q0)) for k, v in self.counit_table.items()},
            {k: sp(v) for k, v in self.antipode_table.items()},
            {k: sp(v) for k, v in self.antipode_inv_table.items()},
            frt=frt,
            q_value=q0,
        )

    # -- JSON -------------------------------------------------------------

    def _terms_json(self, terms: Mapping) -> list:
        return [{"coeff": str(c), "word": [self.generators[k] for k in w]}
                for w, c in sorted(terms.items(), key=lambda t: (len(t[0]), t[0]))]

    def to_json_dict(self) -> dict:
        g = self.generators
        doc = {
            "generators": list(g),
            "rules": [
                {"lhs": [g[k] for k in lhs], "rhs": self._terms_json(rhs)}
                for lhs, rhs in sorted(self.rules.items())
            ],
            "coproduct": {
                g[k]: [
                    {"coeff": str(c), "left": [g[x] for x in w1], "right": [g[x] for x in w2]}
                    for (w1, w2), c in sorted(v.items())
                ]
                for k, v in sorted(self.coproduct_table.items())
            },
            "counit": {g[k]: str(v) for k, v in sorted(self.counit_table.items())},
            "antipode": {g[k]: self._terms_json(v) for k, v in sorted(self.antipode_table.items())},
            "antipode_inv": {g[k]: self._terms_json(v)
                             for k, v in sorted(self.antipode_inv_table.items())},
        }
        if self.q_value is not None:
            doc["q"] = str(self.q_value)
        if self.frt is not None:
            f = self.frt
            doc["frt"] = {
                "R": [[str(c) for c in row] for row in f.R],
                "T": [list(r) for r in f.T],
                "det": [{"coeff": str(c), "word": list(w)}
                        for w, c in sorted(f.det.items())],
                "det_inverse": f.det_inverse,
                "pivot": list(f.pivot),
            }
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json_dict(cls, doc: dict) -> "Instance":
        try:
            gens = list(doc["generators"])
            idx = {s: k for k, s in enumerate(gens)}

            def word(names):
                try:
                    return tuple(idx[s] for s in names)
                except KeyError as exc:
                    raise AlgebraError(f"unknown generator {exc.args[0]!r}") from None

            def terms(lst):
                out = {}
                for t in lst:
                    _acc(out, word(t["word"]), as_scalar(t["coeff"]))
                return out

            def by_gen(obj, fn):
                out = {}
                for s, v in obj.items():
                    if s not in idx:
                        raise AlgebraError(f"table entry for unknown generator {s!r}")
                    out[idx[s]] = fn(v)
                return out

            rules = {word(r["lhs"]): terms(r["rhs"]) for r in doc["rules"]}
            cop = by_gen(doc["coproduct"], lambda v: {
                (word(t["left"]), word(t["right"])): as_scalar(t["coeff"]) for t in v})
            cou = by_gen(doc["counit"], as_scalar)
            ant = by_gen(doc["antipode"], terms)
            anti = by_gen(doc["antipode_inv"], terms)
            frt = None
            if "frt" in doc:
                f = doc["frt"]
                frt = FRTData(
                    R=[[as_scalar(c) for c in row] for row in f["R"]],
                    T=[list(r) for r in f["T"]],
                    det={tuple(t["word"]): as_scalar(t["coeff"]) for t in f["det"]},
                    det_inverse=f.get("det_inverse"),
                    pivot=tuple(f["pivot"]),
                )
            q_value = Fraction(doc["q"]) if "q" in doc else None
        except (KeyError, TypeError) as exc:
            raise AlgebraError(f"malformed instance document: {exc}") from None
        return cls(gens, rules, cop, cou, ant, anti, frt=frt, q_value=q_value)

    @classmethod
    def from_json(cls, text: str) -> "Instance":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise AlgebraError(f"invalid JSON: {exc}") from None
        return cls.from_json_dict(doc)

    @classmethod
    def load(cls, path) -> "Instance":
        with open(path) as fh:
            return cls.from_json(fh.read())

    def dump(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(self.to_json())


def _mul_terms(inst: Instance, x: Mapping, y: Mapping) -> dict:
    out: dict = {}
    for w1, c1 in x.items():
        for w2, c2 in y.items():
            cc = c1 * c2
            for w3, c3 in inst.nf_word(w1 + w2).items():
                _acc(out, w3, cc * c3)
    return out


class AlgebraElement:
    """Element of A in normal form: a map normal word -> QScalar."""

    __slots__ = ("inst", "terms")

    def __init__(self, inst: Instance, terms: Mapping):
        self.inst = inst
        self.terms = {w: c for w, c in terms.items() if not c.is_zero()}

    def _lift(self, other):
        if isinstance(other, AlgebraElement):
            return other
        if isinstance(other, (int, Fraction, QScalar)):
            return self.inst.scalar(other)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for w, c in other.terms.items():
            _acc(out, w, c)
        return AlgebraElement(self.inst, out)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.inst, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QScalar)):
            c = as_scalar(other)
            return AlgebraElement(self.inst, {w: v * c for w, v in self.terms.items()})
        if isinstance(other, AlgebraElement):
            return AlgebraElement(self.inst, _mul_terms(self.inst, self.terms, other.terms))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, QScalar)):
            return self * other
        return NotImplemented

    def __pow__(self, k: int):
        out = self.inst.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def scalar_part(self) -> QScalar:
        return self.terms.get((), ZERO)

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def specialize(self, q0) -> dict:
        """Coefficients evaluated at q0 (a map word -> Fraction)."""
        return {w: c.specialize(q0) for w, c in self.terms.items()}

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0])):
            ws = self.inst.word_str(w) if w else ""
            cs = str(c)
            if not ws:
                parts.append(f"({cs})" if (" " in cs or "/" in cs) else cs)
            elif c == ONE:
                parts.append(ws)
            elif c == -ONE:
                parts.append(f"-{ws}")
            else:
                parts.append(f"({cs})*{ws}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    __repr__ = __str__


class TensorElement:
    """Element of A (x) A: a map (normal word, normal word) -> QScalar."""

    __slots__ = ("inst", "terms")

    def __init__(self, inst: Instance, terms: Mapping):
        self.inst = inst
        self.terms = {k: c for k, c in terms.items() if not c.is_zero()}

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            _acc(out, k, c)
        return TensorElement(self.inst, out)

    def __sub__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            _acc(out, k, -c)
        return TensorElement(self.inst, out)

    def __mul__(self, other):
        inst = self.inst
        if isinstance(other, (int, Fraction, QScalar)):
            c = as_scalar(other)
            return TensorElement(inst, {k: v * c for k, v in self.terms.items()})
        out: dict = {}
        for (x1, x2), c in self.terms.items():
            for (y1, y2), c2 in other.terms.items():
                n1, n2 = inst.nf_word(x1 + y1), inst.nf_word(x2 + y2)
                for z1, d1 in n1.items():
                    for z2, d2 in n2.items():
                        _acc(out, (z1, z2), c * c2 * d1 * d2)
        return TensorElement(inst, out)

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def map(self, left=None, right=None) -> "TensorElement":
        """Apply linear maps (word -> term dict) to the two legs."""
        ident = lambda w: {w: ONE}
        left = left or ident
        right = right or ident
        out: dict = {}
        for (w1, w2), c in self.terms.items():
            for z1, d1 in left(w1).items():
                for z2, d2 in right(w2).items():
                    _acc(out, (z1, z2), c * d1 * d2)
        return TensorElement(self.inst, out)

    def flip(self) -> "TensorElement":
        return TensorElement(self.inst, {(w2, w1): c for (w1, w2), c in self.terms.items()})

    def __str__(self):
        if not self.terms:
            return "0"
        ws = self.inst.word_str
        return " + ".join(f"({c})*{ws(a)} (x) {ws(b)}" for (a, b), c in sorted(self.terms.items()))

    __repr__ = __str__


def coproduct(e: AlgebraElement) -> TensorElement:
    out: dict = {}
    for w, c in e.terms.items():
        for k, c2 in e.inst.coproduct_word(w).items():
            _acc(out, k, c * c2)
    return TensorElement(e.inst, out)


def counit(e: AlgebraElement) -> QScalar:
    out = ZERO
    for w, c in e.terms.items():
        out = out + c * e.inst.counit_word(w)
    return out


def antipode(e: AlgebraElement, inverse: bool = False) -> AlgebraElement:
    out: dict = {}
    for w, c in e.terms.items():
        for w2, c2 in e.inst.antipode_word(w, inverse).items():
            _acc(out, w2, c * c2)
    return AlgebraElement(e.inst, out)


# -- FRT construction -------------------------------------------------------


def standard_r_matrix(n: int = 2) -> list:
    """Standard GL_q(n) R-matrix, rows/cols indexed by (i, j) -> i*n + j.

    R^{ij}_{kl} = q on i = j = k = l, 1 on i != j with (k, l) = (i, j), and
    q - q^-1 on (k, l) = (j, i) with i > j.
    """
    from .qscalar import LAMBDA, Q

    N = n * n
    R = [[ZERO] * N for _ in range(N)]
    for i in range(n):
        for j in range(n):
            if i == j:
                R[i * n + j][i * n + j] = Q
            else:
                R[i * n + j][i * n + j] = ONE
                if i > j:
                    R[i * n + j][j * n + i] = LAMBDA
    return R


def _matmul(A, B):
    n, m, p = len(A), len(B), len(B[0])
    out = [[ZERO] * p for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for k in range(m):
            a = Ai[k]
            if a.is_zero():
                continue
            Bk = B[k]
            row = out[i]
            for j in range(p):
                if not Bk[j].is_zero():
                    row[j] = row[j] + a * Bk[j]
    return out


def _kron_id(A, n, left: bool):
    # A (x) 1_n  if left else 1_n (x) A; A acts on V(x)V with dim V = n
    N = len(A)
    out = [[ZERO] * (N * n) for _ in range(N * n)]
    for r in range(N):
        for c in range(N):
            if A[r][c].is_zero():
                continue
            for k in range(n):
                if left:
                    out[r * n + k][c * n + k] = A[r][c]
                else:
                    out[k * N + r][k * N + c] = A[r][c]
    return out


def check_braid_relation(Rhat, n: int) -> bool:
    """Rhat12 Rhat23 Rhat12 == Rhat23 Rhat12 Rhat23 on V^(x)3."""
    r12 = _kron_id(Rhat, n, left=True)
    r23 = _kron_id(Rhat, n, left=False)
    return _matmul(_matmul(r12, r23), r12) == _matmul(_matmul(r23, r12), r23)


def build_frt_instance(
    R: Sequence[Sequence],
    names: Optional[Sequence[str]] = None,
    det: Optional[Mapping[tuple, object]] = None,
) -> Instance:
    """GL-type FRT Hopf algebra from an n^2 x n^2 R-matrix (n = 2 supported).

    ``names`` lists the T entries row by row followed by the name of the
    adjoined inverse determinant (default ``a b c d D``).
    """
    R = [[as_scalar(c) for c in row] for row in R]
    N = len(R)
    n = int(round(N ** 0.5))
    if n * n != N or any(len(row) != N for row in R):
        raise AlgebraError("R must be an n^2 x n^2 matrix")
    if n != 2:
        raise AlgebraError("the FRT builder supports n = 2 only")
    names = list(names or ["a", "b", "c", "d", "D"])
    if len(names) != n * n + 1:
        raise AlgebraError(f"expected {n * n + 1} generator names")
    # braid form: Rhat = P R
    P = [[ONE if c == (r % n) * n + r // n else ZERO for c in range(N)] for r in range(N)]
    Rhat = _matmul(P, R)
    if not check_braid_relation(Rhat, n):
        raise AlgebraError("R does not satisfy the Yang-Baxter equation")
    tidx = lambda i, j: i * n + j
    ngen = n * n
    Dk = ngen

    # RTT: R^{ij}_{kl} T^k_m T^l_n = T^j_l T^i_k R^{kl}_{mn}
    words = [(x, y) for x in range(ngen) for y in range(ngen)]
    rows = []
    for i in range(n):
        for j in range(n):
            for m in range(n):
                for nn in range(n):
                    rel: dict = {}
                    for k in range(n):
                        for l in range(n):
                            c = R[tidx(i, j)][tidx(k, l)]
                            if c:
                                _acc(rel, (tidx(k, m), tidx(l, nn)), c)
                            c = R[tidx(k, l)][tidx(m, nn)]
                            if c:
                                _acc(rel, (tidx(j, l), tidx(i, k)), -c)
                    if rel:
                        rows.append(rel)
    # row-reduce with columns in decreasing deg-lex order
    order = sorted(words, reverse=True)
    pivots: dict = {}
    for rel in rows:
        rel = dict(rel)
        for pw in order:
            if pw in rel and pw in pivots:
                c = rel[pw]
                for w, v in pivots[pw].items():
                    _acc(rel, w, -c * v)
        if not rel:
            continue
        lead = max(rel)
        inv = ONE / rel[lead]
        rel = {w: v * inv for w, v in rel.items()}
        for pw, prow in pivots.items():
            if lead in prow:
                c = prow[lead]
                for w, v in rel.items():
                    _acc(prow, w, -c * v)
        pivots[lead] = rel
    expected = {(x, y) for x in range(ngen) for y in range(ngen) if x > y}
    if set(pivots) != expected:
        raise AlgebraError(
            "RTT relations do not orient into a deg-lex terminating PBW system"
        )
    rules = {}
    for lead, prow in pivots.items():
        rules[lead] = {w: -v for w, v in prow.items() if w != lead}
    for x in range(ngen):
        rules[(Dk, x)] = {(x, Dk): ONE}

    cop = {}
    for i in range(n):
        for j in range(n):
            cop[tidx(i, j)] = {((tidx(i, k),), (tidx(k, j),)): ONE for k in range(n)}
    cop[Dk] = {((Dk,), (Dk,)): ONE}
    cou = {tidx(i, j): (ONE if i == j else ZERO) for i in range(n) for j in range(n)}
    cou[Dk] = ONE

    a, b, c, d = (names[k] for k in range(4))
    if det is None:
        ratio = R[0][0] / R[1][1]
        det_terms = {(a, d): ONE, (b, c): -ratio}
    else:
        det_terms = {tuple(w): as_scalar(v) for w, v in det.items()}
    frt = FRTData(R=R, T=[[names[tidx(i, j)] for j in range(n)] for i in range(n)],
                  det=det_terms, det_inverse=names[Dk], pivot=(a, d))
    # provisional instance (antipodes filled below)
    stub = {k: {} for k in range(ngen + 1)}
    base = Instance(names, rules, cop, cou, stub, stub, frt=frt)
    det_el = base.element(det_terms)
    if coproduct(det_el) != TensorElement(base, {
            (w1, w2): c1 * c2 for w1, c1 in det_el.terms.items()
            for w2, c2 in det_el.terms.items()}):
        raise AlgebraError("quantum determinant is not group-like")
    for x in range(ngen):
        g = AlgebraElement(base, {(x,): ONE})
        if det_el * g != g * det_el:
            raise AlgebraError("quantum determinant is not central")
    S = _solve_antipode(base, n, inverse=False)
    Sinv = _solve_antipode(base, n, inverse=True)
    S[Dk] = dict(det_el.terms)
    Sinv[Dk] = dict(det_el.terms)
    return Instance(names, rules, cop, cou, S, Sinv, frt=frt)


def _solve_antipode(base: Instance, n: int, inverse: bool) -> dict:
    # ansatz S(T^i_j) = sum_kl c^{ij}_{kl} T^k_l D
    ngen = n * n
    Dk = ngen
    unknowns = [(ij, kl) for ij in range(ngen) for kl in range(ngen)]
    uidx = {u: k for k, u in enumerate(unknowns)}
    eqs: dict = {}  # (equation label, word) -> {unknown: coeff}, constant stored under None

    def add(label, word, unk, c):
        row = eqs.setdefault((label, word), {})
        _acc(row, unk, c)

    tidx = lambda i, j: i * n + j
    for i in range(n):
        for j in range(n):
            for side in (0, 1):
                label = (i, j, side)
                add(label, (), None, -ONE if i == j else ZERO)
                for k in range(n):
                    # S: T^i_k S(T^k_j) = delta, S(T^i_k) T^k_j = delta
                    # S^-1: S^-1(T^k_j) T^i_k = delta, T^k_j S^-1(T^i_k) = delta
                    if not inverse:
                        pairs = [(tidx(i, k), tidx(k, j))] if side == 0 else [(tidx(k, j), tidx(i, k))]
                    else:
                        pairs = [(tidx(i, k), tidx(k, j))] if side == 0 else [(tidx(k, j), tidx(i, k))]
                    for fixed, unk_ij in pairs:
                        for kl in range(ngen):
                            if not inverse:
                                raw = (fixed, kl, Dk) if side == 0 else (kl, Dk, fixed)
                            else:
                                raw = (kl, Dk, fixed) if side == 0 else (fixed, kl, Dk)
                            for w, c in base.nf_word(raw).items():
                                add(label, w, uidx[(unk_ij, kl)], c)
    rows, rhs = [], []
    for key, row in eqs.items():
        const = row.pop(None, ZERO)
        if not row and const.is_zero():
            continue
        rows.append({u: c for u, c in row.items()})
        rhs.append(-const)
    sol = solve_linear(rows, rhs, len(unknowns))
    if sol is None:
        raise AlgebraError("no antipode of the form D * (linear in T) exists")
    out = {}
    for ij in range(ngen):
        terms = {}
        for kl in range(ngen):
            c = sol[uidx[(ij, kl)]]
            if c:
                for w, c2 in base.nf_word((kl, Dk)).items():
                    _acc(terms, w, c * c2)
        out[ij] = terms
    return out


def gl_q2(q=None) -> Instance:
    """The bundled GL_q(2) instance, optionally specialized at q = q0."""
    inst = build_frt_instance(standard_r_matrix(2))
    return inst if q is None else inst.specialize(q)


def sl_q2(q=None) -> Instance:
    """SL_q(2): the GL_q(2) presentation with det = I and no inverse generator.

    Only the Hopf structure is provided; the L-functionals of the unnormalized
    R-matrix do not respect det = I, so no calculus is built on it.
    """
    gl = gl_q2()
    Dk = gl.index[gl.frt.det_inverse]
    keep = [k for k in range(gl.ngens) if k != Dk]
    re = {k: j for j, k in enumerate(keep)}

    def drop(terms):
        out: dict = {}
        for w, c in terms.items():
            _acc(out, tuple(re[k] for k in w if k != Dk), c)
        return out

    rules = {(re[x], re[y]): drop(v) for (x, y), v in gl.rules.items() if Dk not in (x, y)}
    cop = {re[k]: {(tuple(re[x] for x in w1), tuple(re[x] for x in w2)): c
                   for (w1, w2), c in v.items()} for k, v in gl.coproduct_table.items() if k != Dk}
    f = gl.frt
    frt = FRTData(R=f.R, T=f.T, det=dict(f.det), det_inverse=None, pivot=f.pivot)
    inst = Instance([gl.generators[k] for k in keep], rules, cop,
                    {re[k]: v for k, v in gl.counit_table.items() if k != Dk},
                    {re[k]: drop(v) for k, v in gl.antipode_table.items() if k != Dk},
                    {re[k]: drop(v) for k, v in gl.antipode_inv_table.items() if k != Dk},
                    frt=frt)
    return inst if q is None else inst.specialize(q)


# -- verification -------------------------------------------------------------


def _tensor3(inst: Instance, e: AlgebraElement, first: bool) -> dict:
    out: dict = {}
    for w, c in e.terms.items():
        for (w1, w2), c2 in inst.coproduct_word(w).items():
            split = w1 if first else w2
            for (u1, u2), c3 in inst.coproduct_word(split).items():
                key = (u1, u2, w2) if first else (w1, u1, u2)
                _acc(out, key, c * c2 * c3)
    return out


def verify_hopf_axioms(inst: Instance, degree: int = 2) -> list:
    """Check the Hopf axioms on generators and normal monomials up to ``degree``."""
    rows: list = []
    monos = []
    for k in range(1, degree + 1):
        monos.extend(inst.normal_monomials(k))
    one = inst.one()
    for w in monos:
        x = AlgebraElement(inst, {w: ONE})
        name = inst.word_str(w)
        dx = coproduct(x)
        # coassociativity
        lhs, rhs = _tensor3(inst, x, True), _tensor3(inst, x, False)
        rows.append(CheckRow(f"coassociativity [{name}]", lhs == rhs, witness=None if lhs == rhs else name))
        # counit
        left = AlgebraElement(inst, {})
        right = AlgebraElement(inst, {})
        for (w1, w2), c in dx.terms.items():
            left = left + AlgebraElement(inst, {w2: c * inst.counit_word(w1)})
            right = right + AlgebraElement(inst, {w1: c * inst.counit_word(w2)})
        ok = left == x and right == x
        rows.append(CheckRow(f"counit [{name}]", ok, witness=None if ok else name))
        # antipode: m(S (x) id) D = eps I = m(id (x) S) D
        eps = one * counit(x)
        m1 = AlgebraElement(inst, {})
        m2 = AlgebraElement(inst, {})
        for (w1, w2), c in dx.terms.items():
            m1 = m1 + AlgebraElement(inst, _mul_terms(inst, inst.antipode_word(w1), {w2: c}))
            m2 = m2 + AlgebraElement(inst, _mul_terms(inst, {w1: c}, inst.antipode_word(w2)))
        ok = m1 == eps and m2 == eps
        rows.append(CheckRow(f"antipode [{name}]", ok, str(m1), str(eps), None if ok else name))
        # Delta o S = flip o (S (x) S) o Delta
        sx = antipode(x)
        lhs = coproduct(sx)
        rhs = dx.map(inst.antipode_word, inst.antipode_word).flip()
        rows.append(CheckRow(f"coproduct-antipode [{name}]", lhs == rhs, witness=None if lhs == rhs else name))
        # inverse antipode round trip
        ok = antipode(sx, inverse=True) == x and antipode(antipode(x, inverse=True)) == x
        rows.append(CheckRow(f"antipode-inverse [{name}]", ok, witness=None if ok else name))
    for w in monos:
        if len(w) == 1:
            continue
    # homomorphism properties on generator pairs
    for x in range(inst.ngens):
        for y in range(inst.ngens):
            ex = AlgebraElement(inst, {(x,): ONE})
            ey = AlgebraElement(inst, {(y,): ONE})
            prod = ex * ey
            name = inst.word_str((x, y))
            ok = coproduct(prod) == coproduct(ex) * coproduct(ey)
            rows.append(CheckRow(f"coproduct-homomorphism [{name}]", ok, witness=None if ok else name))
            ok = counit(prod) == counit(ex) * counit(ey)
            rows.append(CheckRow(f"counit-homomorphism [{name}]", ok, witness=None if ok else name))
            ok = antipode(prod) == antipode(ey) * antipode(ex)
            rows.append(CheckRow(f"antipode-antihomomorphism [{name}]", ok, witness=None if ok else name))
    # rewrite rules are compatible with the structure maps
    for lhs, rhs in inst.rules.items():
        raw = {lhs: ONE}
        for w, c in rhs.items():
            _acc(raw, w, -c)
        name = inst.word_str(lhs)
        d = {}
        for w, c in raw.items():
            ew = {}
            acc = TensorElement(inst, {((), ()): ONE})
            for k in w:
                acc = acc * TensorElement(inst, inst.coproduct_table[k])
            for key, c2 in acc.terms.items():
                _acc(d, key, c * c2)
        rows.append(CheckRow(f"relation-coproduct [{name}]", not d, witness=None if not d else name))
        e = ZERO
        for w, c in raw.items():
            e = e + c * inst.counit_word(w)
        rows.append(CheckRow(f"relation-counit [{name}]", e.is_zero(), witness=None if e.is_zero() else name))
    return rows
