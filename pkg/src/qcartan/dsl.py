"""Expression language: parser, printer and evaluator.

Grammar (``^`` binds tighter than ``*``/``/``, which bind tighter than
``+``/``-``; products need an explicit ``*``)::

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := "-" unary | power
    power   := postfix ("^" ["-"] INT)?
    postfix := primary ("(" args ")")*        -- application, e.g. chi[1,1](a)
    primary := INT | NAME index* | NAME "(" args ")" | "(" expr ")"
    index   := "[" INT ("," INT)* "]"

Indices are 1-based.  An index group ``[i,j]`` of an object indexed by the
n^2 functionals means the double index ``(i,j)``; a single entry ``[k]`` is
the flattened index.  See ``docs/dsl.md`` for the full table of names.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Union

from .calculus import Field, Form
from .cartan import Op
from .dual import Functional, convolve, evaluate
from .ncalg import AlgebraElement, antipode, counit
from .qscalar import ONE, Q, QScalar, as_scalar

__all__ = [
    "DSLError", "DSLSyntaxError", "Num", "Sym", "Call", "Apply", "Neg", "BinOp", "Pow",
    "parse", "to_text", "Evaluator", "Tensor", "FUNCTIONS",
]


class DSLError(ValueError):
    """Unknown identifier, bad index or type error while evaluating."""


class DSLSyntaxError(DSLError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.message = message


# -- AST ---------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Sym:
    name: str
    indices: tuple = ()  # tuple of tuples of ints


@dataclass(frozen=True)
class Call:
    fn: str
    args: tuple


@dataclass(frozen=True)
class Apply:
    head: object
    args: tuple


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int


Expr = Union[Num, Sym, Call, Apply, Neg, BinOp, Pow]

FUNCTIONS = frozenset({
    "d", "dext", "P", "bracket", "gbracket", "tensor", "wedge", "conv", "twist", "i", "lie",
    "lieR", "DI", "delta", "S", "Sinv", "eps", "star", "box",
})

# -- tokenizer -----------------------------------------------------------------

@dataclass
class _Tok:
    kind: str  # num, name, op, end
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list:
    toks = []
    pos, line, col = 0, 1, 1
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch == "\n":
            pos, line, col = pos + 1, line + 1, 1
            continue
        if ch.isspace():
            pos, col = pos + 1, col + 1
            continue
        m = _WORD.match(text, pos)
        if m:
            word = m.group(0)
            toks.append(_Tok("num" if word[0].isdigit() else "name", word, line, col))
            pos, col = m.end(), col + len(word)
            continue
        if ch not in "+-*/^()[],":
            raise DSLSyntaxError(f"unexpected character {ch!r}", line, col)
        toks.append(_Tok("op", ch, line, col))
        pos, col = pos + 1, col + 1
    toks.append(_Tok("end", "", line, col))
    return toks


_WORD = re.compile(r"\d+|[A-Za-z_][A-Za-z0-9_]*")


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.k = 0

    @property
    def cur(self) -> _Tok:
        return self.toks[self.k]

    def error(self, msg: str, tok: Optional[_Tok] = None):
        tok = tok or self.cur
        where = "end of input" if tok.kind == "end" else repr(tok.text)
        raise DSLSyntaxError(f"{msg} at {where}", tok.line, tok.col)

    def accept(self, text: str) -> bool:
        if self.cur.kind == "op" and self.cur.text == text:
            self.k += 1
            return True
        return False

    def expect(self, text: str) -> None:
        if not self.accept(text):
            self.error(f"expected {text!r}")

    def parse(self) -> Expr:
        e = self.expr()
        if self.cur.kind != "end":
            self.error("unexpected token")
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.cur.kind == "op" and self.cur.text in "+-":
            op = self.cur.text
            self.k += 1
            e = BinOp(op, e, self.term())
        return e

    def term(self) -> Expr:
        e = self.unary()
        while self.cur.kind == "op" and self.cur.text in "*/":
            op = self.cur.text
            self.k += 1
            e = BinOp(op, e, self.unary())
        return e

    def unary(self) -> Expr:
        if self.accept("-"):
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.postfix()
        if self.accept("^"):
            sign = -1 if self.accept("-") else 1
            if self.cur.kind != "num":
                self.error("expected an integer exponent")
            exp = sign * int(self.cur.text)
            self.k += 1
            return Pow(base, exp)
        return base

    def postfix(self) -> Expr:
        e = self.primary()
        while not (isinstance(e, Sym) and not e.indices) and self.accept("("):
            e = Apply(e, self.args())
        return e

    def args(self) -> tuple:
        out = []
        if self.accept(")"):
            return ()
        while True:
            out.append(self.expr())
            if self.accept(")"):
                return tuple(out)
            if not self.accept(","):
                self.error("expected ',' or ')'")

    def primary(self) -> Expr:
        tok = self.cur
        if tok.kind == "num":
            self.k += 1
            return Num(int(tok.text))
        if tok.kind == "name":
            self.k += 1
            if self.accept("("):
                return Call(tok.text, self.args())
            groups = []
            while self.accept("["):
                grp = []
                while True:
                    if self.cur.kind != "num":
                        self.error("expected an index")
                    grp.append(int(self.cur.text))
                    self.k += 1
                    if self.accept("]"):
                        break
                    self.expect(",")
                groups.append(tuple(grp))
            return Sym(tok.text, tuple(groups))
        if self.accept("("):
            e = self.expr()
            self.expect(")")
            return e
        self.error("expected an expression")


def parse(text: str) -> Expr:
    """Parse ``text`` into an AST; raises :class:`DSLSyntaxError`."""
    return _Parser(text).parse()


# -- printer -----------------------------------------------------------------------

_LEVEL = {"+": 1, "-": 1, "*": 2, "/": 2}


def _level(e) -> int:
    if isinstance(e, BinOp):
        return _LEVEL[e.op]
    if isinstance(e, Neg):
        return 3
    if isinstance(e, Pow):
        return 4
    return 5


def _wrap(e, need: int) -> str:
    s = to_text(e)
    return f"({s})" if _level(e) < need else s


def to_text(e: Expr) -> str:
    """Canonical text; ``parse(to_text(e)) == e``."""
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Sym):
        return e.name + "".join("[" + ",".join(map(str, g)) + "]" for g in e.indices)
    if isinstance(e, Call):
        return f"{e.fn}(" + ", ".join(to_text(a) for a in e.args) + ")"
    if isinstance(e, Apply):
        head = to_text(e.head)
        if _level(e.head) < 5 or isinstance(e.head, Num) or \
                isinstance(e.head, Sym) and not e.head.indices:
            head = f"({head})"
        return head + "(" + ", ".join(to_text(a) for a in e.args) + ")"
    if isinstance(e, Neg):
        return "-" + _wrap(e.arg, 3)
    if isinstance(e, Pow):
        return _wrap(e.base, 5) + "^" + str(e.exp)
    if isinstance(e, BinOp):
        lv = _LEVEL[e.op]
        return f"{_wrap(e.left, lv)} {e.op} {_wrap(e.right, lv + 1)}"
    raise TypeError(f"not an expression node: {e!r}")


# -- evaluation ------------------------------------------------------------------------


@dataclass(frozen=True)
class Tensor:
    """A tensor product of forms, compared literally rather than after W."""

    form: Form

    def __str__(self):
        return str(self.form)


class Evaluator:
    """Evaluates expressions against a :class:`qcartan.suites.Context`."""

    def __init__(self, ctx):
        self.ctx = ctx
        self.inst = ctx.inst
        self.m = ctx.inst.frt.n if ctx.inst.frt is not None else None

    # -- indices ----------------------------------------------------------

    def _flat(self, grp: tuple, name: str) -> int:
        n, m = self.ctx.n, self.m
        if len(grp) == 2 and m is not None:
            a, b = grp
            if not (1 <= a <= m and 1 <= b <= m):
                raise DSLError(f"index {list(grp)} of {name} out of range 1..{m}")
            return (a - 1) * m + (b - 1)
        if len(grp) == 1:
            (a,) = grp
            if not 1 <= a <= n:
                raise DSLError(f"index [{a}] of {name} out of range 1..{n}")
            return a - 1
        raise DSLError(f"index {list(grp)} of {name} must have one or two entries")

    def _small(self, grp: tuple, name: str) -> int:
        if len(grp) != 1 or self.m is None or not 1 <= grp[0] <= self.m:
            raise DSLError(f"index {list(grp)} of {name} out of range 1..{self.m}")
        return grp[0] - 1

    def _int_arg(self, e, name: str) -> int:
        if isinstance(e, Num):
            return self._flat((e.value,), name)
        raise DSLError(f"{name} expects an integer index")

    # -- entry points -----------------------------------------------------

    def eval_text(self, text: str):
        return self.eval(parse(text))

    def eval(self, e: Expr):
        if isinstance(e, Num):
            return as_scalar(e.value)
        if isinstance(e, Sym):
            return self._sym(e)
        if isinstance(e, Neg):
            return self._mul(as_scalar(-1), self.eval(e.arg))
        if isinstance(e, Pow):
            return self._pow(self.eval(e.base), e.exp)
        if isinstance(e, BinOp):
            x, y = self.eval(e.left), self.eval(e.right)
            if e.op == "+":
                return self._add(x, y)
            if e.op == "-":
                return self._add(x, self._mul(as_scalar(-1), y))
            if e.op == "*":
                return self._mul(x, y)
            if not isinstance(y, QScalar):
                raise DSLError("division only by scalars")
            return self._mul(ONE / y, x)
        if isinstance(e, Call):
            return self._call(e)
        if isinstance(e, Apply):
            head = self.eval(e.head)
            if len(e.args) != 1:
                raise DSLError("application takes one argument")
            arg = self._elem(self.eval(e.args[0]), "argument")
            if isinstance(head, Functional):
                return evaluate(head, arg, self.ctx.basis)
            if isinstance(head, Field) and head.degree == 1:
                return self.ctx.calc.apply(head, arg)
            raise DSLError("only functionals and vector fields can be applied")
        raise DSLError(f"cannot evaluate {e!r}")

    # -- names --------------------------------------------------------------

    def _sym(self, e: Sym):
        inst, ctx, name, idx = self.inst, self.ctx, e.name, e.indices
        if not idx:
            if name in inst.index:
                return AlgebraElement(inst, {(inst.index[name],): ONE})
            if name == "q":
                return Q if inst.q_value is None else as_scalar(inst.q_value)
            if name == "I":
                return inst.one()
            if name == "eps":
                return Functional.eps()
            if name == "dext":
                return Op("d")
            raise DSLError(f"unknown identifier {name!r}")
        if name in ("omega", "t"):
            I = tuple(self._flat(g, name) for g in idx)
            if name == "omega":
                return Form(inst, len(I), {I: inst.one()})
            return Field(inst, len(I), {I: inst.one()})
        one = {"eta": ctx.calc.eta, "h": ctx.calc.h, "chi": lambda k: Functional.prim("chi", k)}
        if name in one:
            if len(idx) != 1:
                raise DSLError(f"{name} takes one index")
            return one[name](self._flat(idx[0], name))
        if name in ("M", "N", "f"):
            if len(idx) != 2:
                raise DSLError(f"{name} takes two indices")
            i, j = self._flat(idx[0], name), self._flat(idx[1], name)
            if name == "M":
                return ctx.calc.M[i][j]
            if name == "N":
                return ctx.calc.N[i][j]
            return Functional.prim("f", i, j)
        if name in ("Lp", "Lm"):
            if len(idx) == 1 and len(idx[0]) == 2:
                idx = ((idx[0][0],), (idx[0][1],))
            if len(idx) != 2:
                raise DSLError(f"{name} takes two indices")
            return Functional.prim(name, self._small(idx[0], name), self._small(idx[1], name))
        if name == "T" and inst.frt is not None:
            if len(idx) == 1 and len(idx[0]) == 2:
                idx = ((idx[0][0],), (idx[0][1],))
            a, b = self._small(idx[0], name), self._small(idx[1], name)
            return AlgebraElement(inst, {(inst.index[inst.frt.T[a][b]],): ONE})
        if name in ("lieR", "lt", "it") and len(idx) == 1:
            return Op(name, index=self._flat(idx[0], name))
        raise DSLError(f"unknown identifier {name!r}")

    # -- arithmetic -----------------------------------------------------------

    def _elem(self, x, what: str) -> AlgebraElement:
        if isinstance(x, QScalar):
            return self.inst.scalar(x)
        if isinstance(x, AlgebraElement):
            return x
        if isinstance(x, Form) and x.degree == 0:
            return x.coeffs.get((), self.inst.zero())
        raise DSLError(f"{what} must be a function, got {_kind(x)}")

    def _form(self, x) -> Form:
        if isinstance(x, Form):
            return x
        if isinstance(x, (QScalar, AlgebraElement)):
            return Form(self.inst, 0, {(): self._elem(x, "form")})
        raise DSLError(f"expected a form, got {_kind(x)}")

    def _add(self, x, y):
        if isinstance(x, QScalar) and isinstance(y, QScalar):
            return x + y
        if isinstance(x, Functional) and isinstance(y, Functional):
            return x + y
        if isinstance(x, Tensor) or isinstance(y, Tensor):
            return Tensor(self._plain(x) + self._plain(y))
        if isinstance(x, Field) and isinstance(y, Field):
            return x + y
        if isinstance(x, Form) or isinstance(y, Form):
            return self._form(x) + self._form(y)
        if isinstance(x, (QScalar, AlgebraElement)) and isinstance(y, (QScalar, AlgebraElement)):
            return self._elem(x, "summand") + self._elem(y, "summand")
        raise DSLError(f"cannot add {_kind(x)} and {_kind(y)}")

    def _plain(self, x) -> Form:
        return x.form if isinstance(x, Tensor) else self._form(x)

    def _mul(self, x, y):
        if isinstance(x, QScalar) and isinstance(y, QScalar):
            return x * y
        if isinstance(y, QScalar):
            x, y = y, x
        if isinstance(x, QScalar):
            if isinstance(y, (Form, Field)):
                return y.scale(x)
            if isinstance(y, Tensor):
                return Tensor(y.form.scale(x))
            if isinstance(y, Functional):
                return x * y
            if isinstance(y, AlgebraElement):
                return y * x
            raise DSLError(f"cannot scale {_kind(y)}")
        if isinstance(x, AlgebraElement):
            if isinstance(y, AlgebraElement):
                return x * y
            if isinstance(y, Form):
                return self.ctx.calc.left_multiply(x, y)
            if isinstance(y, Tensor):
                return Tensor(self.ctx.calc.left_multiply(x, y.form))
            if isinstance(y, Field):
                return x * y
        if isinstance(x, (Form, Tensor)) and isinstance(y, AlgebraElement):
            return Tensor(x.form * y) if isinstance(x, Tensor) else x * y
        if isinstance(x, Field) and isinstance(y, AlgebraElement):
            raise DSLError("a vector field times a function: use box(V, a) for V [] a")
        if isinstance(x, Functional) and isinstance(y, Functional):
            raise DSLError("functional product: use conv(f, g)")
        raise DSLError(f"cannot multiply {_kind(x)} by {_kind(y)}")

    def _pow(self, x, k: int):
        if isinstance(x, QScalar):
            return x ** k
        if isinstance(x, AlgebraElement):
            if k < 0:
                raise DSLError("negative powers of algebra elements are not defined")
            return x ** k
        raise DSLError(f"cannot raise {_kind(x)} to a power")

    # -- functions ------------------------------------------------------------------

    def _call(self, e: Call):
        fn, raw = e.fn, e.args
        ctx = self.ctx
        if fn not in FUNCTIONS:
            raise DSLError(f"unknown function {fn!r}")

        def arity(*ks):
            if len(raw) not in ks:
                raise DSLError(f"{fn} takes {' or '.join(map(str, ks))} argument(s), got {len(raw)}")

        if fn == "twist":
            arity(2)
            which = raw[0]
            if not (isinstance(which, Sym) and which.name in ("S", "Sinv") and not which.indices):
                raise DSLError("twist expects S or Sinv as first argument")
            inner = self.eval(raw[1])
            if not isinstance(inner, Functional):
                raise DSLError("twist expects a functional")
            return Functional("twist", (which.name, inner))
        if fn == "lieR":
            arity(1, 2)
            k = self._int_arg(raw[0], fn)
            if len(raw) == 1:
                return Op("lieR", index=k)
            return ctx.cartan.lie_right(k, self._form(self.eval(raw[1])))
        if fn == "DI":
            arity(3)
            i, k = self._int_arg(raw[0], fn), self._int_arg(raw[1], fn)
            return ctx.cartan.defect_index(i, k, self._elem(self.eval(raw[2]), "DI argument")).value
        args = [self.eval(a) for a in raw]
        if fn == "d":
            arity(1)
            x = args[0]
            if isinstance(x, Form) and x.degree > 0:
                return ctx.ext.d(x)
            return ctx.calc.d(self._elem(x, "d argument"))
        if fn == "dext":
            arity(1)
            x = self._form(args[0])
            return ctx.ext.d(x)
        if fn == "P":
            arity(1)
            return ctx.calc.P(self._form(args[0]))
        if fn == "bracket":
            arity(2)
            V, rho = self._field(args[0]), self._form(args[1])
            return ctx.calc.bracket(V, rho)
        if fn == "gbracket":
            arity(2)
            return ctx.ext.general_bracket(self._field(args[0]), self._form(args[1]))
        if fn == "tensor":
            arity(2)
            x, y = args
            if isinstance(x, Field) and isinstance(y, Field):
                return ctx.calc.field_tensor(x, y)
            return Tensor(ctx.ext.tensor(self._plain(x), self._plain(y)))
        if fn == "wedge":
            arity(2)
            return ctx.ext.wedge(self._form(args[0]), self._form(args[1]))
        if fn == "conv":
            arity(2)
            if not all(isinstance(a, Functional) for a in args):
                raise DSLError("conv expects two functionals")
            return args[0] * args[1]
        if fn == "star":
            arity(2)
            x, y = args
            if isinstance(x, Functional):
                return self._star(x, y, "left")
            if isinstance(y, Functional):
                return self._star(y, x, "right")
            raise DSLError("star needs a functional on one side")
        if fn == "i":
            arity(1, 2)
            V = self._field(args[0])
            if len(args) == 1:
                return Op("i", V=V)
            return ctx.cartan.contract(V, self._form(args[1]))
        if fn == "lie":
            arity(1, 2)
            V = self._field(args[0])
            if len(args) == 1:
                return Op("lie", V=V)
            return ctx.cartan.lie(V, self._form(args[1]))
        if fn == "delta":
            if len(args) < 3:
                raise DSLError("delta takes operators, then theta and x")
            word = tuple(self._op(a) for a in args[:-2])
            theta, x = self._form(args[-2]), self._form(args[-1])
            return ctx.cartan.apply_terms(ctx.cartan.delta(word, theta), x)
        if fn in ("S", "Sinv"):
            arity(1)
            return antipode(self._elem(args[0], fn), inverse=(fn == "Sinv"))
        if fn == "eps":
            arity(1)
            return counit(self._elem(args[0], fn))
        if fn == "box":
            arity(2)
            return ctx.calc.box(self._field(args[0]), self._elem(args[1], "box argument"))
        raise DSLError(f"unknown function {fn!r}")

    def _field(self, x) -> Field:
        if isinstance(x, Field):
            return x
        raise DSLError(f"expected a vector field, got {_kind(x)}")

    def _op(self, x) -> Op:
        if isinstance(x, Op):
            return x
        if isinstance(x, Field) and x.degree == 1:
            return Op("field", V=x)
        raise DSLError(f"expected an operator, got {_kind(x)}")

    def _star(self, fn: Functional, x, side: str):
        ctx = self.ctx
        if isinstance(x, (QScalar, AlgebraElement)):
            return convolve(side, fn, self._elem(x, "star argument"), ctx.basis)
        if isinstance(x, Form):
            if fn.op in ("f", "chi"):
                idx = fn.args if fn.op == "f" else fn.args[0]
                return ctx.ext.conv(fn.op, idx, x, side)
            raise DSLError("only f and chi convolve with forms")
        raise DSLError(f"cannot convolve with {_kind(x)}")

    # -- comparison -----------------------------------------------------------------

    def equal(self, x, y) -> bool:
        """Exact equality; forms compare after antisymmetrization."""
        if isinstance(x, Tensor) or isinstance(y, Tensor):
            return self._plain(x) == self._plain(y)
        if isinstance(x, Functional) or isinstance(y, Functional):
            if not (isinstance(x, Functional) and isinstance(y, Functional)):
                return False
            b = self.ctx.basis
            return all(evaluate(x, a, b) == evaluate(y, a, b) for a in self.ctx.monomials(2))
        if isinstance(x, Field) or isinstance(y, Field):
            return isinstance(x, Field) and isinstance(y, Field) and (x - y).is_zero()
        if isinstance(x, Form) or isinstance(y, Form):
            return self.ctx.ext.equal(self._form(x), self._form(y))
        if isinstance(x, QScalar) and isinstance(y, QScalar):
            return x == y
        return self._elem(x, "value") == self._elem(y, "value")

    def is_zero(self, x) -> bool:
        return self.equal(x, as_scalar(0))


def _kind(x) -> str:
    if isinstance(x, QScalar):
        return "a scalar"
    if isinstance(x, AlgebraElement):
        return "a function"
    if isinstance(x, Form):
        return f"a {x.degree}-form"
    if isinstance(x, Field):
        return "a vector field" if x.degree == 1 else f"a rank-{x.degree} tensor field"
    if isinstance(x, Functional):
        return "a functional"
    if isinstance(x, Tensor):
        return "a tensor"
    if isinstance(x, Op):
        return "an operator"
    return type(x).__name__
