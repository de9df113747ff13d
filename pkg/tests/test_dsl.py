import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcartan.dsl import (FUNCTIONS, Apply, BinOp, Call, DSLError, DSLSyntaxError, Evaluator,
                         Neg, Num, Pow, Sym, parse, to_text)
from qcartan.suites import EXPRESSIONS

names = st.sampled_from(["a", "b", "c", "d", "D", "q", "I", "omega", "t", "chi", "f", "x1"])
groups = st.lists(st.lists(st.integers(1, 4), min_size=1, max_size=2).map(tuple),
                  max_size=2).map(tuple)
leaves = st.one_of(st.integers(0, 50).map(Num), st.builds(Sym, names, groups))


def _extend(children):
    apply_head = children.filter(lambda e: not (isinstance(e, Sym) and not e.indices))
    return st.one_of(
        st.builds(BinOp, st.sampled_from("+-*/"), children, children),
        st.builds(Neg, children),
        st.builds(Pow, children, st.integers(-3, 5)),
        st.builds(Call, st.sampled_from(sorted(FUNCTIONS)),
                  st.lists(children, max_size=3).map(tuple)),
        st.builds(Apply, apply_head, st.lists(children, min_size=1, max_size=2).map(tuple)),
    )


trees = st.recursive(leaves, _extend, max_leaves=12)


@settings(max_examples=300, deadline=None)
@given(trees)
def test_print_parse_round_trip(e):
    text = to_text(e)
    assert parse(text) == e
    assert to_text(parse(text)) == text


def test_registered_expressions_round_trip():
    count = 0
    for entries in EXPRESSIONS.values():
        for entry in entries:
            for text in entry[:2]:
                tree = parse(text)
                assert parse(to_text(tree)) == tree
                count += 1
    assert count > 20


def test_precedence():
    assert parse("a + b * c") == BinOp("+", Sym("a"), BinOp("*", Sym("b"), Sym("c")))
    assert parse("a - b - c") == BinOp("-", BinOp("-", Sym("a"), Sym("b")), Sym("c"))
    assert parse("-a^2") == Neg(Pow(Sym("a"), 2))
    assert parse("q^-1") == Pow(Sym("q"), -1)
    assert parse("omega[1,2][2]") == Sym("omega", ((1, 2), (2,)))


@pytest.mark.parametrize("text, line, column", [
    ("d(a * b", 1, 8),
    ("a +\n  * b", 2, 3),
    ("omega[1,]", 1, 9),
    ("x^y", 1, 3),
    ("a ? b", 1, 3),
])
def test_syntax_errors_carry_position(text, line, column):
    with pytest.raises(DSLSyntaxError) as err:
        parse(text)
    assert (err.value.line, err.value.column) == (line, column)
    assert f"line {line}, column {column}" in str(err.value)


def test_unclosed_call_reports_end_of_input():
    with pytest.raises(DSLSyntaxError, match="end of input"):
        parse("d(a * b")


def test_evaluation_agrees_with_api(ctx):
    ev = Evaluator(ctx)
    a, b = ctx.gens()[:2]
    assert ev.eval_text("a*b - q*b*a") == ctx.inst.zero()
    assert ev.eval_text("chi[1,1](a)") == ctx.basis.chi(0, a)
    assert ev.eval_text("f[1,2][2,1](b*c)") == ctx.basis.f(1, 2, ctx.gens()[1] * ctx.gens()[2])
    assert ev.equal(ev.eval_text("d(a*b)"), ctx.calc.d(a * b))
    assert ev.eval_text("bracket(t[2,1], omega[2,1])") == ctx.inst.one()
    assert ev.eval_text("S(S(b))") == ev.eval_text("q^-2*b")


def test_di_nonzero_through_language(ctx, ctx1):
    for c, expect_zero in ((ctx, False), (ctx1, True)):
        ev = Evaluator(c)
        vals = [ev.is_zero(ev.eval_text(f"DI({i}, {k}, a)")) for i in range(1, 5) for k in range(1, 5)]
        assert all(vals) is expect_zero


@pytest.mark.parametrize("text", ["zzz", "omega[5]", "omega[3,1]", "chi[1,1] * chi[2,2]",
                                  "box(a)", "t[1] * a"])
def test_evaluation_errors(ctx, text):
    with pytest.raises(DSLError):
        Evaluator(ctx).eval_text(text)


def test_printed_forms_parse_back(ctx):
    ev = Evaluator(ctx)
    x = ev.eval_text("d(a) * b + omega[1] * c")
    assert ev.equal(ev.eval_text(str(x)), x)
