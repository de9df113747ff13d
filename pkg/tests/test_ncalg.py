"""Relations and Hopf structure of the quantum matrix group with ab = q ba."""

import json

import pytest

from qcartan import Instance, Q, antipode, coproduct, counit, gl_q2, verify_hopf_axioms
from qcartan.ncalg import AlgebraError, TensorElement
from qcartan.qscalar import LAMBDA, ONE


def test_commutation_relations(inst, gens):
    a, b, c, d, D = gens
    assert a * b == Q * (b * a)
    assert a * c == Q * (c * a)
    assert b * c == c * b
    assert b * d == Q * (d * b)
    assert c * d == Q * (d * c)
    assert a * d - d * a == LAMBDA * (b * c)


def test_determinant_is_central_and_inverted(inst, gens):
    a, b, c, d, D = gens
    det = a * d - Q * (b * c)
    assert det * D == inst.one()
    assert D * det == inst.one()
    for x in gens:
        assert det * x == x * det


def tensor(inst, pairs):
    out = TensorElement(inst, {})
    for x, y in pairs:
        out = out + TensorElement(inst, {(u, v): cu * cv for u, cu in x.terms.items()
                                         for v, cv in y.terms.items()})
    return out


def test_coproduct_counit_antipode_on_generators(inst, gens):
    a, b, c, d, D = gens
    assert coproduct(a) == tensor(inst, [(a, a), (b, c)])
    assert coproduct(b) == tensor(inst, [(a, b), (b, d)])
    assert coproduct(D) == tensor(inst, [(D, D)])
    assert [counit(x) for x in (a, b, c, d, D)] == [ONE, 0, 0, ONE, ONE]
    # S(T) = det^-1 [[d, -b/q], [-q c, a]]
    assert antipode(a) == d * D
    assert antipode(b) == (-ONE / Q) * (b * D)
    assert antipode(c) == (-Q) * (c * D)
    assert antipode(d) == a * D


def test_antipode_square(gens):
    a, b, c, d, D = gens
    assert antipode(antipode(b)) == (ONE / (Q * Q)) * b
    assert antipode(antipode(c)) == (Q * Q) * c
    assert antipode(antipode(a)) == a
    for x in gens:
        assert antipode(antipode(x, inverse=True)) == x


def test_antipode_is_antimultiplicative(inst):
    monos = inst.normal_monomials(1)
    el = lambda w: inst.element({w: 1})
    for u in monos:
        for v in monos:
            x, y = el(u), el(v)
            assert antipode(x * y) == antipode(y) * antipode(x)


def test_hopf_axioms_all_rows(inst):
    rows = verify_hopf_axioms(inst, degree=2)
    assert len(rows) > 100
    assert all(r.ok for r in rows), [r.check for r in rows if not r.ok][:5]


def test_json_round_trip_is_bit_exact(inst, tmp_path):
    text = inst.to_json()
    back = Instance.from_json(text)
    assert back.to_json() == text
    path = tmp_path / "inst.json"
    inst.dump(path)
    assert Instance.load(path).to_json() == text
    json.loads(text)


def test_specialized_instance(inst):
    sp = inst.specialize(2)
    assert sp.q_value == 2
    a, b = sp.gen("a"), sp.gen("b")
    assert a * b == 2 * (b * a)
    assert Instance.from_json(sp.to_json()).to_json() == sp.to_json()


def test_bad_instance_rejected():
    doc = json.loads(gl_q2().to_json())
    doc["generators"] = doc["generators"][:-1]
    with pytest.raises((AlgebraError, KeyError, ValueError)):
        Instance.from_json_dict(doc)


def test_corrupted_antipode_is_caught():
    doc = json.loads(gl_q2().to_json())
    doc["antipode"]["b"][0]["coeff"] = "-q"
    rows = verify_hopf_axioms(Instance.from_json_dict(doc), degree=2)
    failed = {r.check: r.witness for r in rows if not r.ok}
    assert failed.get("antipode [b]") == "b"


def test_rewriting_is_associative_on_generator_triples(inst):
    g = [inst.gen(s) for s in inst.generators]
    for x in g:
        for y in g:
            for z in g:
                assert (x * y) * z == x * (y * z)


def test_classical_instance(inst):
    one = gl_q2(1)
    g = [one.gen(s) for s in one.generators]
    assert all(x * y == y * x for x in g for y in g)
    assert all(r.ok for r in verify_hopf_axioms(one, degree=2))


def test_sl_q2():
    from qcartan import sl_q2
    sl = sl_q2()
    a, b, c, d = (sl.gen(s) for s in "abcd")
    assert a * d - Q * (b * c) == sl.one()
    assert d * a - (ONE / Q) * (b * c) == sl.one()
    assert antipode(a) == d and antipode(b) == (-ONE / Q) * b
    assert all(r.ok for r in verify_hopf_axioms(sl, degree=2))
    assert Instance.from_json(sl.to_json()).to_json() == sl.to_json()
