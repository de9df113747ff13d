"""Suite runner behaviour, specializations, and mutations that must be caught."""

import pytest

from qcartan import SUITES, Context, build_suite, gl_q2, run_checks
from qcartan.qscalar import ONE


def failing(ctx, suite):
    return [r.check for r in run_checks(build_suite(suite, ctx)) if not r.ok]


@pytest.mark.parametrize("q", [2, "1/3", -1])
@pytest.mark.parametrize("suite", ["leibniz", "braid", "defect-index", "invariance"])
def test_specialized_suites_pass(inst, q, suite):
    assert failing(Context(inst, q=q), suite) == []


def test_raw_normalization_passes(inst):
    ctx = Context(inst, normalization="raw")
    for suite in ("leibniz", "duality", "braid"):
        assert failing(ctx, suite) == []


def test_suites_are_deterministic(inst):
    a = [r.as_dict() for r in run_checks(build_suite("duality", Context(inst)))]
    b = [r.as_dict() for r in run_checks(build_suite("duality", Context(inst)))]
    strip = lambda rows: [{k: v for k, v in r.items() if k != "elapsed"} for r in rows]
    assert strip(a) == strip(b)


def test_every_suite_is_registered():
    assert list(SUITES) == ["hopf-axioms", "leibniz", "duality", "field-coproducts",
                            "invariance", "braid", "wedge", "cartan", "delta",
                            "defect-index", "classical"]


def test_unmirrored_inverse_breaks_exchange_identity(inst):
    ctx = Context(inst)
    ctx.braid.B_f = ctx.braid.B
    bad = failing(ctx, "braid")
    assert any("chi_r * (f_s^l * a)" in name for name in bad)
    assert any("entrywise" in name for name in bad)


def test_perturbed_sigma_breaks_braid_equation(inst):
    ctx = Context(inst)
    br = ctx.braid
    row = dict(br.sigma[(0, 1)])
    key = next(iter(row))
    row[key] = row[key] + ONE
    br.sigma[(0, 1)] = row
    assert "sigma_12 sigma_23 sigma_12 = sigma_23 sigma_12 sigma_23" in failing(ctx, "braid")


def test_crashing_check_is_reported_not_raised():
    from qcartan.suites import Check

    def boom():
        raise RuntimeError("kaput")
    (row,) = run_checks([Check("explodes", boom)])
    assert not row.ok and row.status == "fail"
    assert "kaput" in row.witness


def test_nonzero_expectations_flip_at_q_one(inst):
    ctx = Context(inst, q=1)
    rows = run_checks(build_suite("defect-index", ctx))
    assert all(r.ok for r in rows)
    assert all(r.expect == "equal" for r in rows if "DI(" in r.check)
