import sys

import pytest

from qcartan import Context, gl_q2


@pytest.fixture(scope="session")
def inst():
    return gl_q2()


@pytest.fixture(scope="session")
def ctx(inst):
    return Context(inst)


@pytest.fixture(scope="session")
def ctx1(inst):
    return Context(inst, q=1)


@pytest.fixture(scope="session")
def gens(ctx):
    return ctx.gens()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for number in sorted(results):
            terminalreporter.write_line(results[number])
