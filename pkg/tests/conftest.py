import pytest

from fanaut.examples import hirzebruch, projective_space, synthetic_rank2
from fanaut.fan import Fan


@pytest.fixture
def p2():
    return projective_space(2)


@pytest.fixture
def p1():
    return Fan(1, {"X1": (1,), "X2": (-1,)}, (frozenset({"X1"}), frozenset({"X2"})))


@pytest.fixture
def f1():
    return hirzebruch(1)


@pytest.fixture
def synthetic():
    return synthetic_rank2(False)


@pytest.fixture
def synthetic_linear():
    return synthetic_rank2(True)


# acceptance criteria report: tests/test_acceptance.py fills this in
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line("criterion %s: %s  %s" % (key, "PASS" if ok else "FAIL", detail))
