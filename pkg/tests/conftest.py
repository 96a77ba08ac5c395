from fractions import Fraction

import pytest

from ncg.models import build_model
from ncg.scalar import SYMBOLIC, SpecializedField

SPECIAL_S = (Fraction(2), Fraction(3, 2))


@pytest.fixture(scope="session")
def F():
    return SYMBOLIC


@pytest.fixture(scope="session", params=SPECIAL_S, ids=["s=2", "s=3/2"])
def Fs(request):
    return SpecializedField(request.param)


@pytest.fixture(scope="session")
def m2():
    return build_model("m2")


@pytest.fixture(scope="session")
def qsphere():
    return build_model("qsphere")


@pytest.fixture(scope="session")
def qdisk():
    return build_model("qdisk")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import report_lines
    except ImportError:
        return
    lines = report_lines()
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
