from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from qac.scalars import Mode, QContext

settings.register_profile(
    "qac", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("qac")

BASES = (Fraction(1, 2), Fraction(1, 3), Fraction(2, 5))


@pytest.fixture
def half():
    return QContext(Fraction(1, 2))


@pytest.fixture
def half_num():
    return QContext(Fraction(1, 2), mode=Mode.NUMERIC)


@pytest.fixture(params=BASES, ids=lambda q: f"q={q}")
def base(request):
    return QContext(request.param)


# -- acceptance summary --------------------------------------------------------------

_criteria: dict = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if not name.startswith("test_criterion_"):
        return
    if report.when == "call" or report.outcome != "passed":
        props = dict(report.user_properties)
        verdict = "PASS" if report.passed else "FAIL"
        _criteria.setdefault(name, (verdict, props.get("title", name), props.get("detail", "")))
        if report.failed:
            _criteria[name] = ("FAIL", props.get("title", name), props.get("detail", ""))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_criteria, key=lambda n: int(n.split("_")[2])):
        verdict, title, detail = _criteria[name]
        number = name.split("_")[2]
        line = f"criterion {number:>2}: {verdict}  {title}"
        terminalreporter.write_line(line + (f"  [{detail}]" if detail else ""))
