"""Shared strategies and the acceptance summary hook."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from rankforge.fields import FieldSpec
from rankforge.poly import Poly

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

Q = FieldSpec.parse("Q")
QI = FieldSpec.parse("Qi")
F2 = FieldSpec.parse("F2")
F3 = FieldSpec.parse("F3")
F5 = FieldSpec.parse("F5")
F7 = FieldSpec.parse("F7")
F101 = FieldSpec.parse("F101")

FIELDS = [Q, F2, F5, F7, F101]


def small_fraction():
    return st.builds(Fraction, st.integers(-5, 5), st.integers(1, 3))


def scalars(spec: FieldSpec):
    if spec.kind == "Q":
        return small_fraction()
    if spec.kind == "F":
        return st.integers(0, spec.p - 1).map(spec.from_int)
    return st.tuples(small_fraction(), small_fraction()).map(spec.normalize)


def polys(spec: FieldSpec, max_degree: int = 4, nonzero: bool = False):
    coeff = st.integers(-3, 3)
    strat = st.lists(coeff, min_size=0, max_size=max_degree + 1).map(lambda cs: Poly(spec, [spec.from_int(c) for c in cs]))
    if nonzero:
        strat = strat.filter(lambda p: not p.is_zero())
    return strat


def monic_polys(spec: FieldSpec, max_degree: int = 3):
    return st.lists(st.integers(-2, 2), min_size=0, max_size=max_degree).map(
        lambda cs: Poly(spec, [spec.from_int(c) for c in cs] + [spec.one])
    )


@pytest.fixture(params=FIELDS, ids=str)
def field(request):
    return request.param


_ACCEPTANCE: dict[str, list[str]] = {}


def _criterion(nodeid: str) -> str:
    return nodeid.split("::")[-1].split("[")[0]


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or report.outcome != "passed":
        _ACCEPTANCE.setdefault(_criterion(report.nodeid), []).append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE):
        ok = all(o == "passed" for o in _ACCEPTANCE[name])
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}")
