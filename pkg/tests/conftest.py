from collections import defaultdict

import pytest
from hypothesis import strategies as st

from possreason.fuzzy import FuzzySet, Universe

_criteria = defaultdict(list)
_names = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, name): acceptance criterion covered by a test")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            number, name = mark.args
            _names[number] = name
            item.user_properties.append(("criterion", number))


def pytest_runtest_logreport(report):
    for key, value in report.user_properties:
        if key == "criterion" and (report.when == "call" or report.outcome != "passed"):
            _criteria[value].append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        outcomes = _criteria[number]
        ok = all(o == "passed" for o in outcomes)
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(
            f"[{status}] criterion {number}: {_names[number]} ({len(outcomes)} checks)"
        )


GRADES = st.one_of(
    st.sampled_from([0.0, 0.25, 0.5, 0.75, 1.0]),
    st.floats(min_value=0.0, max_value=1.0, allow_nan=False),
)


@st.composite
def universes(draw, min_size=1, max_size=5):
    n = draw(st.integers(min_size, max_size))
    return Universe("X", tuple(f"x{i}" for i in range(n)))


@st.composite
def fuzzy_sets(draw, universe, crisp=False):
    grade = st.sampled_from([0.0, 1.0]) if crisp else GRADES
    return FuzzySet(universe, tuple(draw(grade) for _ in universe.elements))


@pytest.fixture
def bool_universe():
    return Universe("Bool", ("true", "false"))
