import sys
from functools import lru_cache
from pathlib import Path

import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None)
settings.load_profile("default")

sys.path.insert(0, str(Path(__file__).parent))

from desing import FieldSpec, polynomials_in, resolve_binomial, resolve_plane_curve  # noqa: E402

BINOMIAL_CORPUS = {
    "whitney": ["x(1)^2-x(2)*x(3)^2"],
    "cross_squares": ["x(1)^2-x(2)^2*x(3)^2"],
    "weighted_sextic": ["x(1)*x(2)^2*x(3)^3-x(4)^6"],
    "two_generators": ["x(1)^2-x(2)^2*x(3)^2", "x(4)^2+x(2)^3"],
    "a_n": ["x(1)*x(2)-x(3)^4"],
}

CURVE_CORPUS = {
    "node": ("x*y", False),
    "cusp": ("x^2-y^3", False),
    "tacnode": ("y^2-x^4", False),
    "triple": ("x^3-x*y^2", False),
    "a4": ("x^2-y^5", False),
    "shifted_node": ("y^2-x^3+x^2", False),
    "embedded_cusp": ("x^2-y^3", True),
    "embedded_e8": ("x^3-y^5", True),
}


@lru_cache(maxsize=None)
def binomial_tree(name: str, characteristic: int = 0):
    _, ideal = polynomials_in(BINOMIAL_CORPUS[name], FieldSpec(characteristic))
    return resolve_binomial(ideal)


@lru_cache(maxsize=None)
def curve_tree(name: str):
    text, embedded = CURVE_CORPUS[name]
    _, (f,) = polynomials_in([text], minimum=2)
    return resolve_plane_curve(f, embedded=embedded)


def corpus_trees():
    out = [(f"binomial:{n}", binomial_tree(n)) for n in BINOMIAL_CORPUS]
    out.append(("binomial:cross_squares:F2", binomial_tree("cross_squares", 2)))
    out += [(f"curve:{n}", curve_tree(n)) for n in CURVE_CORPUS]
    return out


@pytest.fixture(scope="session")
def corpus():
    return corpus_trees()


# -- acceptance report -----------------------------------------------------

_CRITERIA: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        status = "PASS" if report.outcome == "passed" else "FAIL"
        _CRITERIA[number] = (title, status)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, status = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number}: {status}  {title}")
