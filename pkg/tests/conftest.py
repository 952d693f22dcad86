from functools import lru_cache

import pytest

from surfatlas.group import build_named_group
from surfatlas.surface import SurfaceComplex

# groups with a bundled golden table and their component totals
GOLDEN_GROUPS = {
    "S3": 2,
    "A4": 5,
    "S4": 27,
    "SL2(3)": 21,
    "A5": 91,
    "S5": 284,
    "SL2(5)": 341,
    "PSL2(7)": 385,
    "SL2(7)": 1376,
    "A6": 1335,
    "S6": 4477,
    "A7": 16813,
}
SMALL_GROUPS = ["S3", "A4", "S4", "SL2(3)", "A5", "D8", "D10", "Q8", "ES(3)"]


@lru_cache(maxsize=None)
def group(spec):
    return build_named_group(spec)


@lru_cache(maxsize=None)
def complex_of(spec):
    return SurfaceComplex(group(spec))


@pytest.fixture(autouse=True)
def _cache_dir(tmp_path_factory, monkeypatch):
    # never touch the user's cache from the test suite
    monkeypatch.setenv("ATLAS_CACHE_DIR", str(tmp_path_factory.getbasetemp() / "atlas-cache"))


_acceptance = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid or "::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or report.outcome != "passed":
        name = report.nodeid.split("::")[-1]
        # a failure in setup or teardown counts against the criterion too
        prev = _acceptance.get(name, "PASS")
        _acceptance[name] = "PASS" if report.passed and prev == "PASS" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance, key=lambda s: int(s.split("_")[2])):
        num = name.split("_")[2]
        label = " ".join(name.split("_")[3:])
        terminalreporter.write_line(f"{_acceptance[name]}  criterion {num}: {label}")
