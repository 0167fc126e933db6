from pathlib import Path

import pytest

from invmap.mapping import VectorialMapping, load_mapping

DATA = Path(__file__).parent / "data"


def mapping(*exprs):
    return VectorialMapping.from_strings(list(exprs))


INCREMENT = mapping("x0 ^ 1", "x1 ^ x0", "x2 ^ x0*x1", "x3 ^ x0*x1*x2")
SHIFT_AND = load_mapping(DATA / "shift_and.map")
TFUNC = load_mapping(DATA / "tfunc.map")
RELABELED_TFUNC = load_mapping(DATA / "relabeled_tfunc.map")
NOT_TRIANGULAR = load_mapping(DATA / "not_triangular.map")
DOUBLE_X0 = mapping("x0", "x0")
FULL_PERIOD_A = load_mapping(DATA / "full_period_20a.map")
FULL_PERIOD_B = load_mapping(DATA / "full_period_20b.map")
NLFSR_FEEDBACK = "x0 ^ x3 ^ x1*x2 ^ x2*x3"


@pytest.fixture
def data_dir():
    return DATA


_acceptance = []


def pytest_runtest_logreport(report):
    if not report.nodeid.split("::")[0].endswith("test_acceptance.py"):
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        mark = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{mark}  {name}")
