import json
import pathlib
import re

import pytest
from hypothesis import HealthCheck, settings

from qtx.qt import QTCodeSpec

ROOT = pathlib.Path(__file__).resolve().parents[1]
SPECS = ROOT / "specs"

settings.register_profile(
    "qtx", deadline=None, max_examples=40, derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile("qtx")


def load_spec(name: str) -> QTCodeSpec:
    return QTCodeSpec.from_json(json.loads((SPECS / name).read_text()))


@pytest.fixture(scope="session")
def herm42_spec():
    return load_spec("hermitian42.json")


@pytest.fixture(scope="session")
def qubit_spec():
    return load_spec("qubit.json")


@pytest.fixture(scope="session")
def additive_spec():
    return load_spec("additive_gf16.json")


_CRITERIA: dict[int, list[str]] = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)", report.nodeid)
    if not m:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _CRITERIA.setdefault(int(m.group(1)), []).append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        outcomes = _CRITERIA[num]
        status = "PASS" if all(o == "passed" for o in outcomes) else "FAIL"
        terminalreporter.write_line(f"criterion {num}: {status}")
