import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hallcrit.catalog import get_group  # noqa: E402
from hallcrit.lattices import commutator_operations, join_semilattices  # noqa: E402


@pytest.fixture(scope="session")
def small_csls():
    """Every commutator semi-lattice on a join semi-lattice with <= 4 elements."""
    return [c for n in range(1, 5) for s in join_semilattices(n) for c in commutator_operations(s)]


@pytest.fixture
def d4():
    return get_group("D4")


_CRITERIA: dict[int, tuple[str, str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call" or (report.when == "setup" and report.failed):
        notes = ", ".join(f"{k}={v}" for k, v in item.user_properties)
        _CRITERIA[number] = (title, "PASS" if report.passed else "FAIL", notes)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, verdict, notes = _CRITERIA[number]
        suffix = f"  [{notes}]" if notes else ""
        terminalreporter.write_line(f"criterion {number}: {verdict}  {title}{suffix}")
