from __future__ import annotations

import pytest

from intcpx.table import build_table

_ACCEPTANCE: list[tuple[int, str, str]] = []


@pytest.fixture(scope="session")
def table_small():
    return build_table(20_000)


@pytest.fixture(scope="session")
def table_1e5():
    return build_table(100_000)


@pytest.fixture(scope="session")
def table_1e6():
    return build_table(1_000_000)


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, text): exit criterion reported in the summary")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        status = "PASS" if report.passed else "FAIL"
        _ACCEPTANCE.append((marker.args[0], marker.args[1], status))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, text, status in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"criterion {number:>2}: {status}  {text}")
