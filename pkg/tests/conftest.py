import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

import battery  # noqa: E402


@pytest.fixture(scope="session")
def instances():
    return battery.make_battery()


def pytest_terminal_summary(terminalreporter):
    if not battery.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(battery.RESULTS):
        terminalreporter.write_line(battery.RESULTS[key])
