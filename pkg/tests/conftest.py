import json
import pathlib
import sys

import pytest

HERE = pathlib.Path(__file__).parent
sys.path.insert(0, str(HERE))


def pytest_configure(config):
    config.acceptance_lines = []


@pytest.fixture(scope="session")
def frozen():
    return json.loads((HERE / "data" / "frozen_oracles.json").read_text())


@pytest.fixture(scope="session")
def acceptance_log(pytestconfig):
    return pytestconfig.acceptance_lines


def pytest_terminal_summary(terminalreporter, config):
    lines = getattr(config, "acceptance_lines", [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
        terminalreporter.write_line(line)
