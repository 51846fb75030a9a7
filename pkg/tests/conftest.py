import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from malaab import Pipeline, load_default  # noqa: E402
from malaab.resources import data_path  # noqa: E402


@pytest.fixture(scope="session")
def resources():
    return load_default()


@pytest.fixture(scope="session")
def pipeline(resources):
    return Pipeline(resources)


@pytest.fixture(scope="session")
def corpus_dir():
    return data_path("corpus")


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.REPORT:
        return
    terminalreporter.section("acceptance criteria")
    for line in acceptance.REPORT:
        terminalreporter.write_line(line)
