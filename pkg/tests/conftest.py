import pytest

from dgsemi.catalog import standard_catalog
from dgsemi.semidual import clear_cache

# filled by test_acceptance.criterion(); printed once at the end of the run
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def catalog():
    return standard_catalog()


@pytest.fixture(autouse=True)
def _fresh_cache():
    clear_cache()
    yield
    clear_cache()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
