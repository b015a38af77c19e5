import pytest

from sflab.explicit import bundled_zeros
from sflab.sieve import build_sieve

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def table_small():
    return build_sieve(200_000)


@pytest.fixture(scope="session")
def table_1e6():
    return build_sieve(1_100_000)


@pytest.fixture(scope="session")
def zeros():
    return bundled_zeros()


@pytest.fixture(autouse=True)
def _no_env_cache(monkeypatch):
    monkeypatch.delenv("SFLAB_CACHE", raising=False)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
