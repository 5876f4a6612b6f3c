import os
from functools import lru_cache

import pytest

from sfcneighbors import builtin, compile_spec

ACCEPTANCE_LINES = []


@lru_cache(maxsize=None)
def tables_for(name):
    return compile_spec(builtin(name))


@pytest.fixture(scope="session")
def hilbert():
    return tables_for("hilbert2d_global")


@pytest.fixture(scope="session")
def tables():
    return tables_for


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
        terminalreporter.write_line(line)


def bench_samples(default=100_000):
    return int(os.environ.get("SFC_BENCH_SAMPLES", default))
