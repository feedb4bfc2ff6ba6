import random

import pytest


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=20240917, help="seed for randomized test inputs")


@pytest.fixture
def seed(request):
    return request.config.getoption("--seed")


@pytest.fixture
def rng(seed):
    return random.Random(seed)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        ok, description, elapsed, limit = RESULTS[number]
        budget = f", limit {limit}s" if limit else ""
        terminalreporter.write_line(
            f"criterion {number}: {'PASS' if ok else 'FAIL'} - {description} ({elapsed:.1f}s{budget})"
        )
