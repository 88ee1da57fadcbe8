import os
import random
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from starcodim import make_A_T  # noqa: E402


@pytest.fixture(scope="session")
def A2():
    return make_A_T(2)


@pytest.fixture(scope="session")
def A3():
    return make_A_T(3)


def random_unimodular(d, rng: random.Random, steps=None):
    """Product of elementary integer row operations; determinant +-1."""
    P = [[int(i == j) for j in range(d)] for i in range(d)]
    for _ in range(steps or 2 * d):
        i, j = rng.sample(range(d), 2)
        c = rng.choice([-2, -1, 1, 2])
        for r in range(d):
            P[r][i] += c * P[r][j]
    for i in rng.sample(range(d), d // 3):
        for r in range(d):
            P[r][i] = -P[r][i]
    return P


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
