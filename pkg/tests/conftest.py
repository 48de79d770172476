import math

import numpy as np
import pytest
from hypothesis import strategies as st

from woundpoly.curve import construct_cnk
from woundpoly.sampling import random_curve

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def record():
    def _record(criterion: str, ok: bool, detail: str):
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}")
    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def c52():
    return construct_cnk(5, 2)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@st.composite
def curves(draw, k_max=5):
    """Random valid curves: k in [1, k_max], n in [2k+1, 6k]."""
    k = draw(st.integers(1, k_max))
    n = draw(st.integers(2 * k + 1, 6 * k))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_curve(np.random.default_rng(seed), k, n)


def cart(phi, rho):
    return np.array([rho * math.cos(phi), rho * math.sin(phi)])
