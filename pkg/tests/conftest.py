import math

import numpy as np
import pytest

SQRT10 = math.sqrt(10.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def ladder_matrices(dim):
    """Dense a and a^dag on |0>..|dim-1>, built from <n|a|m> = sqrt(m) delta_{n,m-1}."""
    a = np.zeros((dim, dim))
    for m in range(1, dim):
        a[m - 1, m] = math.sqrt(m)
    return a, a.T.copy()


ACCEPTANCE_LINES: dict[int, str] = {}


def record_criterion(number: int, passed: bool, detail: str) -> None:
    line = f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[number])
