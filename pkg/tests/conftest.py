import re

import mpmath as mp
import pytest

from mlradii import MLParams

SIN = MLParams(2, 2, 1)  # g(z) = sin z
COS = MLParams(2, 1, 1)  # g(z) = z cos z
P311 = MLParams(3, 1, 1)
P3_15_2 = MLParams(3, 1.5, 2)


def mp_phi(omega, beta, gamma, x, order=0, dps=50):
    """Reference sum of the order-th derivative at x, in mpmath."""
    with mp.workdps(dps):
        om, be, ga, x = mp.mpf(omega), mp.mpf(beta), mp.mpf(gamma), mp.mpf(x)
        total, k, small = mp.mpf(0), order, 0
        while small < 3:
            t = mp.rf(ga, k) / (mp.factorial(k - order) * mp.gamma(om * k + be)) * x ** (k - order)
            total += t
            small = small + 1 if abs(t) < mp.mpf(10) ** (-dps + 5) * (abs(total) + mp.mpf(10) ** -40) else 0
            k += 1
        return total


@pytest.fixture(autouse=True)
def _mp_precision():
    with mp.workdps(30):
        yield


ACCEPTANCE_LINES = []


def _criterion_key(line):
    m = re.match(r"criterion (\d+)(\w?)", line)
    return int(m.group(1)), m.group(2)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=_criterion_key):
            terminalreporter.write_line(line)
