import cmath
import math

import pytest
from hypothesis import settings

from orbitile.realization import frame246, load_catalog

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

STELLATE_CATALOG = ("246", "266", "344", "2224", "3232", "4444", "22222")


@pytest.fixture(scope="session")
def catalog():
    return load_catalog()


@pytest.fixture(scope="session")
def frame():
    return frame246()


def disc_distance(p: complex, q: complex) -> float:
    """Hyperbolic distance via the hyperboloid inner product, independent of the package code."""
    num = 2 * abs(p - q) ** 2
    den = (1 - abs(p) ** 2) * (1 - abs(q) ** 2)
    return math.acosh(1 + num / den)


def mobius(a: complex, b: complex, z: complex, reversing: bool = False) -> complex:
    if reversing:
        z = z.conjugate()
    return (a * z + b) / (b.conjugate() * z + a.conjugate())


def polar(r: float, theta: float) -> complex:
    return r * cmath.exp(1j * theta)


ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture
def acceptance(request):
    """Record one pass/fail line for an acceptance criterion; printed in the terminal summary."""
    lines = request.config.stash.setdefault(ACCEPTANCE_KEY, [])

    def record(number: int, title: str, ok: bool, detail: str) -> None:
        lines.append(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}  ({detail})")
        assert ok, f"criterion {number} failed: {detail}"

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
