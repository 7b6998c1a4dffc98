import numpy as np
import pytest
from scipy.linalg import expm

from twomode.sector import FockSector, Monomial, monomial_matrix

_ACCEPTANCE = {}


@pytest.fixture
def record():
    """Record a pass/fail verdict for an acceptance criterion."""

    def _record(criterion: str, passed: bool, detail: str = ""):
        _ACCEPTANCE[criterion] = (bool(passed), detail)
        return passed

    return _record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE, key=lambda s: (len(s.split()[0]), s)):
        passed, detail = _ACCEPTANCE[name]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}  {detail}")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def generator_expm(sector: FockSector, theta: float) -> np.ndarray:
    """exp(-(theta/2)(a†b - ab†)) by scipy's scaling-and-squaring."""
    up = monomial_matrix(sector, Monomial(1, 0, 0, 1)).matrix
    return expm(-(theta / 2) * (up - up.T))


def random_params(rng, j, a3_scale=0.5):
    from twomode.model import ModelParams

    return ModelParams(
        a1=float(rng.uniform(-5, 5)),
        a2=float(rng.uniform(-2, 2)),
        a3=float(rng.uniform(-a3_scale, a3_scale)),
        theta=float(rng.uniform(0, 2 * np.pi)),
        j=j,
    )


def random_state(rng, sector):
    from twomode.sector import StateVector

    amps = rng.normal(size=sector.dimension) + 1j * rng.normal(size=sector.dimension)
    return StateVector(sector, amps / np.linalg.norm(amps))
