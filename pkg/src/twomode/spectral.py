"""Analytical spectrum, ground-state selection and eigenstates."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .model import ModelParams, operator_amplitudes
from .sector import StateVector

log = logging.getLogger(__name__)

LOCAL_MINIMUM = "local-minimum"
EXTREME_POINT = "extreme-point"
DEGENERATE = "degenerate"


@dataclass(frozen=True, eq=False)
class SpectrumResult:
    m_values: np.ndarray
    energies: np.ndarray
    ground_m: float
    regime: str
    discriminant: float


def _energy(params: ModelParams, m, convention):
    a1, a2, a3 = operator_amplitudes(params, convention)
    x = 2 * np.asarray(m, dtype=float)
    return a1 * x + a2 * x**2 + a3 * x**3


def energy_levels(params: ModelParams, convention: str = "relative") -> np.ndarray:
    """E_m over m = -j..j.

    The default is a1*m + a2*m**2 + a3*m**3.  The spectrum of ``assemble_h3``
    (up to a shift) is ``energy_levels(params, "operator")``.
    """
    return _energy(params, params.sector.m_values, convention)


def m_coefficients(params: ModelParams, convention: str = "relative") -> tuple:
    """(c1, c2, c3) with E_m = c1*m + c2*m**2 + c3*m**3."""
    a1, a2, a3 = operator_amplitudes(params, convention)
    return 2 * a1, 4 * a2, 8 * a3


def discriminant(params: ModelParams) -> float:
    """3*a1*a3/a2**2; above 1 the cubic has no real stationary point.

    Invariant under the operator/relative rescaling.
    """
    if params.a2 == 0:
        return math.copysign(math.inf, params.a1 * params.a3) if params.a1 * params.a3 else 0.0
    return 3 * params.a1 * params.a3 / params.a2**2


def stationary_points(params: ModelParams, convention: str = "relative") -> list:
    """Real roots of dE/dm = c1 + 2 c2 m + 3 c3 m^2 that are local minima."""
    a1, a2, a3 = m_coefficients(params, convention)
    if a3 == 0:
        if a2 > 0:
            return [-a1 / (2 * a2)]
        return []
    disc = a2**2 - 3 * a1 * a3
    if disc < 0:
        return []
    # cancellation-free quadratic roots; tiny a3 pushes one of them to +-inf
    q = -(a2 + math.copysign(math.sqrt(disc), a2))
    candidates = [q / (3 * a3), a1 / q] if q != 0 else [0.0]
    return [m for m in candidates if math.isfinite(m) and 2 * a2 + 6 * a3 * m > 0]


def ground_index(params: ModelParams, convention: str = "relative") -> tuple:
    """(m0, regime) minimising E_m over the sector.

    Candidates are the grid neighbours of every interior local minimum
    (clamped to the sector) plus both endpoints.  Exact ties go to the more
    negative m.
    """
    sector = params.sector
    j = sector.j
    if params.a1 == params.a2 == params.a3 == 0:
        return -j, DEGENERATE

    stationary = stationary_points(params, convention)
    interior = set()
    for m0 in stationary:
        # neighbours on the grid m = -j, -j+1, ..., j
        lo = math.floor(min(max(m0, -j - 1), j + 1) + j) - j
        for m in (lo, lo + 1):
            interior.add(min(max(m, -j), j))
    candidates = sorted(interior | {-j, j})
    energies = _energy(params, candidates, convention)
    best = min(range(len(candidates)), key=lambda i: (energies[i], candidates[i]))
    ground_m = candidates[best]

    if any(abs(ground_m - m0) < 1 for m0 in stationary if -j <= m0 <= j):
        regime = LOCAL_MINIMUM
    else:
        regime = EXTREME_POINT
        if params.a3 != 0 and ground_m != -j * math.copysign(1, params.a3):
            log.info("extreme-point ground state at m=%s, not at -j*sign(a3)", ground_m)
    return _as_m(ground_m), regime


def _as_m(m):
    return int(m) if float(m).is_integer() else float(m)


def spectrum(params: ModelParams, convention: str = "relative") -> SpectrumResult:
    m0, regime = ground_index(params, convention)
    return SpectrumResult(
        m_values=params.sector.m_values,
        energies=energy_levels(params, convention),
        ground_m=m0,
        regime=regime,
        discriminant=discriminant(params),
    )


def eigenstate_construct(params: ModelParams, m) -> StateVector:
    """|E_m> = D(theta)|j, m>; amplitudes are the d-matrix column m."""
    from .wigner import wigner_d

    sector = params.sector
    sector.index(m)
    amps = np.array([wigner_d(sector.j, mp, m, params.theta) for mp in sector.m_values], dtype=complex)
    return StateVector(sector, amps)
