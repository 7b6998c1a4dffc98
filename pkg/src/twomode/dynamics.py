"""Relative-population dynamics from the eigenbasis expansion.

Energies follow the Hamiltonian built by :func:`twomode.model.assemble_h3`
(``"operator"`` reading by default), so the closed forms here agree with
direct propagation of that matrix.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import HAMILTONIAN_CONVENTION, ModelParams
from .sector import StateVector
from .spectral import energy_levels
from .wigner import wigner_matrix, wigner_rows

# Expansion uses selected d-matrix rows when psi0 has at most this many nonzero amplitudes
_SPARSE_ROWS = 8


@dataclass(frozen=True, eq=False)
class TrajectoryResult:
    times: np.ndarray
    values: np.ndarray
    params: ModelParams
    initial_label: str = ""


def _check_state(params: ModelParams, psi0: StateVector):
    if psi0.sector != params.sector:
        raise ValueError(f"state sector j={psi0.sector.j} does not match model j={params.sector.j}")


def expand_initial(params: ModelParams, psi0: StateVector) -> np.ndarray:
    """Coefficients C_m of psi0 in the eigenbasis D|j, m>."""
    _check_state(params, psi0)
    amps = np.asarray(psi0.amplitudes, dtype=complex)
    nonzero = np.flatnonzero(amps)
    if len(nonzero) <= _SPARSE_ROWS:
        rows = wigner_rows(params.sector, params.theta, list(nonzero))
        return amps[nonzero] @ rows
    # D is real orthogonal, so D† psi0 = D^T psi0
    return wigner_matrix(params.sector, params.theta).T @ amps


def population_trajectory(
    params: ModelParams,
    psi0: StateVector,
    times,
    initial_label: str = "",
    convention: str = HAMILTONIAN_CONVENTION,
) -> TrajectoryResult:
    """<m>(t) evaluated in closed form from the eigenbasis coefficients."""
    times = np.asarray(times, dtype=float)
    coeffs = expand_initial(params, psi0)
    sector = params.sector
    m = sector.m_values
    j = sector.j
    energies = energy_levels(params, convention)

    diagonal = float(np.sum(m * np.abs(coeffs) ** 2))
    # pairs (m-1, m) for m = -j+1 .. j
    mu = m[1:]
    ladder = np.sqrt(j * (j + 1) - mu * (mu - 1))
    pair = np.conj(coeffs[1:]) * coeffs[:-1]
    freq = energies[1:] - energies[:-1]
    phase = np.outer(times, freq)
    jx = (np.cos(phase) * (ladder * pair.real) - np.sin(phase) * (ladder * pair.imag)).sum(axis=1)

    values = math.cos(params.theta) * diagonal - math.sin(params.theta) * jx
    return TrajectoryResult(times=times, values=values, params=params, initial_label=initial_label)


def full_state_trajectory(params: ModelParams, psi0: StateVector, times, convention: str = HAMILTONIAN_CONVENTION) -> list:
    """|psi(t)> = sum_m C_m exp(-i E_m t) D|j, m> at each requested time."""
    times = np.asarray(times, dtype=float)
    coeffs = expand_initial(params, psi0)
    energies = energy_levels(params, convention)
    dmat = wigner_matrix(params.sector, params.theta)
    evolved = np.exp(-1j * np.outer(times, energies)) * coeffs
    states = evolved @ dmat.T
    return [StateVector(params.sector, row) for row in states]


def envelope(times, values, center: float, width: float) -> float:
    """Max |x - mean(x)| over a window of ``width`` around ``center``.

    The window is shifted, not truncated, where it would leave the sampled range.
    """
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    start = min(max(center - width / 2, times[0]), times[-1] - width)
    sel = (times >= start) & (times <= start + width)
    window = values[sel]
    if window.size == 0:
        raise ValueError("envelope window contains no samples")
    return float(np.max(np.abs(window - window.mean())))


def revival_time(params: ModelParams, convention: str = HAMILTONIAN_CONVENTION) -> float:
    """First revival of a quadratic spectrum, pi/a2_eff.

    Adjacent-level frequencies are odd multiples of a2_eff (a2 for the
    relative reading, 4*a2 for the operator reading), so at pi/a2_eff every
    phase is an odd multiple of pi. The oscillation amplitude is fully
    restored there; the state itself returns at twice this time. pi/a2 is a
    revival under both readings.
    """
    if params.a2 == 0:
        raise ValueError("revival time is undefined for a2 = 0")
    scale = 4 if convention == "operator" else 1
    return math.pi / abs(scale * params.a2)


def default_t_max(params: ModelParams) -> float:
    if params.a2 == 0:
        raise ValueError("a2 = 0: give t_max explicitly")
    return 1.2 * math.pi / abs(params.a2)


def default_times(params: ModelParams, t_max: float | None = None, n_samples: int = 2000) -> np.ndarray:
    if t_max is None:
        t_max = default_t_max(params)
    return np.linspace(0.0, t_max, n_samples)
