"""Wigner small-d rotation matrix elements and ground-state distributions.

d^j_{m',m}(theta) = <j m'| exp(-i theta J_y) |j m> is evaluated from the
alternating factorial sum

    sqrt[(j+m')!(j-m')! / ((j+m)!(j-m)!)]
        * sum_k (-1)^(k-m+m') C(j+m, k) C(j-m, j-m'-k)
                  cos(theta/2)^(2j-2k+m-m') sin(theta/2)^(2k-m+m')

At large j the terms exceed the result by tens of orders of magnitude, so the
sum is accumulated exactly: binomials are Python integers and the trig powers
are fixed-point integers carrying enough guard bits to absorb the
cancellation.  Only the final value is rounded to a float.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np

from .model import ModelParams
from .sector import FockSector
from .spectral import ground_index

PEAK_FLOOR = 1e-3


def _twice(x) -> int:
    t = 2 * x
    if abs(t - round(t)) > 1e-12:
        raise ValueError(f"{x!r} is not a half-integer")
    return int(round(t))


def _precision_bits(twice_j: int) -> int:
    # binomial products < 4**j and the prefactor < 2**j: 3j bits of cancellation
    return 3 * twice_j // 2 + 96


@lru_cache(maxsize=128)
def _trig_powers(theta: float, twice_j: int):
    bits = _precision_bits(twice_j)
    with mpmath.workprec(bits + 64):
        half = mpmath.mpf(theta) / 2
        scale = mpmath.mpf(2) ** bits
        c = int(mpmath.nint(mpmath.cos(half) * scale))
        s = int(mpmath.nint(mpmath.sin(half) * scale))
    cpow, spow = [1 << bits], [1 << bits]
    for _ in range(twice_j):
        cpow.append((cpow[-1] * c) >> bits)
        spow.append((spow[-1] * s) >> bits)
    return bits, cpow, spow


def _element(twice_j: int, tmr: int, tmc: int, theta: float) -> float:
    # integer occupations: n = j + m
    nr, nc = (twice_j + tmr) // 2, (twice_j + tmc) // 2
    jr, jc = twice_j - nr, twice_j - nc  # j - m', j - m
    diff = nr - nc  # m' - m
    bits, cpow, spow = _trig_powers(theta, twice_j)
    k_lo = max(0, -diff)
    k_hi = min(nc, jr)
    total = 0
    for k in range(k_lo, k_hi + 1):
        b = 2 * k + diff
        term = math.comb(nc, k) * math.comb(jc, jr - k) * cpow[twice_j - b] * spow[b]
        if (k + diff) % 2:
            total -= term
        else:
            total += term
    if total == 0:
        return 0.0
    num = math.factorial(nr) * math.factorial(jr)
    den = math.factorial(nc) * math.factorial(jc)
    # exact rational to float, then a single rounding in the square root
    return total / (1 << (2 * bits)) * math.sqrt(num / den)


def wigner_d(j, m_row, m_col, theta: float) -> float:
    """Single element d^j_{m_row, m_col}(theta)."""
    tj, tmr, tmc = _twice(j), _twice(m_row), _twice(m_col)
    if tj < 0:
        raise ValueError(f"j must be non-negative, got {j!r}")
    for name, tm in (("m_row", tmr), ("m_col", tmc)):
        if abs(tm) > tj or (tj - tm) % 2:
            raise ValueError(f"{name}={tm / 2} is out of range for j={tj / 2}")
    return _element(tj, tmr, tmc, float(theta))


def wigner_rows(sector: FockSector, theta: float, row_indices) -> np.ndarray:
    """Rows of the d-matrix, indexed by basis position (m = i - j)."""
    tj = sector.twice_j
    out = np.empty((len(row_indices), sector.dimension))
    for r, i in enumerate(row_indices):
        tmr = 2 * i - tj
        for c in range(sector.dimension):
            out[r, c] = _element(tj, tmr, 2 * c - tj, float(theta))
    return out


@lru_cache(maxsize=32)
def _wigner_matrix_cached(twice_j: int, theta: float) -> np.ndarray:
    d = twice_j + 1
    mat = np.empty((d, d))
    for r in range(d):
        for c in range(r, d):
            value = _element(twice_j, 2 * r - twice_j, 2 * c - twice_j, theta)
            mat[r, c] = value
            # d_{m,m'} = (-1)^(m-m') d_{m',m}
            mat[c, r] = -value if (c - r) % 2 else value
    mat.setflags(write=False)
    return mat


def wigner_matrix(sector: FockSector, theta: float) -> np.ndarray:
    """Full real orthogonal d-matrix; entry [i, k] is d_{m_i, m_k}(theta)."""
    return _wigner_matrix_cached(sector.twice_j, float(theta))


@dataclass(frozen=True, eq=False)
class DistributionResult:
    j: float
    theta: float
    m0: float
    m_values: np.ndarray
    probabilities: np.ndarray
    regime: str = ""

    def peak_count(self, floor: float = PEAK_FLOOR) -> int:
        return count_peaks(self.probabilities, floor)


def count_peaks(p: np.ndarray, floor: float = PEAK_FLOOR) -> int:
    """Strict local maxima above ``floor`` on the discrete grid."""
    p = np.asarray(p, dtype=float)
    padded = np.concatenate(([-np.inf], p, [-np.inf]))
    inner = padded[1:-1]
    is_peak = (inner > padded[:-2]) & (inner > padded[2:]) & (inner > floor)
    return int(np.count_nonzero(is_peak))


def ground_distribution(params: ModelParams, convention: str = "relative") -> DistributionResult:
    """P(m) = d_{m, m0}(theta)^2 for the ground-state index m0."""
    sector = params.sector
    m0, regime = ground_index(params, convention)
    col = sector.index(m0)
    tj = sector.twice_j
    amps = np.array(
        [_element(tj, 2 * i - tj, 2 * col - tj, float(params.theta)) for i in range(sector.dimension)]
    )
    return DistributionResult(
        j=sector.j,
        theta=params.theta,
        m0=m0,
        m_values=sector.m_values,
        probabilities=amps**2,
        regime=regime,
    )
