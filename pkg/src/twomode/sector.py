"""Fixed-particle-number Fock sector of two bosonic modes.

Basis states are |j, m> with n_a = j + m and n_b = j - m, stored in order of
increasing m.  Column/row index ``i`` corresponds to ``m = i - j``, which is
also the occupation of mode a.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

HERMITIAN_ATOL = 1e-12
IMAG_ATOL = 1e-10


@dataclass(frozen=True)
class FockSector:
    """Sector of total particle number ``twice_j``."""

    twice_j: int

    def __post_init__(self):
        if int(self.twice_j) != self.twice_j or self.twice_j < 0:
            raise ValueError(f"twice_j must be a non-negative integer, got {self.twice_j!r}")

    @classmethod
    def from_j(cls, j) -> "FockSector":
        tj = 2 * j
        if abs(tj - round(tj)) > 1e-12:
            raise ValueError(f"j must be a non-negative half-integer, got {j!r}")
        return cls(int(round(tj)))

    @property
    def j(self) -> float:
        return self.twice_j / 2

    @property
    def dimension(self) -> int:
        return self.twice_j + 1

    @property
    def m_values(self) -> np.ndarray:
        return np.arange(self.dimension) - self.j

    def index(self, m) -> int:
        i = m + self.j
        if abs(i - round(i)) > 1e-12 or not 0 <= round(i) <= self.twice_j:
            raise ValueError(f"m={m!r} is not in the sector j={self.j}")
        return int(round(i))


@dataclass(frozen=True)
class Monomial:
    """Normal-ordered product a†^p b†^q a^r b^s."""

    p: int
    q: int
    r: int
    s: int

    @property
    def conserving(self) -> bool:
        return self.p + self.q == self.r + self.s

    def dagger(self) -> "Monomial":
        return Monomial(self.r, self.s, self.p, self.q)

    def __str__(self):
        parts = ["a†"] * self.p + ["b†"] * self.q + ["a"] * self.r + ["b"] * self.s
        return "".join(parts) or "1"


@dataclass(frozen=True, eq=False)
class SectorOperator:
    sector: FockSector
    matrix: np.ndarray

    def __post_init__(self):
        d = self.sector.dimension
        if self.matrix.shape != (d, d):
            raise ValueError(f"matrix shape {self.matrix.shape} does not match sector dimension {d}")

    def __add__(self, other: "SectorOperator") -> "SectorOperator":
        _check_same_sector(self.sector, other.sector)
        return SectorOperator(self.sector, self.matrix + other.matrix)

    def __sub__(self, other: "SectorOperator") -> "SectorOperator":
        _check_same_sector(self.sector, other.sector)
        return SectorOperator(self.sector, self.matrix - other.matrix)

    def __mul__(self, scalar) -> "SectorOperator":
        return SectorOperator(self.sector, scalar * self.matrix)

    __rmul__ = __mul__

    def dagger(self) -> "SectorOperator":
        return SectorOperator(self.sector, self.matrix.conj().T)

    def is_hermitian(self, atol=HERMITIAN_ATOL) -> bool:
        return bool(np.max(np.abs(self.matrix - self.matrix.conj().T), initial=0.0) <= atol)


@dataclass(frozen=True, eq=False)
class StateVector:
    sector: FockSector
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.amplitudes.shape != (self.sector.dimension,):
            raise ValueError(
                f"amplitude vector of shape {self.amplitudes.shape} does not match "
                f"sector dimension {self.sector.dimension}"
            )

    @classmethod
    def fock(cls, sector: FockSector, m) -> "StateVector":
        amps = np.zeros(sector.dimension, dtype=complex)
        amps[sector.index(m)] = 1.0
        return cls(sector, amps)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


def _check_same_sector(a: FockSector, b: FockSector):
    if a != b:
        raise ValueError(f"sector mismatch: j={a.j} vs j={b.j}")


def _ladder_weight(n_a: int, n_b: int, mono: Monomial) -> int:
    # squared matrix element, exact in integers
    ka, kb = n_a - mono.r, n_b - mono.s
    return (
        math.perm(n_a, mono.r)
        * math.perm(n_b, mono.s)
        * math.perm(ka + mono.p, mono.p)
        * math.perm(kb + mono.q, mono.q)
    )


def _sqrt_int(n: int) -> float:
    try:
        return math.sqrt(n)
    except OverflowError:
        return math.exp(0.5 * math.log(n))


def monomial_matrix(sector: FockSector, mono: Monomial) -> SectorOperator:
    """Matrix of a†^p b†^q a^r b^s on ``sector``."""
    if not mono.conserving:
        raise ValueError(
            f"monomial {mono} does not conserve particle number "
            f"(creates {mono.p + mono.q}, annihilates {mono.r + mono.s})"
        )
    d = sector.dimension
    mat = np.zeros((d, d))
    shift = mono.p - mono.r
    for i in range(d):
        n_a, n_b = i, sector.twice_j - i
        if n_a < mono.r or n_b < mono.s:
            continue
        mat[i + shift, i] = _sqrt_int(_ladder_weight(n_a, n_b, mono))
    return SectorOperator(sector, mat)


def number_a(sector: FockSector) -> SectorOperator:
    return monomial_matrix(sector, Monomial(1, 0, 1, 0))


def number_b(sector: FockSector) -> SectorOperator:
    return monomial_matrix(sector, Monomial(0, 1, 0, 1))


def m_operator(sector: FockSector) -> SectorOperator:
    """Relative population (a†a - b†b)/2."""
    return 0.5 * (number_a(sector) - number_b(sector))


def total_number(sector: FockSector) -> SectorOperator:
    return number_a(sector) + number_b(sector)


def expectation(state: StateVector, op: SectorOperator) -> float:
    """<state|op|state> for a Hermitian ``op``; raises if the result is not real."""
    _check_same_sector(state.sector, op.sector)
    psi = state.amplitudes
    value = np.vdot(psi, op.matrix @ psi)
    if abs(value.imag) > IMAG_ATOL:
        raise ValueError(
            f"expectation value has imaginary part {value.imag:.3e}; operator is not Hermitian"
        )
    return float(value.real)
