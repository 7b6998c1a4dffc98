"""Two-mode Hamiltonian with one-, two- and three-body terms.

The solvable family is parametrised by tunnelling strengths ``a1, a2, a3`` and
the tunnelling phase ``theta``.  Its Hamiltonian is the rotation of the diagonal
polynomial ``a1*x + a2*x**2 + a3*x**3`` in a number-difference variable ``x``.
Two readings of ``x`` are supported:

``"operator"``
    ``x = a†a - b†b = 2m``.  This is what the coefficient table encodes when
    fed the raw amplitudes, so it is the default for :func:`assemble_h3` and
    everything that must agree with it (dynamics, similarity checks).
``"relative"``
    ``x = m = (a†a - b†b)/2``, spectrum ``a1*m + a2*m**2 + a3*m**3``.
    Equivalent to ``"operator"`` with ``a_k -> a_k / 2**k``.  Ground-state
    selection uses this reading by default.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, fields

import numpy as np

from .sector import FockSector, Monomial, SectorOperator, monomial_matrix

CONVENTIONS = ("relative", "operator")
HAMILTONIAN_CONVENTION = "operator"
TABLES = ("rotated", "published")


@dataclass(frozen=True)
class ModelParams:
    a1: float
    a2: float
    a3: float
    theta: float
    j: float

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "theta", "j"):
            value = getattr(self, name)
            if not isinstance(value, (int, float, np.integer, np.floating)) or isinstance(value, bool):
                raise TypeError(f"{name} must be a real number, got {value!r}")
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
        if not 0.0 <= self.theta < 2 * math.pi:
            raise ValueError(f"theta must lie in [0, 2*pi), got {self.theta!r}")
        # validates j >= 0 and 2j integral
        FockSector.from_j(self.j)

    @property
    def sector(self) -> FockSector:
        return FockSector.from_j(self.j)

    def replace(self, **changes) -> "ModelParams":
        values = {f.name: getattr(self, f.name) for f in fields(self)}
        values.update(changes)
        return ModelParams(**values)


@dataclass(frozen=True)
class CoefficientTable:
    lambda_aa: float
    lambda_bb: float
    lambda_ab: float
    u2_aaaa: float
    u2_bbbb: float
    u2_abab: float
    u2_aaab: float
    u2_bbab: float
    u2_aabb: float
    u3_aaaaaa: float
    u3_bbbbbb: float
    u3_aabaab: float
    u3_abbabb: float
    u3_aaaaab: float
    u3_bbbabb: float
    u3_aaaabb: float
    u3_bbbaab: float
    u3_aababb: float
    u3_aaabbb: float

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass(frozen=True)
class PhysicalInputs:
    e1: float
    e2: float
    u2: float
    u3: float


# Each coefficient multiplies one normal-ordered monomial; the flag marks
# terms that come with their Hermitian conjugate.
TERMS = {
    "lambda_aa": (Monomial(1, 0, 1, 0), False),
    "lambda_bb": (Monomial(0, 1, 0, 1), False),
    "lambda_ab": (Monomial(1, 0, 0, 1), True),
    "u2_aaaa": (Monomial(2, 0, 2, 0), False),
    "u2_bbbb": (Monomial(0, 2, 0, 2), False),
    "u2_abab": (Monomial(1, 1, 1, 1), False),
    "u2_aaab": (Monomial(2, 0, 1, 1), True),
    "u2_bbab": (Monomial(0, 2, 1, 1), True),
    "u2_aabb": (Monomial(2, 0, 0, 2), True),
    "u3_aaaaaa": (Monomial(3, 0, 3, 0), False),
    "u3_bbbbbb": (Monomial(0, 3, 0, 3), False),
    "u3_aabaab": (Monomial(2, 1, 2, 1), False),
    "u3_abbabb": (Monomial(1, 2, 1, 2), False),
    "u3_aaaaab": (Monomial(3, 0, 2, 1), True),
    "u3_bbbabb": (Monomial(0, 3, 1, 2), True),
    "u3_aaaabb": (Monomial(3, 0, 1, 2), True),
    "u3_bbbaab": (Monomial(0, 3, 2, 1), True),
    "u3_aababb": (Monomial(2, 1, 1, 2), True),
    "u3_aaabbb": (Monomial(3, 0, 0, 3), True),
}


def coefficient_table(params: ModelParams) -> CoefficientTable:
    """Coefficients as published, evaluated at the raw ``(a1, a2, a3, theta)``.

    Three of the three-body entries (``u3_aabaab``, ``u3_abbabb``,
    ``u3_aababb``) do not reproduce the rotated diagonal Hamiltonian; use
    :func:`rotated_coefficient_table` for the consistent set.
    """
    a1, a2, a3 = params.a1, params.a2, params.a3
    c, s = math.cos(params.theta), math.sin(params.theta)
    return CoefficientTable(
        lambda_aa=a2 + (a3 + a1) * c,
        lambda_bb=a2 - (a3 + a1) * c,
        lambda_ab=(a1 + a3) * s,
        u2_aaaa=(a2 * c + 3 * a3) * c,
        u2_bbbb=(a2 * c - 3 * a3) * c,
        u2_abab=2 * a2 * (s**2 - c**2),
        u2_aaab=(3 * a3 + 2 * a2 * c) * s,
        u2_bbab=(3 * a3 - 2 * a2 * c) * s,
        u2_aabb=a2 * s**2,
        u3_aaaaaa=a3 * c**3,
        u3_bbbbbb=-a3 * c**3,
        u3_aabaab=a3 * (2 * c * s**2 - c**3),
        u3_abbabb=-a3 * (2 * c * s**2 - c**3),
        u3_aaaaab=3 * a3 * c**2 * s,
        u3_bbbabb=3 * a3 * c**2 * s,
        u3_aaaabb=3 * a3 * c * s**2,
        u3_bbbaab=-3 * a3 * c * s**2,
        u3_aababb=3 * a3 * (s**3 - c**2 * s),
        u3_aaabbb=a3 * s**3,
    )


def rotated_coefficient_table(params: ModelParams) -> CoefficientTable:
    """Normal-ordered coefficients of D (a1 x + a2 x^2 + a3 x^3) D†, x = a†a - b†b.

    Obtained by substituting the rotated mode operators and normal ordering.
    Agrees with :func:`coefficient_table` except in three entries.
    """
    table = coefficient_table(params)
    a3 = params.a3
    c, s = math.cos(params.theta), math.sin(params.theta)
    return _replace_table(
        table,
        u3_aabaab=3 * a3 * (2 * c * s**2 - c**3),
        u3_abbabb=-3 * a3 * (2 * c * s**2 - c**3),
        u3_aababb=3 * a3 * (s**3 - 2 * c**2 * s),
    )


def _replace_table(table: CoefficientTable, **changes) -> CoefficientTable:
    values = table.as_dict()
    values.update(changes)
    return CoefficientTable(**values)


def table_discrepancy(params: ModelParams) -> dict:
    """Entries where the published table differs from the rotated one."""
    pub = coefficient_table(params).as_dict()
    rot = rotated_coefficient_table(params).as_dict()
    return {k: pub[k] - rot[k] for k in pub if pub[k] != rot[k]}


def operator_amplitudes(params: ModelParams, convention: str = "relative") -> tuple:
    """Amplitudes multiplying powers of (a†a - b†b) for the given convention."""
    if convention == "relative":
        return params.a1 / 2, params.a2 / 4, params.a3 / 8
    if convention == "operator":
        return params.a1, params.a2, params.a3
    raise ValueError(f"unknown convention {convention!r}; expected one of {CONVENTIONS}")


def model_table(params: ModelParams, table: str = "rotated", convention: str = HAMILTONIAN_CONVENTION) -> CoefficientTable:
    """Coefficient table fed with the amplitudes of ``convention``."""
    a1, a2, a3 = operator_amplitudes(params, convention)
    scaled = params.replace(a1=a1, a2=a2, a3=a3)
    if table == "rotated":
        return rotated_coefficient_table(scaled)
    if table == "published":
        return coefficient_table(scaled)
    raise ValueError(f"unknown table {table!r}; expected one of {TABLES}")


def assemble_from_table(sector: FockSector, table: CoefficientTable) -> SectorOperator:
    d = sector.dimension
    mat = np.zeros((d, d))
    for name, (mono, with_hc) in TERMS.items():
        coef = getattr(table, name)
        if coef == 0.0:
            continue
        term = monomial_matrix(sector, mono).matrix
        mat += coef * term
        if with_hc:
            mat += coef * monomial_matrix(sector, mono.dagger()).matrix
    return SectorOperator(sector, mat)


def assemble_h3(params: ModelParams, table: str = "rotated", convention: str = HAMILTONIAN_CONVENTION) -> SectorOperator:
    """Full Hamiltonian on the sector of ``params``.

    With the defaults its spectrum is ``energy_levels(params, "operator")``,
    i.e. ``a1*(2m) + a2*(2m)**2 + a3*(2m)**3``, up to a constant shift.
    """
    return assemble_from_table(params.sector, model_table(params, table, convention))


def assemble_h0(params: ModelParams, convention: str = "operator") -> SectorOperator:
    """Diagonal Hamiltonian a1 x + a2 x^2 + a3 x^3.

    The default ``"operator"`` convention takes ``x = a†a - b†b`` (eigenvalue 2m).
    """
    a1, a2, a3 = operator_amplitudes(params, convention)
    x = 2 * params.sector.m_values
    return SectorOperator(params.sector, np.diag(a1 * x + a2 * x**2 + a3 * x**3))


def physical_map(inputs: PhysicalInputs) -> tuple:
    """Tunnelling strengths (a1, a2, a3) from trap energies and on-site integrals."""
    return (inputs.e1 - inputs.e2) / 2, inputs.u2 / 2, inputs.u3 / 2
