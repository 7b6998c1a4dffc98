"""Brute-force reference computations.

Everything here works on explicit sector matrices (dense eigensolves and
matrix exponentials) and never calls the analytical modules, so it can be used
to check them.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import HAMILTONIAN_CONVENTION, ModelParams, assemble_h0, assemble_h3, table_discrepancy
from .sector import FockSector, Monomial, SectorOperator, StateVector, monomial_matrix

SIMILARITY_RTOL = 1e-9


@dataclass(frozen=True)
class ValidationReport:
    check_name: str
    max_abs_error: float
    tolerance: float
    passed: bool
    fitted_shift: float = 0.0
    notes: str = ""

    def to_line(self) -> str:
        notes = self.notes.replace("\t", " ").replace("\n", " ")
        return "\t".join(
            [
                self.check_name,
                f"{self.max_abs_error:.6e}",
                f"{self.tolerance:.6e}",
                "PASS" if self.passed else "FAIL",
                f"{self.fitted_shift:.17g}",
                notes,
            ]
        )

    @classmethod
    def from_line(cls, line: str) -> "ValidationReport":
        name, err, tol, status, shift, notes = line.rstrip("\n").split("\t", 5)
        if status not in ("PASS", "FAIL"):
            raise ValueError(f"bad status field {status!r}")
        return cls(name, float(err), float(tol), status == "PASS", float(shift), notes)


def make_report(check_name, max_abs_error, tolerance, fitted_shift=0.0, notes="") -> ValidationReport:
    err = float(max_abs_error)
    return ValidationReport(check_name, err, float(tolerance), err <= tolerance, float(fitted_shift), notes)


def dense_eigensolve(op: SectorOperator):
    """Ascending eigenvalues and eigenvectors (columns) of a Hermitian operator."""
    mat = op.matrix
    asym = np.max(np.abs(mat - mat.conj().T), initial=0.0)
    if asym > 1e-10:
        raise ValueError(f"operator is not Hermitian (max |A - A†| = {asym:.3e})")
    return np.linalg.eigh(mat)


def displacement_matrix(sector: FockSector, theta: float) -> SectorOperator:
    """exp(-(theta/2)(a†b - a b†)) on the sector, via eigendecomposition of the generator."""
    raise_ab = monomial_matrix(sector, Monomial(1, 0, 0, 1)).matrix
    gen = -(theta / 2) * (raise_ab - raise_ab.T)  # real antisymmetric
    # i*gen is Hermitian: gen = V (-i w) V†
    w, v = np.linalg.eigh(1j * gen)
    expm = (v * np.exp(-1j * w)) @ v.conj().T
    return SectorOperator(sector, expm.real.copy())


def similarity_residual(h3: SectorOperator, h0: SectorOperator, theta: float):
    """(max |R - c I|, c) with R = H3 - D H0 D† and c = trace(R)/dim."""
    dmat = displacement_matrix(h3.sector, theta).matrix
    resid = h3.matrix - dmat @ h0.matrix @ dmat.T
    shift = np.trace(resid).real / h3.sector.dimension
    err = np.max(np.abs(resid - shift * np.eye(h3.sector.dimension)))
    return float(err), float(shift)


def validate_similarity(params: ModelParams, convention: str = HAMILTONIAN_CONVENTION, table: str = "rotated") -> ValidationReport:
    """Check H3 = D H0 D† + c for the package Hamiltonian and the H0 of ``convention``."""
    h3 = assemble_h3(params, table=table)
    h0 = assemble_h0(params, convention=convention)
    err, shift = similarity_residual(h3, h0, params.theta)
    scale = np.max(np.abs(h3.matrix), initial=0.0)
    notes = f"convention={convention} table={table}"
    if table == "published":
        bad = sorted(k for k, v in table_discrepancy(params).items() if v != 0)
        if bad:
            notes += " literal-table-entries-off=" + ",".join(bad)
    return make_report("similarity", err, SIMILARITY_RTOL * scale, shift, notes)


def similarity_survey(params: ModelParams) -> list:
    """Similarity reports for both conventions and both tables."""
    return [
        validate_similarity(params, convention, table)
        for table in ("rotated", "published")
        for convention in ("operator", "relative")
    ]


def propagate_oracle(op: SectorOperator, psi0: StateVector, times) -> list:
    """|psi(t)> = V exp(-i w t) V† |psi0> for every t."""
    if psi0.sector != op.sector:
        raise ValueError("sector mismatch between operator and state")
    w, v = dense_eigensolve(op)
    coeffs = v.conj().T @ psi0.amplitudes
    times = np.asarray(times, dtype=float)
    phases = np.exp(-1j * np.outer(times, w))
    states = (phases * coeffs) @ v.T
    return [StateVector(op.sector, row) for row in states]
