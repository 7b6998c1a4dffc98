"""Exactly solvable two-mode Bose-Hubbard model with two- and three-body collisions."""
from .dynamics import TrajectoryResult, expand_initial, full_state_trajectory, population_trajectory
from .model import (
    CoefficientTable,
    ModelParams,
    PhysicalInputs,
    assemble_h0,
    assemble_h3,
    coefficient_table,
    physical_map,
    rotated_coefficient_table,
)
from .oracle import ValidationReport, dense_eigensolve, displacement_matrix, propagate_oracle, validate_similarity
from .sector import FockSector, Monomial, SectorOperator, StateVector, expectation, m_operator, monomial_matrix
from .spectral import SpectrumResult, eigenstate_construct, energy_levels, ground_index
from .wigner import DistributionResult, ground_distribution, wigner_d, wigner_matrix

__version__ = "0.1.0"
