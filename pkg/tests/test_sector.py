import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twomode.sector import (
    FockSector,
    Monomial,
    SectorOperator,
    StateVector,
    expectation,
    m_operator,
    monomial_matrix,
    number_a,
    number_b,
)


def chain_element(twice_j, mono, m_out, m_in):
    """<m_out| a†^p b†^q a^r b^s |m_in> by applying one ladder operator at a time."""
    n_a, n_b = int(twice_j / 2 + m_in), int(twice_j / 2 - m_in)
    amp = 1.0
    for _ in range(mono.s):
        if n_b == 0:
            return 0.0
        amp *= math.sqrt(n_b)
        n_b -= 1
    for _ in range(mono.r):
        if n_a == 0:
            return 0.0
        amp *= math.sqrt(n_a)
        n_a -= 1
    for _ in range(mono.q):
        n_b += 1
        amp *= math.sqrt(n_b)
    for _ in range(mono.p):
        n_a += 1
        amp *= math.sqrt(n_a)
    return amp if (n_a - n_b) / 2 == m_out else 0.0


def test_number_operator_diagonal():
    mat = number_a(FockSector(2)).matrix
    np.testing.assert_array_equal(mat, np.diag([0.0, 1.0, 2.0]))


def test_hopping_raises_m():
    mat = monomial_matrix(FockSector(2), Monomial(1, 0, 0, 1)).matrix
    # column m=0 (index 1) -> row m=1 (index 2)
    assert mat[2, 1] == pytest.approx(math.sqrt(2), abs=1e-15)
    assert np.count_nonzero(mat[:, 1]) == 1


def test_six_operator_entry_matches_chain():
    mono = Monomial(3, 0, 1, 2)
    sector = FockSector(4)
    mat = monomial_matrix(sector, mono).matrix
    expected = chain_element(4, mono, 1, -1)
    assert expected == pytest.approx(math.sqrt(1 * 3 * 2 * 1 * 2 * 3))
    assert mat[sector.index(1), sector.index(-1)] == pytest.approx(expected, rel=1e-15)


monomials = st.tuples(*(st.integers(0, 3) for _ in range(4))).filter(lambda t: t[0] + t[1] == t[2] + t[3])


@settings(max_examples=60, deadline=None)
@given(mono=monomials, twice_j=st.integers(0, 12))
def test_every_entry_matches_chain(mono, twice_j):
    mono = Monomial(*mono)
    sector = FockSector(twice_j)
    mat = monomial_matrix(sector, mono).matrix
    expected = np.array(
        [[chain_element(twice_j, mono, mo, mi) for mi in sector.m_values] for mo in sector.m_values]
    )
    np.testing.assert_allclose(mat, expected, rtol=1e-13, atol=0)


@settings(max_examples=40, deadline=None)
@given(mono=monomials, twice_j=st.integers(0, 20))
def test_dagger_is_transpose(mono, twice_j):
    mono = Monomial(*mono)
    sector = FockSector(twice_j)
    a = monomial_matrix(sector, mono).matrix
    b = monomial_matrix(sector, mono.dagger()).matrix
    assert np.max(np.abs(a.conj().T - b), initial=0.0) <= 1e-12


def test_non_conserving_rejected():
    with pytest.raises(ValueError, match="conserve"):
        monomial_matrix(FockSector(2), Monomial(1, 0, 0, 0))


@pytest.mark.parametrize("twice_j", [0, 1, 7, 200])
def test_total_number_is_constant(twice_j):
    sector = FockSector(twice_j)
    total = number_a(sector).matrix + number_b(sector).matrix
    np.testing.assert_array_equal(total, twice_j * np.eye(sector.dimension))


@pytest.mark.parametrize("twice_j", [1, 4, 9])
def test_m_operator_diagonal(twice_j):
    sector = FockSector(twice_j)
    np.testing.assert_array_equal(m_operator(sector).matrix, np.diag(sector.m_values))


def test_large_sector_six_body_entries_finite():
    mat = monomial_matrix(FockSector(200), Monomial(3, 0, 0, 3)).matrix
    assert np.all(np.isfinite(mat))
    # n_a 0 -> 3, n_b 200 -> 197
    assert mat[3, 0] == pytest.approx(math.sqrt(200 * 199 * 198 * 6), rel=1e-15)


def test_sector_validation():
    with pytest.raises(ValueError):
        FockSector.from_j(0.3)
    with pytest.raises(ValueError):
        FockSector(2).index(2)
    assert FockSector.from_j(2.5).dimension == 6


def test_expectation_basis_state():
    sector = FockSector(2)
    assert expectation(StateVector.fock(sector, 1), m_operator(sector)) == 1.0


def test_expectation_symmetric_superposition():
    sector = FockSector(2)
    amps = np.array([1, 0, 1], dtype=complex) / math.sqrt(2)
    assert expectation(StateVector(sector, amps), m_operator(sector)) == pytest.approx(0.0, abs=1e-15)


def test_expectation_ground_state_gives_lowest_eigenvalue(rng):
    sector = FockSector(2)
    x = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    herm = x + x.conj().T
    w, v = np.linalg.eigh(herm)
    value = expectation(StateVector(sector, v[:, 0]), SectorOperator(sector, herm))
    assert value == pytest.approx(w[0], abs=1e-12)


def test_expectation_rejects_non_hermitian():
    sector = FockSector(1)
    op = SectorOperator(sector, np.array([[0, 1], [-1, 0]], dtype=complex))
    state = StateVector(sector, np.array([1, 1j]) / math.sqrt(2))
    with pytest.raises(ValueError, match="Hermitian"):
        expectation(state, op)


def test_expectation_rejects_sector_mismatch():
    with pytest.raises(ValueError, match="sector"):
        expectation(StateVector.fock(FockSector(2), 0), m_operator(FockSector(4)))
