"""Acceptance suite: one test per criterion, each recording a PASS/FAIL line."""
import math
import subprocess
import sys
import time

import numpy as np
from conftest import random_params, random_state

from twomode.config import PRESETS
from twomode.dynamics import envelope, full_state_trajectory, population_trajectory
from twomode.model import ModelParams, assemble_h3
from twomode.oracle import dense_eigensolve, propagate_oracle, validate_similarity
from twomode.sector import FockSector, StateVector, expectation, m_operator
from twomode.spectral import energy_levels
from twomode.wigner import _wigner_matrix_cached, ground_distribution, wigner_matrix


def test_1_similarity(record, rng):
    start = time.perf_counter()
    verdicts = {"operator": [], "relative": []}
    for _ in range(50):
        p = random_params(rng, int(rng.integers(0, 21)) / 2)
        for convention in verdicts:
            verdicts[convention].append(validate_similarity(p, convention=convention).passed)
    elapsed = time.perf_counter() - start
    consistent = [c for c, v in verdicts.items() if all(v)]
    passed = bool(consistent) and elapsed < 10
    record("1 similarity", passed, f"all-pass conventions={consistent} "
           f"operator={sum(verdicts['operator'])}/50 relative={sum(verdicts['relative'])}/50 {elapsed:.2f}s")
    assert passed


def test_2_spectrum(record, rng):
    start = time.perf_counter()
    worst = 0.0
    for j in (2, 5, 10, 20):
        for _ in range(20):
            p = random_params(rng, j)
            w, _ = dense_eigensolve(assemble_h3(p))
            e = np.sort(energy_levels(p, "operator"))
            shift = np.mean(w - e)
            worst = max(worst, np.max(np.abs(w - e - shift)) / np.max(np.abs(w)))
    elapsed = time.perf_counter() - start
    passed = worst <= 1e-9 and elapsed < 30
    record("2 spectrum", passed, f"max rel dev {worst:.2e} {elapsed:.2f}s")
    assert passed


def test_3_ground_figure(record):
    start = time.perf_counter()
    a = ground_distribution(ModelParams(100, 1, 0, 0.25, 100))
    b = ground_distribution(ModelParams(100, 1, 0.0035, 0.25, 100))
    elapsed = time.perf_counter() - start
    norm_err = max(abs(a.probabilities.sum() - 1), abs(b.probabilities.sum() - 1))
    passed = (
        a.m0 == -50 and a.peak_count() >= 3
        and b.m0 == -100 and b.peak_count() == 1
        and norm_err <= 1e-9 and elapsed < 5
    )
    record("3 ground-figure", passed, f"(a) m0={a.m0} peaks={a.peak_count()} "
           f"(b) m0={b.m0} peaks={b.peak_count()} norm err {norm_err:.1e} {elapsed:.2f}s")
    assert passed


def test_4_wigner_stability(record):
    _wigner_matrix_cached.cache_clear()
    sector = FockSector.from_j(100)
    start = time.perf_counter()
    worst = 0.0
    for theta in (0.25, 1.0, math.pi / 2):
        d = wigner_matrix(sector, theta)
        worst = max(worst, np.max(np.abs(d @ d.T - np.eye(sector.dimension))))
    elapsed = time.perf_counter() - start
    passed = worst <= 1e-10 and elapsed < 20
    record("4 wigner-stability", passed, f"max |D D^T - I| {worst:.2e} {elapsed:.2f}s")
    assert passed


def test_5_dynamics_equivalence(record, rng):
    start = time.perf_counter()
    times = np.linspace(0, 5, 2000)
    worst = 0.0
    n_cubic = 0
    for _ in range(20):
        p = random_params(rng, 20)
        n_cubic += p.a3 != 0
        psi = random_state(rng, p.sector)
        got = population_trajectory(p, psi, times).values
        mop = m_operator(p.sector)
        ref = np.array([expectation(s, mop) for s in propagate_oracle(assemble_h3(p), psi, times)])
        worst = max(worst, np.max(np.abs(got - ref)))
    elapsed = time.perf_counter() - start
    passed = worst <= 1e-8 and n_cubic > 0 and elapsed < 60
    record("5 dynamics-equivalence", passed, f"max abs dev {worst:.2e} a3!=0 in {n_cubic}/20 {elapsed:.2f}s")
    assert passed


def test_6_collapse_revival(record):
    start = time.perf_counter()
    t_rev = math.pi  # pi / a2
    times = np.linspace(0, 1.2 * t_rev, 2000)
    width = t_rev / 50
    base = ModelParams(100, 1, 0, 0.2, 100)
    psi0 = StateVector.fock(base.sector, 100)
    revival = {}
    initial = None
    for a3 in (0.0, 1 / 400, 1 / 200, 1 / 100):
        x = population_trajectory(base.replace(a3=a3), psi0, times).values
        revival[a3] = envelope(times, x, t_rev, width)
        if a3 == 0.0:
            initial = envelope(times, x, 0.0, width)
    elapsed = time.perf_counter() - start
    amps = list(revival.values())
    ok_a = revival[0.0] >= 0.9 * initial
    ok_b = revival[1 / 100] <= 0.5 * revival[0.0]
    ok_c = all(later <= 1.05 * earlier for earlier, later in zip(amps, amps[1:]))
    passed = ok_a and ok_b and ok_c and elapsed < 120
    record("6 collapse-revival", passed, f"initial {initial:.3f} revival "
           + " ".join(f"{v:.3f}" for v in amps) + f" (a){ok_a} (b){ok_b} (c){ok_c} {elapsed:.2f}s")
    assert passed


def test_7_conservation(record, rng):
    norm_worst = energy_worst = 0.0
    cases = [(random_params(rng, j), None) for j in (0.5, 3, 10, 20) for _ in range(5)]
    cases += [(ModelParams(100, 1, a3, 0.2, 100), 100) for a3 in (0.0, 0.01)]
    for p, fock_m in cases:
        psi = StateVector.fock(p.sector, fock_m) if fock_m is not None else random_state(rng, p.sector)
        h = assemble_h3(p)
        w = np.linalg.eigvalsh(h.matrix)
        scale = max(abs(w[0]), abs(w[-1]))
        e0 = expectation(psi, h)
        for s in full_state_trajectory(p, psi, np.linspace(0, 2 * math.pi, 200)):
            norm_worst = max(norm_worst, abs(s.norm - 1))
            energy_worst = max(energy_worst, abs(expectation(s, h) - e0) / scale)
    passed = norm_worst <= 1e-9 and energy_worst <= 1e-8
    record("7 conservation", passed, f"norm dev {norm_worst:.1e} energy rel dev {energy_worst:.1e}")
    assert passed


def test_8_determinism(record, tmp_path):
    mismatched = []
    for preset in sorted(PRESETS):
        outputs = []
        for run in range(2):
            out = tmp_path / f"{preset}-{run}.csv"
            subprocess.run(
                [sys.executable, "-m", "twomode", "preset", "--preset", preset, "--out", str(out)],
                check=True,
            )
            outputs.append(out.read_bytes())
        if outputs[0] != outputs[1]:
            mismatched.append(preset)
    passed = not mismatched
    record("8 determinism", passed, f"{len(PRESETS)} presets, mismatched={mismatched}")
    assert passed
