"""Command-line front end.

    twomode <command> [--config PATH] [--out PATH] [--a1 X --a2 X --a3 X --theta X --j N] [--preset ID]

Exit codes: 0 success, 1 usage/config error, 2 computation error, 3 validation failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import dynamics, oracle, spectral, wigner
from .config import COMMANDS, PRESETS, ConfigError, RunConfig, build_config, load_document
from .model import HAMILTONIAN_CONVENTION, ModelParams, assemble_h3
from .sector import StateVector, expectation, m_operator

log = logging.getLogger("twomode")

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE, EXIT_VALIDATION = 0, 1, 2, 3

VALIDATE_DYNAMICS_TOL = 1e-8
VALIDATE_SPECTRUM_RTOL = 1e-9
VALIDATE_WIGNER_TOL = 1e-9


def fmt(x) -> str:
    return f"{float(x):.16e}"


def fmt_m(m) -> str:
    m = float(m)
    return str(int(m)) if m.is_integer() else repr(m)


def initial_state(config: RunConfig, params: ModelParams) -> StateVector:
    spec = config.initial_state
    sector = params.sector
    if spec == "all-in-a":
        return StateVector.fock(sector, sector.j)
    if spec == "all-in-b":
        return StateVector.fock(sector, -sector.j)
    m = float(spec[spec.index("(") + 1 : -1])
    if spec.startswith("fock"):
        return StateVector.fock(sector, m)
    return spectral.eigenstate_construct(params, m)


# --- commands --------------------------------------------------------------


def table_csv(m_values, values) -> str:
    lines = ["m,value"]
    lines += [f"{fmt_m(m)},{fmt(v)}" for m, v in zip(m_values, values)]
    return "\n".join(lines) + "\n"


def run_spectrum(config: RunConfig):
    result = spectral.spectrum(config.params)
    meta = {"ground_m": result.ground_m, "regime": result.regime, "discriminant": result.discriminant}
    return table_csv(result.m_values, result.energies), meta


def run_ground(config: RunConfig):
    dist = wigner.ground_distribution(config.params)
    meta = {
        "ground_m": dist.m0,
        "regime": dist.regime,
        "peaks": dist.peak_count(),
        "normalization": float(dist.probabilities.sum()),
    }
    return table_csv(dist.m_values, dist.probabilities), meta


def _trajectory(params: ModelParams, config: RunConfig, times):
    psi0 = initial_state(config, params)
    return dynamics.population_trajectory(params, psi0, times, config.initial_state).values


def dynamics_csv(times, columns: dict) -> str:
    names = list(columns)
    lines = [",".join(["t"] + names)]
    data = [columns[n] for n in names]
    for i, t in enumerate(times):
        lines.append(",".join([fmt(t)] + [fmt(col[i]) for col in data]))
    return "\n".join(lines) + "\n"


def run_dynamics(config: RunConfig):
    times = config.times
    values = _trajectory(config.params, config, times)
    meta = {"initial_state": config.initial_state, "n_samples": len(times), "t_max": float(times[-1])}
    return dynamics_csv(times, {"m_expect": values}), meta


def run_sweep(config: RunConfig):
    times = config.times
    base = config.params
    points = [base.replace(**{config.sweep_param: v}) for v in config.sweep_values]
    with ThreadPoolExecutor() as pool:
        # map preserves sweep order
        results = list(pool.map(lambda p: _trajectory(p, config, times), [base] + points))
    columns = {"m_expect": results[0]}
    for v, values in zip(config.sweep_values, results[1:]):
        columns[f"m_expect_{config.sweep_param}={v!r}"] = values
    meta = {"sweep_param": config.sweep_param, "sweep_values": list(config.sweep_values)}
    return dynamics_csv(times, columns), meta


def random_params(rng: np.random.Generator, j) -> ModelParams:
    return ModelParams(
        a1=float(rng.uniform(-5, 5)),
        a2=float(rng.uniform(-2, 2)),
        a3=float(rng.uniform(-0.5, 0.5)),
        theta=float(rng.uniform(0, 2 * math.pi)),
        j=j,
    )


def random_state(rng: np.random.Generator, sector) -> StateVector:
    amps = rng.normal(size=sector.dimension) + 1j * rng.normal(size=sector.dimension)
    return StateVector(sector, amps / np.linalg.norm(amps))


def validation_reports(params: ModelParams, psi0: StateVector, times) -> list:
    """Analytical-vs-oracle checks for one parameter set."""
    reports = []
    sim = oracle.validate_similarity(params)
    other = oracle.validate_similarity(params, convention="relative")
    literal = oracle.validate_similarity(params, table="published")
    notes = (
        f"{sim.notes} relative-convention-residual={other.max_abs_error:.3e}"
        f" literal-table-residual={literal.max_abs_error:.3e}"
    )
    reports.append(oracle.ValidationReport(sim.check_name, sim.max_abs_error, sim.tolerance, sim.passed, sim.fitted_shift, notes))

    h3 = assemble_h3(params)
    evals, _ = oracle.dense_eigensolve(h3)
    analytic = np.sort(spectral.energy_levels(params, HAMILTONIAN_CONVENTION))
    shift = float(np.mean(evals - analytic))
    scale = max(np.max(np.abs(analytic)), np.max(np.abs(evals)), 1e-300)
    reports.append(
        oracle.make_report("spectrum_match", np.max(np.abs(evals - analytic - shift)), VALIDATE_SPECTRUM_RTOL * scale, shift)
    )

    dmat = oracle.displacement_matrix(params.sector, params.theta).matrix
    reports.append(
        oracle.make_report(
            "wigner_vs_displacement",
            np.max(np.abs(wigner.wigner_matrix(params.sector, params.theta) - dmat)),
            VALIDATE_WIGNER_TOL,
        )
    )

    traj = dynamics.population_trajectory(params, psi0, times).values
    mop = m_operator(params.sector)
    ref = np.array([expectation(s, mop) for s in oracle.propagate_oracle(h3, psi0, times)])
    reports.append(oracle.make_report("dynamics_equivalence", np.max(np.abs(traj - ref)), VALIDATE_DYNAMICS_TOL))
    return reports


def run_validate(config: RunConfig):
    rng = np.random.default_rng(config.seed)
    times = np.linspace(0.0, 5.0, 200)
    lines = []
    failed = 0
    for i in range(config.n_random):
        params = random_params(rng, config.params.j)
        psi0 = random_state(rng, params.sector)
        for report in validation_reports(params, psi0, times):
            report = oracle.ValidationReport(
                f"{report.check_name}[{i}]", report.max_abs_error, report.tolerance,
                report.passed, report.fitted_shift, report.notes,
            )
            failed += not report.passed
            lines.append(report.to_line())
    return "\n".join(lines) + "\n", {"failed": failed, "checks": len(lines)}


RUNNERS = {
    "spectrum": run_spectrum,
    "ground": run_ground,
    "dynamics": run_dynamics,
    "sweep": run_sweep,
    "validate": run_validate,
}


def run(config: RunConfig) -> int:
    """Execute ``config`` and write its output; returns the exit status."""
    command = PRESETS[config.preset]["command"] if config.command == "preset" else config.command
    try:
        text, meta = RUNNERS[command](config)
    except (ValueError, ArithmeticError, np.linalg.LinAlgError) as exc:
        log.error("computation failed: %s", exc)
        return EXIT_COMPUTE

    meta = {"command": config.command, "preset": config.preset, **_param_meta(config.params), **config.notes, **meta}
    try:
        write_output(config.output_path, text, meta)
    except OSError as exc:
        log.error("cannot write output: %s", exc)
        return EXIT_COMPUTE

    if command == "validate" and meta["failed"]:
        log.error("%d of %d validation checks failed", meta["failed"], meta["checks"])
        return EXIT_VALIDATION
    return EXIT_OK


def _param_meta(params: ModelParams) -> dict:
    return {"a1": params.a1, "a2": params.a2, "a3": params.a3, "theta": params.theta, "j": params.j}


def write_output(path: str, text: str, meta: dict):
    if path == "-":
        sys.stdout.write(text)
        log.info("metadata: %s", json.dumps(meta, sort_keys=True))
        return
    out = Path(path)
    out.write_text(text)
    Path(str(out) + ".json").write_text(json.dumps(meta, sort_keys=True, indent=2) + "\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twomode", description=__doc__.split("\n\n")[0])
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", help="flat key: value configuration file")
    parser.add_argument("--out", help="output path ('-' for stdout)")
    for name in ("a1", "a2", "a3", "theta"):
        parser.add_argument(f"--{name}", type=float)
    parser.add_argument("--j", type=float, help="sector spin (half the particle number)")
    parser.add_argument("--preset", choices=sorted(PRESETS))
    parser.add_argument("--initial-state", dest="initial_state")
    parser.add_argument("--t-max", dest="t_max", type=float)
    parser.add_argument("--n-samples", dest="n_samples", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--n-random", dest="n_random", type=int)
    parser.add_argument("-v", "--verbose", action="store_true")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")

    try:
        doc = load_document(Path(args.config).read_text()) if args.config else {}
    except OSError as exc:
        log.error("cannot read config: %s", exc)
        return EXIT_USAGE
    except ConfigError as exc:
        log.error("%s", exc)
        return EXIT_USAGE

    doc["command"] = args.command
    overrides = {
        "a1": args.a1, "a2": args.a2, "a3": args.a3, "theta": args.theta, "j": args.j,
        "id": args.preset, "initial_state": args.initial_state, "t_max": args.t_max,
        "n_samples": args.n_samples, "seed": args.seed, "n_random": args.n_random,
        "output_path": args.out,
    }
    doc.update({k: v for k, v in overrides.items() if v is not None})
    try:
        config = build_config(doc)
    except ConfigError as exc:
        log.error("%s", exc)
        return EXIT_USAGE
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
