"""Command-line interface: steady-state sweeps, trajectory simulation,
randomized verification, and relation reports.

Commands: sweep | simulate | verify | report.
Exit codes: 0 success, 1 property failure, 2 invalid input.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import DensityMatrix, trace_distance
from .correlations import SearchGrid, breakdown
from .dissipation import (
    ModelParams,
    analytic_steady_state,
    effective_c,
    evolve,
    local_beta,
)
from .io import (
    read_hamiltonian,
    read_state,
    write_csv,
    write_reports,
    write_trajectory_csv,
)
from .measurement import information_gain, measure, projective_energy_povm
from .relations import (
    NotLocallyThermalError,
    check_ergotropy_bound,
    check_global_ergotropy_bound,
    euler_residual,
    standard_reports,
    tradeoff_residual,
)
from .thermo import Hamiltonian, thermo_report
from .verify import DEFAULT_SEED, run_suites

SWEEP_COLUMNS = [
    "c",
    "I_g",
    "chi_B",
    "MI",
    "discord_A",
    "eof_BC",
    "quantum_gain",
    "avg_energy_B",
    "free_energy_B",
    "ergotropy",
    "bound_ergotropy",
    "global_ergotropy",
    "rhs_ineq1",
    "rhs_ineq2",
    "slack1",
    "slack2",
    "euler_residual",
]


@dataclass
class RunConfig:
    """Model, grid, and output settings shared by the commands."""

    beta_e: float = 10.0
    omega: float = 1.0
    f: float = 0.0
    gamma: float = 1.0  # fully collective: gamma_ij = gamma
    c_start: float = 0.0
    c_stop: float = 1.0
    c_step: float = 0.01
    seed: int = DEFAULT_SEED
    dt: float = 0.005
    t_max: float | None = None
    verify_count: int = 500
    output_path: str | None = None

    def model_params(self) -> ModelParams:
        return ModelParams(
            omega=self.omega,
            f=self.f,
            beta_e=self.beta_e,
            gamma=self.gamma * np.ones((2, 2)),
        )

    def c_grid(self) -> np.ndarray:
        if self.c_step <= 0:
            raise ValueError("c_step must be positive")
        if not (0.0 <= self.c_start <= self.c_stop <= 1.0):
            raise ValueError("c grid must satisfy 0 <= start <= stop <= 1")
        count = int(round((self.c_stop - self.c_start) / self.c_step)) + 1
        grid = self.c_start + self.c_step * np.arange(count)
        return np.clip(grid, 0.0, 1.0)

    def horizon(self) -> float:
        return self.t_max if self.t_max is not None else 50.0 / self.gamma


def load_config(path: str | None = None, **overrides) -> RunConfig:
    """Config from an optional JSON file plus keyword overrides (None skipped)."""
    values = {}
    if path is not None:
        with open(path) as fh:
            values.update(json.load(fh))
    values.update({k: v for k, v in overrides.items() if v is not None})
    known = {f.name for f in dataclasses.fields(RunConfig)}
    unknown = set(values) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    return RunConfig(**values)


def local_qubit_hamiltonian(omega: float) -> Hamiltonian:
    """omega |e><e| in the (e, g) basis."""
    return Hamiltonian(np.diag([omega, 0.0]).astype(complex))


def sweep_row(c: float, params: ModelParams, h_local: Hamiltonian, grid: SearchGrid) -> dict:
    """All sweep columns for one steady state, plus private keys ``_beta`` and
    ``_tradeoff_residual`` that are not written to the CSV."""
    rho = analytic_steady_state(c, params)
    beta = local_beta(c, params)
    corr = breakdown(rho, h_local, grid)
    record = measure(rho, projective_energy_povm(h_local, "B", rho.dims))
    rep = thermo_report(rho, h_local, beta)
    bound1 = check_ergotropy_bound(rho, h_local, beta)
    bound2 = check_global_ergotropy_bound(rho, h_local, beta)
    euler = euler_residual(rho, h_local, beta, grid, corr=corr)
    tradeoff = tradeoff_residual(rho, h_local, beta, grid, corr=corr)
    return {
        "c": c,
        "I_g": information_gain(record),
        "chi_B": corr.chi_B,
        "MI": corr.mutual_information,
        "discord_A": corr.discord_A,
        "eof_BC": corr.eof_BC,
        "quantum_gain": corr.quantum_gain,
        "avg_energy_B": rep.avg_energy,
        "free_energy_B": rep.free_energy,
        "ergotropy": rep.ergotropy,
        "bound_ergotropy": rep.bound_ergotropy,
        "global_ergotropy": rep.global_ergotropy,
        "rhs_ineq1": bound1.rhs,
        "rhs_ineq2": bound2.rhs,
        "slack1": bound1.slack,
        "slack2": bound2.slack,
        "euler_residual": euler.slack,
        "_beta": beta,
        "_tradeoff_residual": tradeoff.slack,
    }


def sweep_rows(config: RunConfig, grid: SearchGrid = SearchGrid()) -> list[dict]:
    params = config.model_params()
    h_local = local_qubit_hamiltonian(config.omega)
    return [sweep_row(float(c), params, h_local, grid) for c in config.c_grid()]


def cmd_sweep(config: RunConfig) -> int:
    rows = sweep_rows(config)
    out = config.output_path or "sweep.csv"
    write_csv(out, SWEEP_COLUMNS, rows)
    saturated = [r["c"] for r in rows if abs(r["slack2"]) <= 0.02]
    threshold = min(saturated) if saturated else None
    print(f"wrote {len(rows)} rows to {out}")
    if threshold is not None:
        print(f"tight bound saturated (|slack2| <= 0.02) from c = {threshold:g} on")
    return 0


def cmd_simulate(config: RunConfig, rho0_path: str) -> int:
    rho0 = read_state(rho0_path)
    if rho0.dim != 4:
        raise ValueError(f"simulation needs a 4x4 two-qubit state, got {rho0.dim}x{rho0.dim}")
    if rho0.dims is None:
        rho0 = DensityMatrix(rho0.matrix, dims=(2, 2))
    params = config.model_params()
    trajectory = evolve(rho0, params, config.dt, config.horizon())
    c = effective_c(rho0)
    target = analytic_steady_state(c, params)
    final = trajectory.states[-1]
    distance = trace_distance(final, target)

    out = Path(config.output_path or "trajectory.csv")
    write_trajectory_csv(out, trajectory)
    reports_path = out.with_name(out.stem + "_reports.json")
    reports = standard_reports(final, local_qubit_hamiltonian(config.omega))
    write_reports(reports_path, reports)

    print(f"wrote {len(trajectory.states)} steps to {out}")
    print(f"effective c = {c:.9g}")
    print(f"trace distance to the analytic steady state: {distance:.3e}")
    print(f"relation reports: {reports_path}")
    return 0


def cmd_verify(config: RunConfig) -> int:
    results = run_suites(seed=config.seed, n=config.verify_count)
    for r in results:
        status = "ok" if r.passed else "FAIL"
        print(
            f"{r.name:32s} {status:4s} n={r.count:<5d} failures={r.failures:<3d} "
            f"worst={r.worst:.3e} tol={r.tolerance:g} ({r.kind})"
        )
    out = config.output_path or "verify_report.json"
    with open(out, "w") as fh:
        json.dump([r.to_dict() for r in results], fh, indent=1)
        fh.write("\n")
    failed = [r.name for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} suites passed; report: {out}")
    if failed:
        print(f"failed: {', '.join(failed)}")
        return 1
    return 0


def cmd_report(config: RunConfig, state_path: str, h_path: str) -> int:
    rho = read_state(state_path)
    if rho.dims is None:
        raise ValueError("state file must carry bipartite dims for a relation report")
    h_b = read_hamiltonian(h_path)
    reports = standard_reports(rho, h_b)
    for r in reports:
        flag = "satisfied" if r.satisfied else "VIOLATED"
        print(f"{r.name:24s} lhs={r.lhs:.9g} rhs={r.rhs:.9g} slack={r.slack:.3e} {flag}")
    out = config.output_path or "reports.json"
    write_reports(out, reports)
    print(f"wrote {len(reports)} reports to {out}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qthermo",
        description="Steady-state sweeps, trajectories, property verification, "
        "and relation reports for the two-qubit collective-dissipation model.",
    )
    parser.add_argument("--config", help="JSON file with RunConfig fields")
    parser.add_argument("--beta-e", type=float, dest="beta_e")
    parser.add_argument("--omega", type=float)
    parser.add_argument("--f", type=float)
    parser.add_argument("--gamma", type=float)
    parser.add_argument("--c-start", type=float, dest="c_start")
    parser.add_argument("--c-stop", type=float, dest="c_stop")
    parser.add_argument("--c-step", type=float, dest="c_step")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--dt", type=float)
    parser.add_argument("--t-max", type=float, dest="t_max")
    parser.add_argument("--count", type=int, dest="verify_count")
    parser.add_argument("--out", dest="output_path")

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("sweep", help="write the steady-state sweep CSV")
    p_sim = sub.add_parser("simulate", help="integrate a state file to the steady state")
    p_sim.add_argument("rho0", help="initial state JSON file")
    sub.add_parser("verify", help="run the randomized property suites")
    p_rep = sub.add_parser("report", help="evaluate every relation for a state file")
    p_rep.add_argument("state", help="state JSON file")
    p_rep.add_argument("hamiltonian", help="local Hamiltonian JSON file (partition B)")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    overrides = {
        k: getattr(args, k)
        for k in (
            "beta_e",
            "omega",
            "f",
            "gamma",
            "c_start",
            "c_stop",
            "c_step",
            "seed",
            "dt",
            "t_max",
            "verify_count",
            "output_path",
        )
    }
    try:
        config = load_config(args.config, **overrides)
        if args.command == "sweep":
            return cmd_sweep(config)
        if args.command == "simulate":
            return cmd_simulate(config, args.rho0)
        if args.command == "verify":
            return cmd_verify(config)
        return cmd_report(config, args.state, args.hamiltonian)
    except NotLocallyThermalError as err:
        print(json.dumps({"error": "not_locally_thermal", "message": str(err)}))
        return 2
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as err:
        print(json.dumps({"error": "invalid_input", "message": str(err)}))
        return 2


if __name__ == "__main__":
    sys.exit(main())
