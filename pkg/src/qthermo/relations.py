"""Machine-checkable reports for the bounds and identities tying the
information gain to correlations and to thermodynamic quantities.

Every report records left side, right side, slack = rhs - lhs, and a
satisfied flag (slack >= -tolerance).  The thermodynamic checks require the
state to be locally thermal at a common inverse temperature on both
partitions; bound right-hand sides are assembled through beta * F = -ln Z so
that they stay finite at beta = 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    DensityMatrix,
    _partial_trace,
    entropy_of_eigenvalues,
    partial_trace,
)
from .correlations import (
    CorrelationBreakdown,
    SearchGrid,
    breakdown,
    chi_from_local_measurement,
    mutual_information,
)
from .measurement import (
    Povm,
    entropy_cost,
    holevo_of_measurement,
    information_gain,
    local_information_gain,
    measure,
    projective_energy_povm,
)
from .thermo import (
    Hamiltonian,
    local_inverse_temperature,
    log_partition,
    thermo_report,
)

SPECTRAL_TOL = 1e-9
THERMO_TOL = 2e-3
NEAR_EQUALITY_BAND = 0.02
BETA_MATCH_TOL = 1e-6


@dataclass(frozen=True)
class RelationReport:
    """One evaluated inequality or identity."""

    name: str
    lhs: float
    rhs: float
    slack: float
    satisfied: bool
    tolerance: float
    inputs_digest: str
    near_equality: bool | None = None

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "satisfied": self.satisfied,
            "tolerance": self.tolerance,
            "inputs_digest": self.inputs_digest,
        }
        if self.near_equality is not None:
            out["near_equality"] = self.near_equality
        return out


class NotLocallyThermalError(ValueError):
    """The state's marginals are not thermal (or disagree) for the given
    local Hamiltonians."""


def _report(name, lhs, rhs, tolerance, digest, near_band=None) -> RelationReport:
    slack = rhs - lhs
    near = None if near_band is None else bool(abs(slack) <= near_band)
    return RelationReport(
        name=name,
        lhs=float(lhs),
        rhs=float(rhs),
        slack=float(slack),
        satisfied=bool(slack >= -tolerance),
        tolerance=float(tolerance),
        inputs_digest=digest,
        near_equality=near,
    )


def _digest(rho: DensityMatrix, extra: str = "") -> str:
    base = f"state {rho.dim}x{rho.dim}, dims={rho.dims}"
    return f"{base}; {extra}" if extra else base


def common_local_beta(rho: DensityMatrix, h_b: Hamiltonian, h_a: Hamiltonian | None = None) -> float:
    """Shared inverse temperature of the two marginals; raises
    NotLocallyThermalError when either marginal is not thermal or the fitted
    temperatures disagree beyond 1e-6."""
    if h_a is None:
        h_a = h_b
    beta_a = local_inverse_temperature(partial_trace(rho, "A"), h_a)
    beta_b = local_inverse_temperature(partial_trace(rho, "B"), h_b)
    if beta_a is None or beta_b is None:
        raise NotLocallyThermalError("a marginal is not thermal for its Hamiltonian")
    if abs(beta_a - beta_b) > BETA_MATCH_TOL:
        raise NotLocallyThermalError(
            f"marginal temperatures disagree: beta_A = {beta_a:.9g}, beta_B = {beta_b:.9g}"
        )
    # fit noise around infinite temperature snaps to exactly zero
    return 0.0 if abs(beta_b) < 1e-12 else beta_b


def _require_locally_thermal(rho, h_b, beta, h_a) -> None:
    fitted = common_local_beta(rho, h_b, h_a)
    if abs(fitted - beta) > BETA_MATCH_TOL:
        raise NotLocallyThermalError(
            f"state is locally thermal at beta = {fitted:.9g}, not {beta:.9g}"
        )


def check_dimension_bound(rho: DensityMatrix, povm: Povm) -> RelationReport:
    """Information gain against ln(d) minus the mutual information."""
    record = measure(rho, povm)
    lhs = information_gain(record)
    rhs = np.log(rho.dim) - mutual_information(rho)
    digest = _digest(rho, f"povm with {len(povm)} outcomes")
    return _report("dimension_bound", lhs, rhs, SPECTRAL_TOL, digest)


def check_subadditivity(rho: DensityMatrix, povm: Povm) -> RelationReport:
    """Information gain against the sum of the two local information gains.

    Only local POVMs (built as tensor products) are accepted.
    """
    if not povm.is_local:
        raise ValueError("subadditivity check requires a local POVM")
    record = measure(rho, povm)
    lhs = information_gain(record)
    rhs = local_information_gain(record, "A") + local_information_gain(record, "B")
    digest = _digest(rho, f"local povm with {len(povm)} outcomes")
    return _report("subadditivity", lhs, rhs, SPECTRAL_TOL, digest)


def _energy_record(rho: DensityMatrix, h_b: Hamiltonian):
    povm = projective_energy_povm(h_b, "B", rho.dims)
    return povm, measure(rho, povm)


def check_ergotropy_bound(
    rho: DensityMatrix, h_b: Hamiltonian, beta: float, h_a: Hamiltonian | None = None
) -> RelationReport:
    """Information gain under the local energy measurement on B against
    chi_B + beta (<H_B> - ergotropy - F_B)."""
    _require_locally_thermal(rho, h_b, beta, h_a)
    povm, record = _energy_record(rho, h_b)
    lhs = information_gain(record)
    chi_b = chi_from_local_measurement(rho, povm)
    rep = thermo_report(rho, h_b, beta, h_a)
    rhs = chi_b + beta * (rep.avg_energy - rep.ergotropy) + log_partition(h_b, beta)
    digest = _digest(rho, f"beta={beta:.9g}")
    return _report("ergotropy_bound", lhs, rhs, THERMO_TOL, digest)


def check_global_ergotropy_bound(
    rho: DensityMatrix, h_b: Hamiltonian, beta: float, h_a: Hamiltonian | None = None
) -> RelationReport:
    """Tighter bound with the ergotropy replaced by the global ergotropy."""
    _require_locally_thermal(rho, h_b, beta, h_a)
    povm, record = _energy_record(rho, h_b)
    lhs = information_gain(record)
    chi_b = chi_from_local_measurement(rho, povm)
    rep = thermo_report(rho, h_b, beta, h_a)
    rhs = chi_b + beta * (rep.avg_energy - rep.global_ergotropy) + log_partition(h_b, beta)
    digest = _digest(rho, f"beta={beta:.9g}")
    return _report("global_ergotropy_bound", lhs, rhs, THERMO_TOL, digest)


def euler_residual(
    rho: DensityMatrix,
    h_b: Hamiltonian,
    beta: float,
    grid: SearchGrid = SearchGrid(),
    corr: CorrelationBreakdown | None = None,
    h_a: Hamiltonian | None = None,
) -> RelationReport:
    """Energy balance <H_B> against E_G + F_B + quantum_gain / beta.

    Satisfied means the general inequality (slack >= -2e-3) holds; the
    near_equality flag marks |slack| <= 0.02.  At beta = 0 the right-hand
    terms are infinite and the slack is +/-inf.
    """
    _require_locally_thermal(rho, h_b, beta, h_a)
    if corr is None:
        corr = breakdown(rho, h_b, grid)
    rep = thermo_report(rho, h_b, beta, h_a)
    with np.errstate(divide="ignore", invalid="ignore"):
        gain_term = float(np.divide(corr.quantum_gain, beta))
    lhs = rep.global_ergotropy + rep.free_energy + gain_term
    rhs = rep.avg_energy
    digest = _digest(rho, f"beta={beta:.9g}")
    return _report("euler", lhs, rhs, THERMO_TOL, digest, near_band=NEAR_EQUALITY_BAND)


def tradeoff_residual(
    rho: DensityMatrix,
    h_b: Hamiltonian,
    beta: float,
    grid: SearchGrid = SearchGrid(),
    corr: CorrelationBreakdown | None = None,
    h_a: Hamiltonian | None = None,
) -> RelationReport:
    """Quantum gain E(B:C) - D_A against beta (<H_B> - E_G - F_B).

    The slack equals beta times the energy-balance slack; the consistency is
    checked to 1e-9 whenever both are finite.
    """
    _require_locally_thermal(rho, h_b, beta, h_a)
    if corr is None:
        corr = breakdown(rho, h_b, grid)
    rep = thermo_report(rho, h_b, beta, h_a)
    lhs = corr.quantum_gain
    rhs = beta * (rep.avg_energy - rep.global_ergotropy) + log_partition(h_b, beta)
    digest = _digest(rho, f"beta={beta:.9g}")
    report = _report("tradeoff", lhs, rhs, THERMO_TOL, digest, near_band=NEAR_EQUALITY_BAND)
    energy_balance = euler_residual(rho, h_b, beta, grid, corr=corr, h_a=h_a)
    if np.isfinite(energy_balance.slack):
        mismatch = abs(report.slack - beta * energy_balance.slack)
        if mismatch > 1e-9:
            raise ValueError(
                f"trade-off and energy-balance residuals disagree by {mismatch:.3e}"
            )
    return report


def standard_reports(
    rho: DensityMatrix,
    h_b: Hamiltonian,
    beta: float | None = None,
    grid: SearchGrid = SearchGrid(),
    h_a: Hamiltonian | None = None,
) -> list[RelationReport]:
    """All relations for one locally thermal state under the canonical local
    energy measurement on B.

    The dimension bound is exercised separately (its slack is structurally
    nonzero even for uncorrelated thermal states).
    """
    if beta is None:
        beta = common_local_beta(rho, h_b, h_a)
    povm, record = _energy_record(rho, h_b)
    corr = breakdown(rho, h_b, grid)
    gain = information_gain(record)
    digest = _digest(rho, f"beta={beta:.9g}")
    s_b = entropy_of_eigenvalues(
        np.linalg.eigvalsh(_partial_trace(rho.matrix, rho.dims, "B"))
    )
    reports = []
    reports.append(check_subadditivity(rho, povm))
    reports.append(
        _report(
            "holevo_closure",
            gain + entropy_cost(record),
            holevo_of_measurement(record),
            SPECTRAL_TOL,
            digest,
            near_band=SPECTRAL_TOL,
        )
    )
    reports.append(
        _report(
            "local_gain_identity",
            gain,
            corr.chi_B + s_b - corr.mutual_information,
            SPECTRAL_TOL,
            digest,
            near_band=SPECTRAL_TOL,
        )
    )
    reports.append(
        _report(
            "gain_split",
            gain,
            corr.chi_B + corr.quantum_gain,
            THERMO_TOL,
            digest,
            near_band=THERMO_TOL,
        )
    )
    reports.append(check_ergotropy_bound(rho, h_b, beta, h_a))
    reports.append(check_global_ergotropy_bound(rho, h_b, beta, h_a))
    reports.append(tradeoff_residual(rho, h_b, beta, grid, corr=corr, h_a=h_a))
    reports.append(euler_residual(rho, h_b, beta, grid, corr=corr, h_a=h_a))
    return reports
