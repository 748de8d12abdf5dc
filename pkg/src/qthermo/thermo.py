"""Thermal states, free energy, ergotropy, passive states, and the
local-temperature fit.  Units: hbar = 1, energies in units of the qubit
frequency where one appears.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    DensityMatrix,
    ENTROPY_CUTOFF,
    HERMITICITY_TOL,
    Spectrum,
    as_matrix,
    dagger,
    entropy_of_eigenvalues,
    partial_trace,
    spectral_decomposition,
)

THERMAL_FIT_TOL = 1e-8
ENTROPY_MATCH_TOL = 1e-10
BETA_CAP = 1e6


class Hamiltonian:
    """Hermitian operator with a cached spectral decomposition (ascending)."""

    def __init__(self, matrix):
        m = as_matrix(matrix)
        herm = float(np.abs(m - dagger(m)).max())
        if herm > HERMITICITY_TOL:
            raise ValueError(f"not Hermitian: max |H - H^dag| = {herm:.3e}")
        self.matrix = m
        self.spectrum: Spectrum = spectral_decomposition(m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def eigenvalues(self) -> np.ndarray:
        return self.spectrum.eigenvalues

    def __repr__(self) -> str:
        return f"Hamiltonian(dim={self.dim})"


@dataclass(frozen=True)
class ThermoReport:
    """Energetics of a bipartite state against its local self-Hamiltonians.

    ``avg_energy`` and ``free_energy`` refer to partition B; the ergotropies
    are global (total Hamiltonian H_A (x) I + I (x) H_B, no interaction term).
    ``free_energy`` is -inf when beta is 0.
    """

    avg_energy: float
    free_energy: float
    ergotropy: float
    bound_ergotropy: float
    global_ergotropy: float
    beta: float


def thermal_state(h: Hamiltonian, beta: float) -> DensityMatrix:
    """exp(-beta H)/Z through the spectral decomposition.

    ``beta = inf`` gives the ground-state projector (uniform mixture on a
    degenerate ground space).
    """
    if beta < 0:
        raise ValueError("beta must be nonnegative")
    e = h.eigenvalues
    v = h.spectrum.eigenvectors
    if np.isinf(beta):
        ground = (e - e.min() < 1e-12).astype(float)
        p = ground / ground.sum()
    else:
        w = np.exp(-beta * (e - e.min()))
        p = w / w.sum()
    return DensityMatrix((v * p) @ dagger(v))


def log_partition(h: Hamiltonian, beta: float) -> float:
    """ln Z(beta) = ln sum_i exp(-beta eps_i), computed stably."""
    e = h.eigenvalues
    return float(-beta * e.min() + np.log(np.exp(-beta * (e - e.min())).sum()))


def free_energy(h: Hamiltonian, beta: float) -> float:
    """Helmholtz free energy -ln(Z)/beta; beta must be positive."""
    if beta <= 0:
        raise ValueError("free energy requires beta > 0")
    return -log_partition(h, beta) / beta


def average_energy(rho, h: Hamiltonian) -> float:
    return float(np.trace(h.matrix @ as_matrix(rho)).real)


def passive_state(rho: DensityMatrix, h: Hamiltonian) -> DensityMatrix:
    """Populations of ``rho`` sorted descending onto energy eigenstates sorted
    ascending; commutes with H and shares the spectrum of ``rho``."""
    if h.dim != rho.dim:
        raise ValueError(f"dimension mismatch: state {rho.dim}, Hamiltonian {h.dim}")
    populations = np.sort(np.linalg.eigvalsh(rho.matrix))[::-1]
    v = h.spectrum.eigenvectors
    return DensityMatrix((v * populations) @ dagger(v), dims=rho.dims)


def _passive_energy(state_eigenvalues: np.ndarray, energies: np.ndarray) -> float:
    return float(np.sort(state_eigenvalues)[::-1] @ np.sort(energies))


def ergotropy(rho: DensityMatrix, h: Hamiltonian) -> float:
    """Maximum work extractable by unitary, cyclic operations:
    tr{H (rho - P_rho)}."""
    if h.dim != rho.dim:
        raise ValueError(f"dimension mismatch: state {rho.dim}, Hamiltonian {h.dim}")
    return average_energy(rho, h) - _passive_energy(rho.eigenvalues(), h.eigenvalues)


def ergotropy_double_sum(rho: DensityMatrix, h: Hamiltonian) -> float:
    """Equivalent double-sum form
    sum_ij r_j eps_i (|<r_j|eps_i>|^2 - delta_ij)
    with populations r descending and energies eps ascending."""
    r, u = np.linalg.eigh(rho.matrix)
    order = np.argsort(r)[::-1]
    r, u = r[order], u[:, order]
    e = h.eigenvalues
    v = h.spectrum.eigenvectors
    overlaps = np.abs(dagger(v) @ u) ** 2  # overlaps[i, j] = |<eps_i|r_j>|^2
    return float(np.einsum("j,i,ij->", r, e, overlaps) - r @ e)


def _thermal_entropy_energy(energies: np.ndarray, beta: float):
    w = np.exp(-beta * (energies - energies.min()))
    p = w / w.sum()
    return entropy_of_eigenvalues(p), float(p @ energies)


def bound_ergotropy(rho: DensityMatrix, h: Hamiltonian) -> float:
    """Extra work unlocked by global operations on many copies:
    tr{(P_rho - P_th) H} where P_th is the thermal state with the entropy of
    the passive state.

    beta* solves S(thermal(beta*)) = S(P_rho) by bisection with bracket
    auto-expansion (upper bound doubled until the entropy falls below the
    target, capped at 1e6).
    """
    if h.dim != rho.dim:
        raise ValueError(f"dimension mismatch: state {rho.dim}, Hamiltonian {h.dim}")
    e = h.eigenvalues
    spread = float(e.max() - e.min())
    state_eigs = rho.eigenvalues()
    passive_e = _passive_energy(state_eigs, e)
    if spread < 1e-12:
        return 0.0
    target = entropy_of_eigenvalues(state_eigs)
    if target > np.log(h.dim) + 1e-9:
        raise ValueError(f"spectrum entropy {target:.12g} exceeds ln(d)")
    if target < ENTROPY_CUTOFF:
        # pure state: the entropy-matched thermal state is the ground projector
        return passive_e - float(e.min())
    lo, hi = 0.0, 50.0 * h.dim / spread
    while hi < BETA_CAP and _thermal_entropy_energy(e, hi)[0] > target:
        hi = min(hi * 2.0, BETA_CAP)
    beta_star = hi
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        s_mid, _ = _thermal_entropy_energy(e, mid)
        beta_star = mid
        if abs(s_mid - target) <= ENTROPY_MATCH_TOL:
            break
        if s_mid > target:
            lo = mid
        else:
            hi = mid
    return passive_e - _thermal_entropy_energy(e, beta_star)[1]


def local_inverse_temperature(rho_local, h: Hamiltonian, tol: float = THERMAL_FIT_TOL):
    """Least-squares fit of ln(populations) against -energies in the energy
    eigenbasis.  Returns beta, or None when the state is not thermal for ``h``
    (coherences or fit residual beyond ``tol``)."""
    m = as_matrix(rho_local)
    if h.dim != m.shape[0]:
        raise ValueError(f"dimension mismatch: state {m.shape[0]}, Hamiltonian {h.dim}")
    v = h.spectrum.eigenvectors
    in_basis = dagger(v) @ m @ v
    off_diagonal = in_basis - np.diag(np.diag(in_basis))
    if np.abs(off_diagonal).max() > tol:
        return None
    populations = np.diag(in_basis).real
    if populations.min() <= 0.0:
        return None
    log_p = np.log(populations)
    design = np.stack([-h.eigenvalues, np.ones(h.dim)], axis=1)
    coef, *_ = np.linalg.lstsq(design, log_p, rcond=None)
    if np.abs(design @ coef - log_p).max() > tol:
        return None
    return float(coef[0])


def thermo_report(rho: DensityMatrix, h_b: Hamiltonian, beta: float, h_a: Hamiltonian | None = None) -> ThermoReport:
    """Assemble the thermodynamic quantities of a bipartite state at the common
    local inverse temperature ``beta``."""
    if rho.dims is None:
        raise ValueError("state carries no bipartite dims")
    d_a, d_b = rho.dims
    if h_a is None:
        h_a = h_b
    if h_a.dim != d_a or h_b.dim != d_b:
        raise ValueError("local Hamiltonian dimensions do not match the partition dims")
    h_total = Hamiltonian(
        np.kron(h_a.matrix, np.eye(d_b)) + np.kron(np.eye(d_a), h_b.matrix)
    )
    rho_b = partial_trace(rho, "B")
    avg = average_energy(rho_b, h_b)
    f_b = -np.inf if beta == 0 else -log_partition(h_b, beta) / beta
    work = ergotropy(rho, h_total)
    bound = bound_ergotropy(rho, h_total)
    return ThermoReport(
        avg_energy=avg,
        free_energy=f_b,
        ergotropy=work,
        bound_ergotropy=bound,
        global_ergotropy=work + bound,
        beta=beta,
    )
