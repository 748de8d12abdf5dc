"""Seeded random states, Hamiltonians, and POVMs for the property suites."""

from __future__ import annotations

import numpy as np

from .core import DensityMatrix, dagger
from .measurement import Povm, local_povm
from .thermo import Hamiltonian


def _ginibre(rng, rows, cols) -> np.ndarray:
    return rng.standard_normal((rows, cols)) + 1.0j * rng.standard_normal((rows, cols))


def random_unitary(dim: int, rng) -> np.ndarray:
    """Haar-distributed unitary from the QR decomposition of a Ginibre matrix."""
    q, r = np.linalg.qr(_ginibre(rng, dim, dim))
    phases = np.diag(r).copy()
    phases /= np.abs(phases)
    return q * phases.conj()


def random_pure_state(dim: int, rng) -> np.ndarray:
    v = _ginibre(rng, dim, 1).reshape(-1)
    return v / np.linalg.norm(v)


def random_density_matrix(dim: int, rng, rank: int | None = None, dims=None) -> DensityMatrix:
    """G G^dag / tr(G G^dag) with a Ginibre G of the requested rank."""
    g = _ginibre(rng, dim, rank or dim)
    m = g @ dagger(g)
    return DensityMatrix(m / np.trace(m).real, dims=dims)


def random_two_qubit_state(rng, rank: int | None = None) -> DensityMatrix:
    return random_density_matrix(4, rng, rank=rank, dims=(2, 2))


def random_rank2_two_qubit(rng, min_weight: float = 0.1) -> DensityMatrix:
    """Mixture of two random orthonormal pure states with weights away from
    0 and 1, so the rank stays numerically clean."""
    u = random_unitary(4, rng)
    w = rng.uniform(min_weight, 1.0 - min_weight)
    m = w * np.outer(u[:, 0], u[:, 0].conj()) + (1.0 - w) * np.outer(u[:, 1], u[:, 1].conj())
    return DensityMatrix(m, dims=(2, 2))


def random_hamiltonian(dim: int, rng, scale: float = 1.0) -> Hamiltonian:
    g = _ginibre(rng, dim, dim)
    return Hamiltonian(scale * 0.5 * (g + dagger(g)))


def random_x_state(rng, max_coherence: float = 0.95) -> DensityMatrix:
    """Random two-qubit X-shape state (diagonal plus anti-diagonal entries).

    The anti-diagonal entries are drawn inside the positivity disks
    |rho14| <= sqrt(rho11 rho44), |rho23| <= sqrt(rho22 rho33).
    """
    diag = rng.dirichlet(np.ones(4))
    m = np.diag(diag).astype(complex)
    r14 = rng.uniform(0.0, max_coherence) * np.sqrt(diag[0] * diag[3])
    r23 = rng.uniform(0.0, max_coherence) * np.sqrt(diag[1] * diag[2])
    m[0, 3] = r14 * np.exp(2.0j * np.pi * rng.uniform())
    m[3, 0] = np.conj(m[0, 3])
    m[1, 2] = r23 * np.exp(2.0j * np.pi * rng.uniform())
    m[2, 1] = np.conj(m[1, 2])
    return DensityMatrix(m, dims=(2, 2))


def random_projective_povm(dim: int, rng) -> Povm:
    """Rank-one projectors onto the columns of a random unitary."""
    u = random_unitary(dim, rng)
    return Povm([np.outer(u[:, k], u[:, k].conj()) for k in range(dim)])


def random_two_outcome_projective(dim: int, rng, rank: int = 2) -> Povm:
    """{P, I - P} with P projecting onto a random subspace."""
    u = random_unitary(dim, rng)
    p = u[:, :rank] @ dagger(u[:, :rank])
    return Povm([p, np.eye(dim) - p])


def random_local_projective_povm(rng, side: str | None = None) -> Povm:
    """Product of single-qubit projective measurements on two qubits.

    ``side`` restricts the measurement to one qubit (identity on the other).
    """
    trivial = Povm([np.eye(2, dtype=complex)])
    basis_a = random_projective_povm(2, rng)
    basis_b = random_projective_povm(2, rng)
    if side == "A":
        return local_povm(basis_a, trivial)
    if side == "B":
        return local_povm(trivial, basis_b)
    return local_povm(basis_a, basis_b)


def random_general_povm(dim: int, rng, n_outcomes: int = 3) -> Povm:
    """Efficient POVM with Hermitian PSD operators built from random positive
    blocks normalized through S^{-1/2}."""
    blocks = []
    for _ in range(n_outcomes):
        g = _ginibre(rng, dim, dim)
        blocks.append(g @ dagger(g))
    total = sum(blocks)
    w, v = np.linalg.eigh(total)
    inv_sqrt = (v / np.sqrt(w)) @ dagger(v)
    ops = []
    for b in blocks:
        e = inv_sqrt @ b @ inv_sqrt
        we, ve = np.linalg.eigh(e)
        ops.append((ve * np.sqrt(np.clip(we, 0.0, None))) @ dagger(ve))
    return Povm(ops)


def random_local_general_povm(rng, n_outcomes: int = 2) -> Povm:
    return local_povm(
        random_general_povm(2, rng, n_outcomes), random_general_povm(2, rng, n_outcomes)
    )


def random_unsharp_on_b(rng) -> Povm:
    """Identity on A times the square-root two-outcome POVM ((I +/- n.sigma)/2)^{1/2}."""
    n = rng.standard_normal(3)
    n /= np.linalg.norm(n)
    from .core import SIGMA_X, SIGMA_Y, SIGMA_Z

    pauli = n[0] * SIGMA_X + n[1] * SIGMA_Y + n[2] * SIGMA_Z
    ops = []
    for sign in (1.0, -1.0):
        e = 0.5 * (np.eye(2) + sign * pauli)
        w, v = np.linalg.eigh(e)
        ops.append((v * np.sqrt(np.clip(w, 0.0, None))) @ dagger(v))
    trivial = Povm([np.eye(2, dtype=complex)])
    return local_povm(trivial, Povm(ops))
