"""Dense linear algebra and entropy primitives for small quantum systems.

Operators are numpy complex arrays (row-major); every dimension handled by
this package is tiny (<= 16), so all routines are dense and eigendecomposition
based.  Entropies are natural-log (nats) throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10
POSITIVITY_TOL = 1e-9
ENTROPY_CUTOFF = 1e-12
RANK_CUTOFF = 1e-10
BASIS_TOL = 1e-9

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


def as_matrix(obj) -> np.ndarray:
    """Return the underlying complex square matrix of an operator-like object."""
    m = obj.matrix if hasattr(obj, "matrix") else obj
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(m.T)


class DensityMatrix:
    """Positive semi-definite, unit-trace operator with an optional bipartite split.

    ``dims = (d_A, d_B)`` labels the tensor factors; marginals and local
    measurements require it.  Construction validates hermiticity (1e-10),
    unit trace (1e-10) and positivity (smallest eigenvalue >= -1e-9 by
    default; integrators may pass a looser ``positivity_tol``).
    """

    def __init__(self, matrix, dims=None, positivity_tol: float = POSITIVITY_TOL):
        m = np.asarray(matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"density matrix must be square, got shape {m.shape}")
        herm = float(np.abs(m - np.conj(m.T)).max())
        if herm > HERMITICITY_TOL:
            raise ValueError(f"not Hermitian: max |rho - rho^dag| = {herm:.3e}")
        tr = np.trace(m)
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"trace {tr.real:.12g} differs from 1 beyond {TRACE_TOL}")
        lowest = float(np.linalg.eigvalsh(m).min())
        if lowest < -positivity_tol:
            raise ValueError(
                f"negative eigenvalue {lowest:.3e} below -{positivity_tol:g}"
            )
        if dims is not None:
            d_a, d_b = int(dims[0]), int(dims[1])
            if d_a * d_b != m.shape[0]:
                raise ValueError(f"dims {dims!r} incompatible with dimension {m.shape[0]}")
            dims = (d_a, d_b)
        self.matrix = m
        self.dims = dims

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)

    def __repr__(self) -> str:
        return f"DensityMatrix(dim={self.dim}, dims={self.dims})"


def pure_state(vector, dims=None) -> DensityMatrix:
    """|psi><psi| for a (normalized on entry, up to 1e-8) state vector."""
    v = np.asarray(vector, dtype=complex).reshape(-1)
    norm = np.linalg.norm(v)
    if abs(norm - 1.0) > 1e-8:
        raise ValueError(f"state vector norm {norm:.12g} is not 1")
    v = v / norm
    return DensityMatrix(np.outer(v, v.conj()), dims=dims)


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues sorted ascending with matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def spectral_decomposition(op) -> Spectrum:
    """Spectral decomposition of a Hermitian operator (eigenvalues ascending)."""
    w, v = np.linalg.eigh(as_matrix(op))
    return Spectrum(eigenvalues=w, eigenvectors=v)


def kron(a, b) -> np.ndarray:
    """Kronecker product of two operators."""
    return np.kron(as_matrix(a), as_matrix(b))


def _partial_trace(matrix: np.ndarray, dims, keep: str) -> np.ndarray:
    d_a, d_b = dims
    r = matrix.reshape(d_a, d_b, d_a, d_b)
    if keep == "A":
        return np.einsum("ibjb->ij", r)
    if keep == "B":
        return np.einsum("aiaj->ij", r)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def partial_trace(rho: DensityMatrix, keep: str) -> DensityMatrix:
    """Marginal state on subsystem ``keep`` ("A" or "B") of a bipartite state."""
    if rho.dims is None:
        raise ValueError("state carries no bipartite dims; cannot take a marginal")
    return DensityMatrix(_partial_trace(rho.matrix, rho.dims, keep))


def entropy_of_eigenvalues(values) -> float:
    """Shannon entropy (nats) of a spectrum; values below 1e-12 contribute zero.

    Values in [-1e-9, 0) are treated as integration round-off and clamped;
    anything more negative is an error.
    """
    w = np.asarray(values, dtype=float)
    lowest = float(w.min(initial=0.0))
    if lowest < -POSITIVITY_TOL:
        raise ValueError(f"eigenvalue {lowest:.3e} too negative for an entropy")
    nz = w[w >= ENTROPY_CUTOFF]
    if nz.size == 0:
        return 0.0
    return float(-(nz * np.log(nz)).sum())


def von_neumann_entropy(rho) -> float:
    """S(rho) = -tr(rho ln rho) in nats."""
    return entropy_of_eigenvalues(np.linalg.eigvalsh(as_matrix(rho)))


def purify(rho: DensityMatrix) -> np.ndarray:
    """Pure state on (system (x) ancilla) whose system marginal is ``rho``.

    The ancilla dimension equals the rank of ``rho`` (eigenvalues above 1e-10)
    and the Schmidt weights come out sorted descending.  The returned vector is
    flattened row-major with the system index major, so ``v.reshape(d, r)``
    recovers the Schmidt matrix.
    """
    m = as_matrix(rho)
    w, v = np.linalg.eigh(m)
    order = np.argsort(w)[::-1]
    w, v = w[order], v[:, order]
    keep = w > RANK_CUTOFF
    w, v = w[keep], v[:, keep]
    return (v * np.sqrt(w)).reshape(-1)


def trace_distance(a, b) -> float:
    """(1/2) sum |eigenvalues(a - b)|; the standard distinguishability metric."""
    ma, mb = as_matrix(a), as_matrix(b)
    if ma.shape != mb.shape:
        raise ValueError(f"dimension mismatch: {ma.shape} vs {mb.shape}")
    return 0.5 * float(np.abs(np.linalg.eigvalsh(ma - mb)).sum())


def dephase(rho, basis) -> np.ndarray:
    """Remove the off-diagonal elements of ``rho`` in the given orthonormal basis.

    ``basis`` holds the basis vectors as columns.
    """
    m = as_matrix(rho)
    b = np.asarray(basis, dtype=complex)
    if b.shape != m.shape:
        raise ValueError(f"basis shape {b.shape} does not match operator {m.shape}")
    dev = float(np.abs(dagger(b) @ b - np.eye(b.shape[0])).max())
    if dev > BASIS_TOL:
        raise ValueError(f"basis not orthonormal: max |B^dag B - I| = {dev:.3e}")
    populations = np.diag(dagger(b) @ m @ b)
    return (b * populations) @ dagger(b)


def relative_entropy_of_coherence(rho, basis) -> float:
    """S(rho_diag) - S(rho) with the diagonal taken in ``basis`` (nats)."""
    m = as_matrix(rho)
    return von_neumann_entropy(dephase(m, basis)) - von_neumann_entropy(m)
