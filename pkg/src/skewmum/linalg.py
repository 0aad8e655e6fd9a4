"""Dense complex linear algebra for small multipartite systems.

Operators are plain ``numpy`` complex arrays. Site 0 is the most significant
digit of a computational-basis index, so ``kron(A, B)`` puts ``A`` on site 0.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

MAX_DIM = 4096
HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-10
POSITIVITY_TOL = 1e-10


class DimensionError(ValueError):
    """Operator dimensions are inconsistent or exceed :data:`MAX_DIM`."""


class NotHermitianError(ValueError):
    pass


class InvalidStateError(ValueError):
    """Matrix fails the trace or positivity conditions of a density matrix."""


class EigenConvergenceError(RuntimeError):
    """Eigensolver failed, or its output does not reconstruct the input."""

    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual


def _check_dim(dim: int) -> None:
    if dim > MAX_DIM:
        raise DimensionError(f"dimension {dim} exceeds the dense cap {MAX_DIM}")


def as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise DimensionError(f"expected a 2-d array, got shape {m.shape}")
    _check_dim(max(m.shape))
    return m


def hermiticity_defect(a: np.ndarray) -> float:
    return float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0


def as_hermitian(a, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Validate ``a`` as a Hermitian operator and return it as a complex array."""
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"operator must be square, got shape {m.shape}")
    defect = hermiticity_defect(m)
    if defect > tol:
        raise NotHermitianError(f"max |A - A^dagger| = {defect:.3e} exceeds {tol:.0e}")
    return m


def as_density_matrix(rho, tol: float = TRACE_TOL) -> np.ndarray:
    """Validate ``rho`` as a density matrix (Hermitian, unit trace, PSD)."""
    m = as_hermitian(rho)
    tr = np.trace(m).real
    if abs(tr - 1.0) > tol:
        raise InvalidStateError(f"trace {tr!r} differs from 1 by more than {tol:.0e}")
    lam_min = float(np.linalg.eigvalsh(m)[0])
    if lam_min < -POSITIVITY_TOL:
        raise InvalidStateError(f"minimum eigenvalue {lam_min:.3e} is negative")
    return m


def kron(a, b) -> np.ndarray:
    out = np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))
    _check_dim(max(out.shape))
    return out


def kron_all(ops: Iterable) -> np.ndarray:
    return reduce(kron, ops)


def embed_at_site(op, site: int, num_sites: int, local_dim: int) -> np.ndarray:
    """Pad a single-site operator with identities on every other site.

    Parameters
    ----------
    op : array_like
        Operator of shape ``(local_dim, local_dim)``.
    site : int
        Zero-based position of ``op`` in the tensor product.
    num_sites, local_dim : int
        Number of sites and the dimension of each.

    Returns
    -------
    numpy.ndarray
        ``I^{site} (x) op (x) I^{num_sites - site - 1}``.
    """
    op = as_matrix(op)
    if not 0 <= site < num_sites:
        raise IndexError(f"site {site} outside 0..{num_sites - 1}")
    if op.shape != (local_dim, local_dim):
        raise DimensionError(f"operator shape {op.shape} does not match local dim {local_dim}")
    _check_dim(local_dim**num_sites)
    left = np.eye(local_dim**site, dtype=complex)
    right = np.eye(local_dim ** (num_sites - site - 1), dtype=complex)
    return np.kron(np.kron(left, op), right)


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues in descending order and matching eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.eigenvalues)

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def hermitian_eigendecomposition(h, tol: float = 1e-9) -> SpectralDecomposition:
    """Spectral decomposition of a Hermitian matrix, eigenvalues descending.

    Backed by LAPACK ``heevd`` through :func:`numpy.linalg.eigh`, which is
    deterministic for identical input. The result is checked for
    reconstruction and column orthonormality; failure raises
    :class:`EigenConvergenceError` carrying the offending residual.
    """
    h = as_hermitian(h)
    try:
        w, v = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise EigenConvergenceError(f"eigh did not converge: {exc}", float("nan")) from exc
    dec = SpectralDecomposition(w[::-1].copy(), v[:, ::-1].copy())
    recon = float(np.max(np.abs(dec.reconstruct() - h))) if h.size else 0.0
    if recon > tol:
        raise EigenConvergenceError("reconstruction check failed", recon)
    ortho = float(np.max(np.abs(v.conj().T @ v - np.eye(len(w))))) if h.size else 0.0
    if ortho > max(tol, 1e-10):
        raise EigenConvergenceError("eigenvectors not orthonormal", ortho)
    return dec


def partial_trace(rho, keep: Sequence[int], num_sites: int, local_dim: int) -> np.ndarray:
    """Reduced state on the sites in ``keep`` (kept in ascending site order)."""
    rho = as_matrix(rho)
    keep = sorted(set(int(k) for k in keep))
    if not keep:
        raise ValueError("keep must name at least one site")
    if keep[0] < 0 or keep[-1] >= num_sites:
        raise IndexError(f"keep {keep} outside 0..{num_sites - 1}")
    total = local_dim**num_sites
    if rho.shape != (total, total):
        raise DimensionError(f"state shape {rho.shape} does not match {num_sites} sites of dim {local_dim}")
    drop = [i for i in range(num_sites) if i not in keep]
    t = rho.reshape([local_dim] * (2 * num_sites))
    perm = keep + drop + [num_sites + i for i in keep] + [num_sites + i for i in drop]
    dk, dd = local_dim ** len(keep), local_dim ** len(drop)
    t = t.transpose(perm).reshape(dk, dd, dk, dd)
    return np.einsum("ajbj->ab", t)


def projector(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex).ravel()
    return np.outer(psi, psi.conj())
