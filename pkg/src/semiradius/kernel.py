"""Dense Hermitian eigendecompositions and the PSD spectral calculus.

Everything downstream (pseudo-inverses, square roots, projections,
coordinate maps) is derived from a single eigendecomposition of the seed
matrix so that all factors are mutually consistent.  Rank decisions use a
relative eigenvalue cutoff.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import NoConvergence, NonSquare, NotHermitian, NotPSD

__all__ = [
    "DEFAULT_CUTOFF",
    "HERMITIAN_TOL",
    "PSD_TOL",
    "EigenData",
    "as_matrix",
    "hermitian_eigendecomposition",
    "psd_rank",
    "spectral_function",
    "psd_pseudo_inverse",
    "psd_square_root",
    "spectral_norm",
]

# Relative eigenvalue cutoff below which a PSD eigenvalue counts as zero.
DEFAULT_CUTOFF = 1e-10
# Relative tolerance for accepting a matrix as Hermitian.
HERMITIAN_TOL = 1e-8
# Relative tolerance for accepting small negative eigenvalues as rounding.
PSD_TOL = 1e-8


def as_matrix(M, square: bool = True) -> np.ndarray:
    """Coerce input to a complex128 2-D array.

    Raises NonSquare when a square matrix is required but not supplied.
    """
    A = np.asarray(M, dtype=np.complex128)
    if A.ndim != 2:
        raise NonSquare(f"expected a 2-D array, got ndim={A.ndim}")
    if square and A.shape[0] != A.shape[1]:
        raise NonSquare(f"expected a square matrix, got shape {A.shape}")
    return A


@dataclass(frozen=True)
class EigenData:
    """Eigenvalues (ascending, real) and orthonormal eigenvectors (columns)."""

    values: np.ndarray
    vectors: np.ndarray


def hermitian_eigendecomposition(M, hermitian_tol: float = HERMITIAN_TOL) -> EigenData:
    """Eigendecomposition of a Hermitian matrix.

    The input is symmetrized as (M + M*)/2 before factorization; inputs whose
    anti-Hermitian part exceeds hermitian_tol * (1 + |M|) are rejected.
    """
    A = as_matrix(M)
    scale = 1.0 + float(np.max(np.abs(A))) if A.size else 1.0
    dev = float(np.max(np.abs(A - A.conj().T))) if A.size else 0.0
    if not dev <= hermitian_tol * scale:
        raise NotHermitian(f"anti-Hermitian deviation {dev:.3e} exceeds {hermitian_tol:.1e} * {scale:.3e}")
    H = 0.5 * (A + A.conj().T)
    try:
        values, vectors = np.linalg.eigh(H)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(f"eigendecomposition failed: {exc}") from exc
    return EigenData(values=values, vectors=vectors)


def psd_rank(values: np.ndarray, cutoff: float = DEFAULT_CUTOFF, psd_tol: float = PSD_TOL) -> int:
    """Numerical rank of a PSD spectrum under a relative cutoff.

    Eigenvalues <= cutoff * lambda_max count as zero.  Eigenvalues below
    -psd_tol * max(1, lambda_max) are a hard failure, not rounding noise.
    """
    if values.size == 0:
        return 0
    lam_max = float(values[-1])
    floor = -psd_tol * max(1.0, lam_max)
    lam_min = float(values[0])
    if lam_min < floor:
        raise NotPSD(f"eigenvalue {lam_min:.3e} below tolerance {floor:.3e}")
    if lam_max <= 0.0:
        return 0
    return int(np.sum(values > cutoff * lam_max))


def spectral_function(
    eigen: EigenData,
    fn: Callable[[np.ndarray], np.ndarray],
    cutoff: float = DEFAULT_CUTOFF,
    psd_tol: float = PSD_TOL,
) -> np.ndarray:
    """Apply fn to the above-cutoff eigenvalues, zeroing the rest.

    Returns U diag(fn(kept), 0) U*.  All PSD-derived factors in this package
    come through here from one shared decomposition.
    """
    r = psd_rank(eigen.values, cutoff, psd_tol)
    n = eigen.values.shape[0]
    if r == 0:
        return np.zeros((n, n), dtype=np.complex128)
    U = eigen.vectors[:, n - r :]
    lam = fn(eigen.values[n - r :])
    return (U * lam) @ U.conj().T


def psd_pseudo_inverse(A, cutoff: float = DEFAULT_CUTOFF, psd_tol: float = PSD_TOL) -> np.ndarray:
    """Moore-Penrose pseudo-inverse of a PSD matrix via its eigensystem."""
    eigen = hermitian_eigendecomposition(A)
    return spectral_function(eigen, lambda lam: 1.0 / lam, cutoff, psd_tol)


def psd_square_root(A, cutoff: float = DEFAULT_CUTOFF, psd_tol: float = PSD_TOL) -> np.ndarray:
    """PSD square root of a PSD matrix via its eigensystem."""
    eigen = hermitian_eigendecomposition(A)
    return spectral_function(eigen, np.sqrt, cutoff, psd_tol)


def spectral_norm(M) -> float:
    """Largest singular value; 0.0 for empty matrices."""
    A = np.asarray(M, dtype=np.complex128)
    if A.ndim != 2:
        raise NonSquare(f"expected a 2-D array, got ndim={A.ndim}")
    if A.size == 0:
        return 0.0
    try:
        s = np.linalg.svd(A, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(f"singular value computation failed: {exc}") from exc
    return float(s[0])
