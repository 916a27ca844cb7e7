"""Semi-inner-product geometry induced by a PSD seed matrix.

A PSD seed A defines the semi-inner product (x, y) -> y* A x and the
seminorm |x|_A.  Operators that map the null space of A into itself act on
the quotient; their action is realized on coordinates by an r x r matrix
(the "reduced" matrix) through the coordinate map C = diag(sqrt(kept
eigenvalues)) U_r*, which satisfies |C x| = |x|_A.

All factors derived from A (square root, pseudo-inverse, range projection,
coordinate map) come from one shared eigendecomposition, so identities that
hold in exact arithmetic hold here to rounding accuracy.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, NotABounded, NotInBA
from .kernel import (
    DEFAULT_CUTOFF,
    HERMITIAN_TOL,
    PSD_TOL,
    EigenData,
    as_matrix,
    hermitian_eigendecomposition,
    psd_rank,
    spectral_norm,
)

__all__ = ["FACT_TOL", "SemiOperator", "SemiHilbertSpace", "build_space"]

# Relative tolerance for the two operator membership tests.
FACT_TOL = 1e-8

# Registered-operator cache entries kept per space before a reset.
_OP_CACHE_LIMIT = 512


@dataclass
class SemiOperator:
    """A square matrix together with its cached membership facts."""

    matrix: np.ndarray
    admits_adjoint: bool
    a_bounded: bool
    space: "SemiHilbertSpace"
    _tilde: np.ndarray | None = field(default=None, repr=False)
    _sharp: np.ndarray | None = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


class SemiHilbertSpace:
    """Finite-dimensional space carrying a PSD seed matrix.

    Build instances with build_space; the constructor wires the factors
    produced from the seed's eigendecomposition.
    """

    def __init__(
        self,
        matrix: np.ndarray,
        eigen: EigenData,
        cutoff: float,
        hermitian_tol: float,
        psd_tol: float,
        fact_tol: float,
    ):
        n = matrix.shape[0]
        r = psd_rank(eigen.values, cutoff, psd_tol)
        self.matrix = matrix
        self.eigen = eigen
        self.dim = n
        self.rank = r
        self.cutoff = cutoff
        self.hermitian_tol = hermitian_tol
        self.psd_tol = psd_tol
        self.fact_tol = fact_tol

        U_r = eigen.vectors[:, n - r :]
        lam = np.maximum(eigen.values[n - r :], 0.0)
        self.sqrt = (U_r * np.sqrt(lam)) @ U_r.conj().T
        self.pinv = (U_r * (1.0 / lam if r else lam)) @ U_r.conj().T
        self.pinv_sqrt = (U_r * (lam**-0.5 if r else lam)) @ U_r.conj().T
        self.proj_range = U_r @ U_r.conj().T
        self.proj_null = np.eye(n) - self.proj_range
        # Coordinate map: r x n, isometry from the quotient onto C^r.
        self.coord_map = np.sqrt(lam)[:, None] * U_r.conj().T
        # Right inverse of the coordinate map on the range.
        self.coord_lift = U_r * (lam**-0.5 if r else lam)
        self.seed_norm = float(lam[-1]) if r else 0.0
        self._doubled: SemiHilbertSpace | None = None
        self._op_cache: dict[bytes, SemiOperator] = {}

    # -- vectors ---------------------------------------------------------

    def _as_vector(self, x) -> np.ndarray:
        v = np.asarray(x, dtype=np.complex128).reshape(-1)
        if v.shape[0] != self.dim:
            raise DimensionMismatch(f"vector length {v.shape[0]} != dim {self.dim}")
        return v

    def a_inner(self, x, y) -> complex:
        """Semi-inner product of x against y (conjugate-linear in y)."""
        xv, yv = self._as_vector(x), self._as_vector(y)
        return complex(yv.conj() @ (self.matrix @ xv))

    def a_vec_norm(self, x) -> float:
        """Seminorm of a vector; zero on the null space of the seed."""
        xv = self._as_vector(x)
        val = float(np.real(xv.conj() @ (self.matrix @ xv)))
        return float(np.sqrt(max(val, 0.0)))

    # -- operator membership ---------------------------------------------

    def _as_square(self, M) -> np.ndarray:
        T = as_matrix(M)
        if T.shape[0] != self.dim:
            raise DimensionMismatch(f"operator is {T.shape[0]}x{T.shape[1]}, space dim is {self.dim}")
        return T

    def admits_a_adjoint(self, M) -> bool:
        """Whether the adjoint equation X* seed = seed M has a solution.

        Tested as: the part of M* seed leaving the range of the seed is
        negligible relative to the operator scales involved.
        """
        T = M.matrix if isinstance(M, SemiOperator) else self._as_square(M)
        resid = self.proj_null @ (T.conj().T @ self.matrix)
        # Frobenius norms: they dominate the operator norm on the residual
        # side, so acceptance here is the stricter test.
        bound = self.fact_tol * (1.0 + self.seed_norm * float(np.linalg.norm(T)))
        return float(np.linalg.norm(resid)) <= bound

    def is_a_bounded(self, M) -> bool:
        """Whether the seminorm of M x is controlled by the seminorm of x.

        Tested as: M maps the null space of the seed into itself, i.e. the
        coordinate image of M restricted to the null space is negligible.
        """
        T = M.matrix if isinstance(M, SemiOperator) else self._as_square(M)
        resid = self.coord_map @ T @ self.proj_null
        bound = self.fact_tol * (1.0 + np.sqrt(self.seed_norm) * float(np.linalg.norm(T)))
        return float(np.linalg.norm(resid)) <= bound

    def register(self, M) -> SemiOperator:
        """Wrap a matrix with its membership facts computed once."""
        T = self._as_square(M)
        return SemiOperator(
            matrix=T,
            admits_adjoint=self.admits_a_adjoint(T),
            a_bounded=self.is_a_bounded(T),
            space=self,
        )

    def _as_operator(self, M) -> SemiOperator:
        if isinstance(M, SemiOperator):
            if M.space is not self:
                raise DimensionMismatch("operator belongs to a different space")
            return M
        T = self._as_square(M)
        key = T.tobytes()
        op = self._op_cache.get(key)
        if op is None:
            if len(self._op_cache) >= _OP_CACHE_LIMIT:
                self._op_cache.clear()
            op = self.register(T)
            self._op_cache[key] = op
        return op

    # -- adjoint and reduction -------------------------------------------

    def sharp(self, M) -> np.ndarray:
        """Canonical adjoint solution pinv(seed) M* seed.

        Defined only for operators admitting an adjoint; the result maps
        the range of the seed into itself.
        """
        op = self._as_operator(M)
        if not op.admits_adjoint:
            raise NotInBA("operator admits no adjoint for this seed")
        if op._sharp is None:
            op._sharp = self.pinv @ op.matrix.conj().T @ self.matrix
        return op._sharp

    def tilde(self, M) -> np.ndarray:
        """Reduced r x r matrix acting on quotient coordinates.

        Satisfies coord_map @ M = tilde(M) @ coord_map for seminorm-bounded
        operators, so every seminorm-based functional of M equals the
        corresponding plain functional of tilde(M).
        """
        op = self._as_operator(M)
        if not op.a_bounded:
            raise NotABounded("operator is not bounded for this seminorm")
        if op._tilde is None:
            op._tilde = self.coord_map @ op.matrix @ self.coord_lift
        return op._tilde

    def re_part(self, M) -> SemiOperator:
        """Selfadjoint part (M + sharp(M)) / 2."""
        op = self._as_operator(M)
        return self.register(0.5 * (op.matrix + self.sharp(op)))

    def im_part(self, M) -> SemiOperator:
        """Skew part (M - sharp(M)) / (2i); itself selfadjoint for the seed."""
        op = self._as_operator(M)
        return self.register(-0.5j * (op.matrix - self.sharp(op)))

    def is_a_selfadjoint(self, M) -> bool:
        """Whether seed @ M is Hermitian within tolerance."""
        T = M.matrix if isinstance(M, SemiOperator) else self._as_square(M)
        AM = self.matrix @ T
        scale = 1.0 + self.seed_norm * spectral_norm(T)
        return spectral_norm(AM - AM.conj().T) <= self.fact_tol * scale

    def is_a_positive(self, M) -> bool:
        """Whether seed @ M is Hermitian PSD within tolerance."""
        T = M.matrix if isinstance(M, SemiOperator) else self._as_square(M)
        if not self.is_a_selfadjoint(T):
            return False
        AM = self.matrix @ T
        H = 0.5 * (AM + AM.conj().T)
        lam_min = float(np.linalg.eigvalsh(H)[0]) if self.dim else 0.0
        scale = 1.0 + self.seed_norm * spectral_norm(T)
        return lam_min >= -self.psd_tol * scale

    # -- doubled space and two-by-two blocks -----------------------------

    def double(self) -> "SemiHilbertSpace":
        """Space of twice the dimension seeded by seed (+) seed.

        The doubled eigensystem is assembled from the original one instead of
        refactored, so reductions of block operators keep zero blocks exact.
        """
        if self._doubled is None:
            n = self.dim
            AA = np.zeros((2 * n, 2 * n), dtype=np.complex128)
            AA[:n, :n] = self.matrix
            AA[n:, n:] = self.matrix
            values = np.repeat(self.eigen.values, 2)
            vectors = np.zeros((2 * n, 2 * n), dtype=np.complex128)
            vectors[:n, 0::2] = self.eigen.vectors
            vectors[n:, 1::2] = self.eigen.vectors
            self._doubled = SemiHilbertSpace(
                AA,
                EigenData(values=values, vectors=vectors),
                self.cutoff,
                self.hermitian_tol,
                self.psd_tol,
                self.fact_tol,
            )
        return self._doubled

    def block2(self, T, S, layout: str = "diagonal") -> SemiOperator:
        """Two-by-two block operator on the doubled space.

        layout "diagonal" places T and S on the diagonal; "antidiagonal"
        places T upper right and S lower left.  Blocks built from admissible
        operators are admissible; this is asserted.
        """
        opT, opS = self._as_operator(T), self._as_operator(S)
        n = self.dim
        B = np.zeros((2 * n, 2 * n), dtype=np.complex128)
        if layout == "diagonal":
            B[:n, :n] = opT.matrix
            B[n:, n:] = opS.matrix
        elif layout == "antidiagonal":
            B[:n, n:] = opT.matrix
            B[n:, :n] = opS.matrix
        else:
            raise DimensionMismatch(f"unknown block layout {layout!r}")
        out = self.double().register(B)
        if opT.admits_adjoint and opS.admits_adjoint:
            assert out.admits_adjoint and out.a_bounded
        return out


def build_space(
    A,
    cutoff: float = DEFAULT_CUTOFF,
    hermitian_tol: float = HERMITIAN_TOL,
    psd_tol: float = PSD_TOL,
    fact_tol: float = FACT_TOL,
) -> SemiHilbertSpace:
    """Validate a PSD seed matrix and derive all factors from one eigensystem."""
    M = as_matrix(A)
    eigen = hermitian_eigendecomposition(M, hermitian_tol)
    psd_rank(eigen.values, cutoff, psd_tol)  # raises NotPSD on violation
    H = 0.5 * (M + M.conj().T)
    return SemiHilbertSpace(H, eigen, cutoff, hermitian_tol, psd_tol, fact_tol)
