"""Certified enclosures for seminorm, numerical radius, Crawford number.

The radius of a matrix M is the maximum over angles of the top eigenvalue
of the rotated Hermitian part H(t) = cos(t) P + sin(t) K, where
P = (M + M*)/2 and K = i (M - M*)/2.  The Crawford number replaces the top
eigenvalue by the bottom one and clamps at zero.  Both are computed by
branch and bound over the circle:

* every evaluated angle yields an attained value, so the running maximum
  is a true lower bound;
* each cell of half-width w carries the Lipschitz certificate
  value + |M| * w (the angle derivative of H is bounded by |M|);
* cells are additionally capped by a rotation certificate.  For the radius,
  a cell containing a maximizing angle satisfies value >= radius * cos(w),
  giving the cap value / cos(w).  For the Crawford number, the bottom
  eigenvector y at the cell center gives the cosine curve
  t -> Re(exp(it) y* M y) lying above the objective, whose exact maximum
  over the cell caps the cell.

Cells whose cap cannot beat the running lower bound are pruned; surviving
cells are subdivided until the enclosure gap meets the target or the round
budget runs out.  H(t + pi) = -H(t), so one eigensolve serves two angles.

Crawford upper ends are further capped by a Monte Carlo scan of
|y* M y| over random unit vectors, which bounds the infimum from above.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BadConfig, NoConvergence
from .kernel import as_matrix, spectral_norm
from .space import SemiHilbertSpace

__all__ = [
    "DEFAULT_GRID",
    "DEFAULT_GAP_SCALE",
    "DEFAULT_MAX_ROUNDS",
    "DEFAULT_MC_SAMPLES",
    "Enclosure",
    "RadiusOptions",
    "numerical_radius",
    "crawford_number",
    "op_seminorm",
    "a_numerical_radius",
    "crawford",
    "mc_radius_lower",
    "mc_crawford_upper",
    "ipoint",
    "iadd",
    "isub",
    "imul",
    "iscale",
    "isq",
    "isqrt",
    "imax",
    "imin",
    "iabs",
]

DEFAULT_GRID = 256
DEFAULT_GAP_SCALE = 1e-9
DEFAULT_MAX_ROUNDS = 20
DEFAULT_MC_SAMPLES = 4096
# Each refinement round splits every surviving cell in four.
_SUBDIV = 4
# Relative half-width assigned to directly computed (non-grid) values.
_EXACT_ERR = 1e-13
# Anti-Hermitian deviation below which the eigenvalue shortcut applies.
_SHORTCUT_TOL = 1e-13
# Evaluated eigenvalues carry backward-stable rounding error of order
# eps * norm, so attained values are only lower bounds up to that much.
_EVAL_ERR = 1e-13
_MC_CHUNK = 1 << 13


@dataclass(frozen=True)
class Enclosure:
    """Closed interval [lo, hi] certified to contain the true value."""

    lo: float
    hi: float
    method: str  # "grid" | "exact" | "oracle"

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise NoConvergence("enclosure ends are not finite")
        if self.lo > self.hi:
            raise BadConfig(f"enclosure lo {self.lo!r} exceeds hi {self.hi!r}")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)


@dataclass(frozen=True)
class RadiusOptions:
    """Knobs for the circle branch and bound and its Monte Carlo helpers.

    target_gap, when set, is the absolute enclosure gap to reach; when None
    the gap is gap_scale * (1 + |M|) per matrix.  oracle_samples drives the
    Monte Carlo cap inside the Crawford computation; seed is its stream.
    """

    grid_count: int = DEFAULT_GRID
    target_gap: float | None = None
    gap_scale: float = DEFAULT_GAP_SCALE
    max_rounds: int = DEFAULT_MAX_ROUNDS
    oracle_samples: int = DEFAULT_MC_SAMPLES
    seed: int = 0

    def __post_init__(self):
        if self.grid_count < 4:
            raise BadConfig("grid_count must be at least 4")
        if self.target_gap is not None and not self.target_gap > 0.0:
            raise BadConfig("target_gap must be positive")
        if not self.gap_scale > 0.0:
            raise BadConfig("gap_scale must be positive")
        if self.max_rounds < 0:
            raise BadConfig("max_rounds must be nonnegative")
        if self.oracle_samples < 0:
            raise BadConfig("oracle_samples must be nonnegative")

    def resolve_gap(self, norm: float) -> float:
        return self.target_gap if self.target_gap is not None else self.gap_scale * (1.0 + norm)


# -- interval helpers ------------------------------------------------------


def _join_method(*encs: Enclosure) -> str:
    methods = {e.method for e in encs}
    for tag in ("grid", "oracle"):
        if tag in methods:
            return tag
    return "exact"


def ipoint(value: float, method: str = "exact", err: float = 0.0) -> Enclosure:
    return Enclosure(value - err, value + err, method)


def iadd(a: Enclosure, b: Enclosure) -> Enclosure:
    return Enclosure(a.lo + b.lo, a.hi + b.hi, _join_method(a, b))


def isub(a: Enclosure, b: Enclosure) -> Enclosure:
    return Enclosure(a.lo - b.hi, a.hi - b.lo, _join_method(a, b))


def imul(a: Enclosure, b: Enclosure) -> Enclosure:
    ends = (a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi)
    return Enclosure(min(ends), max(ends), _join_method(a, b))


def iscale(c: float, a: Enclosure) -> Enclosure:
    ends = (c * a.lo, c * a.hi)
    return Enclosure(min(ends), max(ends), a.method)


def isq(a: Enclosure) -> Enclosure:
    return imul(a, a)


def isqrt(a: Enclosure) -> Enclosure:
    """Square root, clamping negative rounding at zero."""
    return Enclosure(math.sqrt(max(a.lo, 0.0)), math.sqrt(max(a.hi, 0.0)), a.method)


def imax(a: Enclosure, b: Enclosure) -> Enclosure:
    return Enclosure(max(a.lo, b.lo), max(a.hi, b.hi), _join_method(a, b))


def imin(a: Enclosure, b: Enclosure) -> Enclosure:
    return Enclosure(min(a.lo, b.lo), min(a.hi, b.hi), _join_method(a, b))


def iabs(a: Enclosure) -> Enclosure:
    lo = 0.0 if a.lo <= 0.0 <= a.hi else min(abs(a.lo), abs(a.hi))
    return Enclosure(lo, max(abs(a.lo), abs(a.hi)), a.method)


# -- rotated Hermitian pencil ----------------------------------------------


def _pencil(M: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return 0.5 * (M + M.conj().T), 0.5j * (M - M.conj().T)


def _batch_extremes(P, K, ts, vectors: bool = False):
    """Bottom and top eigenvalues (and vectors) of H(t) for each t."""
    m = P.shape[0]
    H = np.cos(ts)[:, None, None] * P + np.sin(ts)[:, None, None] * K
    if m == 1:
        w = H[:, 0, 0].real
        if vectors:
            ones = np.ones((ts.shape[0], 1), dtype=np.complex128)
            return w, w, ones, ones
        return w, w
    if m == 2 and not vectors:
        a, d, b = H[:, 0, 0].real, H[:, 1, 1].real, H[:, 0, 1]
        mean = 0.5 * (a + d)
        rad = np.sqrt(0.25 * (a - d) ** 2 + np.abs(b) ** 2)
        return mean - rad, mean + rad
    try:
        if vectors:
            w, V = np.linalg.eigh(H)
            return w[:, 0], w[:, -1], V[:, :, 0], V[:, :, -1]
        w = np.linalg.eigvalsh(H)
        return w[:, 0], w[:, -1]
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(f"batched eigendecomposition failed: {exc}") from exc


def _reduce_angles(thetas: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    t = np.mod(thetas, 2.0 * np.pi)
    flip = t >= np.pi
    return np.where(flip, t - np.pi, t), flip


def _quad_forms(M: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """y* M y for every row y of Y."""
    return np.sum(Y.conj() * (Y @ M.T), axis=1)


def _initial_cells(P, K, M, count: int, vectors: bool):
    """Evaluate the starting grid, exploiting H(t + pi) = -H(t)."""
    k = count + (count % 2)
    h = 2.0 * np.pi / k
    ts = h * np.arange(k // 2)
    centers = np.concatenate([ts, ts + np.pi])
    if vectors:
        wmin, wmax, vmin, vmax = _batch_extremes(P, K, ts, vectors=True)
        g = np.concatenate([wmax, -wmin])
        f = np.concatenate([wmin, -wmax])
        Y = np.concatenate([vmin, vmax], axis=0)
        q = _quad_forms(M, Y)
        return centers, g, f, q, h
    wmin, wmax = _batch_extremes(P, K, ts)
    g = np.concatenate([wmax, -wmin])
    f = np.concatenate([wmin, -wmax])
    return centers, g, f, None, h


def _wrap_angle(x: np.ndarray) -> np.ndarray:
    return np.mod(x + np.pi, 2.0 * np.pi) - np.pi


def _validate_input(M) -> np.ndarray:
    A = as_matrix(M)
    if A.size and not np.all(np.isfinite(A.view(np.float64))):
        raise NoConvergence("matrix has non-finite entries")
    return A


def numerical_radius(M, opts: RadiusOptions = RadiusOptions()) -> Enclosure:
    """Certified enclosure of the numerical radius of a square matrix."""
    A = _validate_input(M)
    m = A.shape[0]
    if m == 0:
        return Enclosure(0.0, 0.0, "exact")
    if m == 1:
        v = float(abs(A[0, 0]))
        err = _EXACT_ERR * v
        return Enclosure(max(v - err, 0.0), v + err, "exact")
    d = np.diagonal(A)
    if not (A - np.diag(d)).any():
        # Diagonal matrix: the range is the hull of the entries.
        v = float(np.max(np.abs(d)))
        err = _EXACT_ERR * v
        return Enclosure(max(v - err, 0.0), v + err, "exact")
    if m == 2 and d[0] == 0.0 and d[1] == 0.0:
        # Zero diagonal: the range is an ellipse centered at zero with
        # major semi-axis (|b| + |c|) / 2 from the off entries.
        v = 0.5 * (abs(complex(A[0, 1])) + abs(complex(A[1, 0])))
        err = _EXACT_ERR * v
        return Enclosure(max(v - err, 0.0), v + err, "exact")
    L = spectral_norm(A)
    if L == 0.0:
        return Enclosure(0.0, 0.0, "exact")
    gap = opts.resolve_gap(L)
    P, K = _pencil(A)
    # Shortcut: (skew-)Hermitian up to delta means the radius is the largest
    # absolute eigenvalue of the dominant part, up to delta.
    for H, delta in ((P, spectral_norm(K)), (K, spectral_norm(P))):
        if delta <= _SHORTCUT_TOL * (1.0 + L):
            w = np.linalg.eigvalsh(H)
            v = max(abs(float(w[0])), abs(float(w[-1])))
            err = delta + _EVAL_ERR * (1.0 + L)
            return Enclosure(max(v - err, 0.0), v + err, "exact")

    centers, g, _f, _q, h = _initial_cells(P, K, A, opts.grid_count, vectors=False)
    hw = 0.5 * h * (1.0 + 1e-12)
    lo = float(np.max(g))
    hi = lo + L * hw
    for round_no in range(opts.max_rounds + 1):
        lip = g + L * hw
        rot = np.where(g >= 0.0, g / np.cos(hw), -np.inf)
        ub = np.minimum(lip, rot)
        hi = max(lo, float(np.max(ub, initial=-np.inf)))
        if hi - lo <= gap or round_no == opts.max_rounds:
            break
        keep = ub > lo
        if not np.any(keep):
            hi = lo
            break
        kept = centers[keep]
        offsets = hw * (2.0 * np.arange(_SUBDIV) + 1.0 - _SUBDIV) / _SUBDIV
        centers = (kept[:, None] + offsets[None, :]).reshape(-1)
        hw /= _SUBDIV
        ts, flipmask = _reduce_angles(centers)
        wmin, wmax = _batch_extremes(P, K, ts)
        g = np.where(flipmask, -wmin, wmax)
        lo = max(lo, float(np.max(g)))
    err = _EVAL_ERR * (1.0 + L)
    return Enclosure(max(lo - err, 0.0), max(hi, lo, 0.0) + err, "grid")


def _mc_unit_rows(rng, count: int, dim: int) -> np.ndarray:
    Y = rng.standard_normal((count, dim)) + 1j * rng.standard_normal((count, dim))
    norms = np.linalg.norm(Y, axis=1)
    # A zero draw has probability zero; guard against it anyway.
    norms[norms == 0.0] = 1.0
    return Y / norms[:, None]


def _mc_extreme(M: np.ndarray, samples: int, seed: int, reduce_max: bool) -> float:
    m = M.shape[0]
    rng = np.random.default_rng(seed)
    best = -np.inf if reduce_max else np.inf
    done = 0
    while done < samples:
        chunk = min(_MC_CHUNK, samples - done)
        vals = np.abs(_quad_forms(M, _mc_unit_rows(rng, chunk, m)))
        best = max(best, float(np.max(vals))) if reduce_max else min(best, float(np.min(vals)))
        done += chunk
    return best


def crawford_number(M, opts: RadiusOptions = RadiusOptions()) -> Enclosure:
    """Certified enclosure of the Crawford number (distance from zero to
    the numerical range, zero when the range contains zero)."""
    A = _validate_input(M)
    m = A.shape[0]
    if m == 0:
        return Enclosure(0.0, 0.0, "exact")
    if m == 1:
        v = float(abs(A[0, 0]))
        err = _EXACT_ERR * v
        return Enclosure(max(v - err, 0.0), v + err, "exact")
    if not np.diagonal(A).any():
        # A zero diagonal entry is attained by a basis vector, so the
        # infimum over the unit sphere is exactly zero.
        return Enclosure(0.0, 0.0, "exact")
    L = spectral_norm(A)
    if L == 0.0:
        return Enclosure(0.0, 0.0, "exact")
    gap = opts.resolve_gap(L)
    cap = np.inf
    if opts.oracle_samples > 0:
        cap = _mc_extreme(A, opts.oracle_samples, opts.seed, reduce_max=False)
    P, K = _pencil(A)

    centers, _g, f, q, h = _initial_cells(P, K, A, opts.grid_count, vectors=True)
    hw = 0.5 * h * (1.0 + 1e-12)
    lo = float(np.max(f))
    hi = lo + L * hw
    method = "grid"
    for round_no in range(opts.max_rounds + 1):
        lip = f + L * hw
        # Exact maximum over the cell of the tangent cosine curve.
        dist = np.abs(_wrap_angle(-np.angle(q) - centers))
        rot = np.abs(q) * np.cos(np.maximum(dist - hw, 0.0))
        ub = np.minimum(lip, rot)
        hi = max(lo, float(np.max(ub, initial=-np.inf)))
        lo_c, hi_c = max(lo, 0.0), max(hi, 0.0)
        if min(hi_c, max(cap, lo_c)) - lo_c <= gap or round_no == opts.max_rounds:
            break
        keep = ub > max(lo, 0.0)
        if not np.any(keep):
            hi = lo
            break
        kept = centers[keep]
        offsets = hw * (2.0 * np.arange(_SUBDIV) + 1.0 - _SUBDIV) / _SUBDIV
        centers = (kept[:, None] + offsets[None, :]).reshape(-1)
        hw /= _SUBDIV
        ts, flipmask = _reduce_angles(centers)
        wmin, wmax, vmin, vmax = _batch_extremes(P, K, ts, vectors=True)
        f = np.where(flipmask, -wmax, wmin)
        Y = np.where(flipmask[:, None], vmax, vmin)
        q = _quad_forms(A, Y)
        lo = max(lo, float(np.max(f)))
    err = _EVAL_ERR * (1.0 + L)
    lo_c, hi_c = max(lo - err, 0.0), max(hi, lo, 0.0) + err
    if cap + err < hi_c:
        hi_c = max(cap + err, lo_c)
        method = "oracle"
    return Enclosure(lo_c, hi_c, method)


# -- seminorm-based functionals --------------------------------------------


def op_seminorm(space: SemiHilbertSpace, T) -> Enclosure:
    """Operator seminorm, the spectral norm of the reduced matrix."""
    M = space.tilde(T)
    v = float(abs(M[0, 0])) if M.size == 1 else spectral_norm(M)
    err = _EXACT_ERR * v
    return Enclosure(max(v - err, 0.0), v + err, "exact")


def a_numerical_radius(space: SemiHilbertSpace, T, opts: RadiusOptions = RadiusOptions()) -> Enclosure:
    """Numerical radius taken in the semi-inner product geometry."""
    return numerical_radius(space.tilde(T), opts)


def crawford(space: SemiHilbertSpace, T, opts: RadiusOptions = RadiusOptions()) -> Enclosure:
    """Crawford number taken in the semi-inner product geometry."""
    return crawford_number(space.tilde(T), opts)


def mc_radius_lower(space: SemiHilbertSpace, T, samples: int, seed: int = 0) -> float:
    """Monte Carlo lower bound: the best |y* My| over sampled unit vectors.

    Always <= the true radius; 0.0 when no samples are drawn or the
    reduced space is trivial.
    """
    if samples < 0:
        raise BadConfig("samples must be nonnegative")
    red = space.tilde(T)
    if samples == 0 or red.shape[0] == 0:
        return 0.0
    return _mc_extreme(red, samples, seed, reduce_max=True)


def mc_crawford_upper(space: SemiHilbertSpace, T, samples: int, seed: int = 0) -> float:
    """Monte Carlo upper bound: the worst |y* My| over sampled unit vectors.

    Always >= the true Crawford number.  With no samples the vacuous bound
    is +inf; a trivial reduced space gives 0.0.
    """
    if samples < 0:
        raise BadConfig("samples must be nonnegative")
    red = space.tilde(T)
    if red.shape[0] == 0:
        return 0.0
    if samples == 0:
        return math.inf
    return _mc_extreme(red, samples, seed, reduce_max=False)
