"""Deterministic random generation of seeds, operators, and vectors.

Every draw is reproducible from integer seeds.  Sub-seeds for independent
streams come from ``derive_seed``, which feeds a derivation path into
numpy's splittable ``SeedSequence``; adding trials or operands never
shifts the streams of earlier ones.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadConfig, DegenerateSpace
from .kernel import DEFAULT_CUTOFF
from .space import SemiHilbertSpace, SemiOperator, build_space

SPECTRUM_LAWS = ("uniform", "equal", "geometric")

# Smallest-to-largest ratio of the geometric law, chosen to stress the
# rank cutoff from well above it so the numerical rank stays exact.
_GEOMETRIC_SPAN = 1e-6

_BUNDLE_SINGLES = ("T", "S", "X", "Y", "T1", "T2", "S1", "S2")


def derive_seed(master: int, *path: int) -> int:
    """Stable 64-bit sub-seed for a derivation path under a master seed."""
    state = np.random.SeedSequence(master, spawn_key=tuple(path)).generate_state(2)
    return int(state[0]) | (int(state[1]) << 32)


def _as_rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def _ginibre(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return (
        rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))
    ) / np.sqrt(2.0)


def haar_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    """Haar-distributed unitary via QR of a Ginibre matrix with phase fix."""
    Q, R = np.linalg.qr(_ginibre(rng, n, n))
    d = np.diagonal(R).copy()
    d[d == 0] = 1.0
    return Q * (d / np.abs(d))


@dataclass(frozen=True)
class SampleConfig:
    """Shape of one random seed operator draw."""

    dim: int
    rank: int
    law: str = "uniform"
    lam_min: float = 0.1
    lam_max: float = 2.0
    scale: float = 1.0
    master_seed: int = 0
    cutoff: float = DEFAULT_CUTOFF

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise BadConfig(f"dim must be positive, got {self.dim}")
        if not 0 <= self.rank <= self.dim:
            raise BadConfig(f"rank must lie in [0, {self.dim}], got {self.rank}")
        if self.law not in SPECTRUM_LAWS:
            raise BadConfig(f"unknown spectrum law {self.law!r}")
        if self.rank > 0 and not 0.0 < self.lam_min <= self.lam_max:
            raise BadConfig("spectrum bounds need 0 < lam_min <= lam_max")
        if self.scale < 0.0:
            raise BadConfig(f"scale must be nonnegative, got {self.scale}")
        if self.master_seed < 0:
            raise BadConfig(f"master_seed must be non-negative, got {self.master_seed}")


def _spectrum(config: SampleConfig, rng: np.random.Generator) -> np.ndarray:
    r = config.rank
    if config.law == "uniform":
        return rng.uniform(config.lam_min, config.lam_max, size=r)
    if config.law == "equal":
        return np.full(r, config.lam_max)
    top = rng.uniform(config.lam_min, config.lam_max)
    ratio = _GEOMETRIC_SPAN ** (1.0 / max(r - 1, 1))
    return top * ratio ** np.arange(r)


def sample_space(config: SampleConfig) -> SemiHilbertSpace:
    """Random PSD seed operator with exact numerical rank ``config.rank``."""
    rng = _as_rng(config.master_seed)
    n, r = config.dim, config.rank
    if r == 0:
        return build_space(np.zeros((n, n)), cutoff=config.cutoff)
    if config.law == "equal" and r == n:
        # Unitary conjugation of a scalar matrix is itself; skip the
        # rotation so the seed comes out exactly scalar.
        return build_space(config.lam_max * np.eye(n), cutoff=config.cutoff)
    lam = _spectrum(config, rng)
    U = haar_unitary(rng, n)
    A = (U[:, :r] * lam) @ U[:, :r].conj().T
    return build_space(0.5 * (A + A.conj().T), cutoff=config.cutoff)


def sample_operator_in_BA(space: SemiHilbertSpace, scale: float = 1.0, seed=0) -> SemiOperator:
    """Random operator that maps the null space of the seed into itself.

    In the eigenbasis of the seed (null coordinates first) the block from
    null to range coordinates is zeroed, which makes the operator both
    adjoint-admitting and seminorm-bounded.
    """
    if scale < 0.0:
        raise BadConfig(f"scale must be nonnegative, got {scale}")
    rng = _as_rng(seed)
    n, r = space.dim, space.rank
    G = scale * _ginibre(rng, n, n)
    G[n - r :, : n - r] = 0.0
    V = space.eigen.vectors
    return space.register(V @ G @ V.conj().T)


def sample_a_selfadjoint(space: SemiHilbertSpace, seed=0, scale: float = 1.0) -> SemiOperator:
    """Selfadjoint part of a random admissible operator."""
    return space.re_part(sample_operator_in_BA(space, scale, seed))


def sample_unit_vector(space: SemiHilbertSpace, seed=0) -> np.ndarray:
    """Vector of seminorm one, uniform over the reduced coordinate sphere."""
    r = space.rank
    if r == 0:
        raise DegenerateSpace("no unit vectors exist for a rank-zero seed")
    rng = _as_rng(seed)
    y = _ginibre(rng, r, 1)[:, 0]
    return space.coord_lift @ (y / np.linalg.norm(y))


def sample_unit_vectors(space: SemiHilbertSpace, count: int, seed=0) -> np.ndarray:
    """Matrix whose columns are independent seminorm-one vectors."""
    r = space.rank
    if r == 0:
        raise DegenerateSpace("no unit vectors exist for a rank-zero seed")
    rng = _as_rng(seed)
    Y = _ginibre(rng, r, count)
    return space.coord_lift @ (Y / np.linalg.norm(Y, axis=0))


def sample_commuting_pair(
    space: SemiHilbertSpace, scale: float = 1.0, seed=0
) -> tuple[SemiOperator, SemiOperator]:
    """Two commuting admissible operators, polynomials in a common draw."""
    rng = _as_rng(seed)
    R = sample_operator_in_BA(space, scale, rng).matrix
    R2 = R @ R
    eye = np.eye(space.dim)
    coeffs = _ginibre(rng, 2, 3)
    first = coeffs[0, 0] * eye + coeffs[0, 1] * R + coeffs[0, 2] * R2
    second = coeffs[1, 0] * eye + coeffs[1, 1] * R + coeffs[1, 2] * R2
    return space.register(first), space.register(second)


def sample_bundle(space: SemiHilbertSpace, scale: float = 1.0, seed: int = 0) -> dict[str, np.ndarray]:
    """Named operand set used by the check catalog, one stream per name."""
    out: dict[str, np.ndarray] = {}
    for k, name in enumerate(_BUNDLE_SINGLES):
        out[name] = sample_operator_in_BA(space, scale, derive_seed(seed, k)).matrix
    k = len(_BUNDLE_SINGLES)
    out["Tsa"] = sample_a_selfadjoint(space, derive_seed(seed, k), scale).matrix
    first, second = sample_commuting_pair(space, scale, derive_seed(seed, k + 1))
    out["P"], out["Q"] = first.matrix, second.matrix
    return out
