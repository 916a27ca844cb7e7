"""Directional checks over operator tuples, evaluated with enclosures.

Each catalog entry states one inequality or identity between functionals
of named operands.  Both sides are evaluated as enclosures and compared
direction-safely: an upper bound claim passes certified only when the
entire left enclosure sits at or below the entire right enclosure, up
to a floor that absorbs last-place rounding between parallel routes.
Entries carrying a sign choice evaluate both variants and record the one
with the worse slack.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import (
    BadConfig,
    EmptyInput,
    MembershipViolated,
    PreconditionFailed,
    UnknownCheck,
)
from .functionals import (
    Enclosure,
    RadiusOptions,
    a_numerical_radius,
    crawford,
    iabs,
    iadd,
    imax,
    imin,
    imul,
    ipoint,
    iscale,
    isq,
    isqrt,
    isub,
    op_seminorm,
)
from .instances import content_seed
from .sampler import sample_unit_vectors
from .space import SemiHilbertSpace

LE, GE, EQ, CONDITIONAL = "le", "ge", "eq", "conditional"

PASS_CERTIFIED = "PASS_CERTIFIED"
PASS_UNCERTIFIED = "PASS_UNCERTIFIED"
VIOLATION_CANDIDATE = "VIOLATION_CANDIDATE"
SKIPPED = "SKIPPED"

VIOLATION_TOL = 1e-7
CERT_EPS = 1e-11
EQ_TOL = 1e-9
EQUALITY_TOL = 1e-6
TIGHTNESS_EPS = 1e-15
VECTOR_COUNT = 32
RADIUS_FLOOR = 1e-12

_2SQRT2 = 2.0 * math.sqrt(2.0)


class _Skip(Exception):
    """Internal: a check declined to evaluate on this instance."""


@dataclass(frozen=True)
class CheckDefinition:
    check_id: str
    operands: tuple[str, ...]
    direction: str
    formula: str
    evaluate: Callable


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    instance: str
    lhs: Enclosure
    rhs: Enclosure
    slack: float
    verdict: str
    tightness: float
    variant: str = ""
    notes: dict = field(default_factory=dict)


class Evaluator:
    """Shared per-instance evaluation state with memoized functionals.

    Keys are the exact bytes of the matrices, so identical derived
    operands hit the cache no matter which check built them.
    """

    def __init__(self, space: SemiHilbertSpace, operands, opts: RadiusOptions | None = None):
        self.space = space
        self.ops = {name: np.asarray(M, dtype=np.complex128) for name, M in operands.items()}
        self.opts = opts if opts is not None else RadiusOptions()
        self._cache: dict[tuple, object] = {}

    def mat(self, name: str) -> np.ndarray:
        try:
            return self.ops[name]
        except KeyError:
            raise BadConfig(f"operand {name!r} not supplied") from None

    def _space_for(self, M: np.ndarray) -> SemiHilbertSpace:
        return self.space if M.shape[0] == self.space.dim else self.space.double()

    def _memo(self, tag: str, M: np.ndarray, compute: Callable):
        key = (tag, M.shape[0], M.tobytes())
        if key not in self._cache:
            self._cache[key] = compute()
        return self._cache[key]

    def member_ok(self, name: str) -> bool:
        key = ("member", name)
        if key not in self._cache:
            M = self.mat(name)
            self._cache[key] = bool(
                self.space.admits_a_adjoint(M) and self.space.is_a_bounded(M)
            )
        return self._cache[key]

    def sharp(self, M: np.ndarray) -> np.ndarray:
        return self._memo("sharp", M, lambda: self.space.sharp(M))

    def re(self, M: np.ndarray) -> np.ndarray:
        return 0.5 * (M + self.sharp(M))

    def im(self, M: np.ndarray) -> np.ndarray:
        return -0.5j * (M - self.sharp(M))

    def block(self, X: np.ndarray, Y: np.ndarray, layout: str) -> np.ndarray:
        key = ("block", layout, X.tobytes(), Y.tobytes())
        if key not in self._cache:
            self._cache[key] = self.space.block2(X, Y, layout).matrix
        return self._cache[key]

    def radius(self, M: np.ndarray) -> Enclosure:
        return self._memo(
            "radius", M, lambda: a_numerical_radius(self._space_for(M), M, self.opts)
        )

    def crawford(self, M: np.ndarray) -> Enclosure:
        return self._memo(
            "crawford", M, lambda: crawford(self._space_for(M), M, self.opts)
        )

    def norm(self, M: np.ndarray) -> Enclosure:
        return self._memo("norm", M, lambda: op_seminorm(self._space_for(M), M))


# -- shared composite quantities --------------------------------------------


def _part_gap(ev: Evaluator, M: np.ndarray) -> Enclosure:
    """| seminorm(re part)^2 - seminorm(im part)^2 |."""
    return iabs(isub(isq(ev.norm(ev.re(M))), isq(ev.norm(ev.im(M)))))


def _damped_radius_sq(ev: Evaluator, M: np.ndarray) -> Enclosure:
    """sqrt(radius(M)^2 - part_gap(M)/2), the refinement factor."""
    return isqrt(isub(isq(ev.radius(M)), iscale(0.5, _part_gap(ev, M))))


def _f_mixed(ev: Evaluator, X: np.ndarray, Y: np.ndarray) -> Enclosure:
    """seminorm(Y) * sqrt(radius(X)^2 - part_gap(X)/2)."""
    return imul(ev.norm(Y), _damped_radius_sq(ev, X))


def _coarse_commutator_rhs(ev: Evaluator) -> Enclosure:
    T, S = ev.mat("T"), ev.mat("S")
    return iscale(
        _2SQRT2,
        imin(imul(ev.norm(T), ev.radius(S)), imul(ev.norm(S), ev.radius(T))),
    )


def _pm(L: np.ndarray, R: np.ndarray):
    return (("+", L + R), ("-", L - R))


# -- check evaluators --------------------------------------------------------


def _c1(ev: Evaluator):
    T = ev.mat("T")
    w, nrm = ev.radius(T), ev.norm(T)
    return [
        ("lower", iscale(0.5, nrm), w),
        ("upper", w, nrm),
    ]


def _c2(ev: Evaluator):
    Tsa = ev.mat("Tsa")
    if not ev.space.is_a_selfadjoint(Tsa):
        raise PreconditionFailed("operand Tsa is not selfadjoint for the seed")
    return [("", ev.norm(Tsa), ev.radius(Tsa))]


def _c3(ev: Evaluator):
    T = ev.mat("T")
    Ts = ev.sharp(T)
    left = ev.norm(Ts @ T)
    return [
        ("products", left, ev.norm(T @ Ts)),
        ("norm-square", left, isq(ev.norm(T))),
        ("adjoint-norm", left, isq(ev.norm(Ts))),
    ]


def _c4(ev: Evaluator):
    T = ev.mat("T")
    Ts = ev.sharp(T)
    d = ev.norm(Ts @ T + T @ Ts)
    wsq = isq(ev.radius(T))
    return [
        ("lower", iscale(0.25, d), wsq),
        ("upper", wsq, iscale(0.5, d)),
    ]


def _c5(ev: Evaluator):
    T, S = ev.mat("T"), ev.mat("S")
    rhs = _coarse_commutator_rhs(ev)
    return [(v, ev.radius(M), rhs) for v, M in _pm(T @ S, S @ T)]


def _c6(ev: Evaluator):
    T1, S1 = ev.mat("T1"), ev.mat("S1")
    T2, S2 = ev.mat("T2"), ev.mat("S2")
    left_factor = isqrt(ev.norm(T1 @ ev.sharp(T1) + ev.sharp(T2) @ T2))
    right_factor = isqrt(ev.norm(ev.sharp(S1) @ S1 + S2 @ ev.sharp(S2)))
    rhs = imul(left_factor, right_factor)
    return [(v, ev.radius(M), rhs) for v, M in _pm(T1 @ S1, S2 @ T2)]


def _c7(ev: Evaluator):
    T, S = ev.mat("T"), ev.mat("S")
    return [
        (
            "diag-radius",
            ev.radius(ev.block(T, S, "diagonal")),
            imax(ev.radius(T), ev.radius(S)),
        ),
        ("antidiag-radius", ev.radius(ev.block(T, T, "antidiagonal")), ev.radius(T)),
        (
            "diag-norm",
            ev.norm(ev.block(T, S, "diagonal")),
            imax(ev.norm(T), ev.norm(S)),
        ),
        (
            "antidiag-norm",
            ev.norm(ev.block(T, S, "antidiagonal")),
            imax(ev.norm(T), ev.norm(S)),
        ),
    ]


def _c8(ev: Evaluator):
    T1, T2, S = ev.mat("T1"), ev.mat("T2"), ev.mat("S")
    rhs = iscale(4.0, imul(ev.radius(ev.block(T1, T2, "antidiagonal")), ev.radius(S)))
    return [(v, ev.radius(M), rhs) for v, M in _pm(T1 @ S, S @ T2)]


def _c9(ev: Evaluator):
    T, S = ev.mat("T"), ev.mat("S")
    rhs = iscale(4.0, imul(ev.radius(T), ev.radius(S)))
    return [(v, ev.radius(M), rhs) for v, M in _pm(T @ S, S @ T)]


def _c10(ev: Evaluator):
    P, Q = ev.mat("P"), ev.mat("Q")
    comm = np.linalg.norm(P @ Q - Q @ P, 2)
    scale = 1.0 + np.linalg.norm(P, 2) * np.linalg.norm(Q, 2)
    if comm > ev.space.fact_tol * scale:
        raise PreconditionFailed(f"operands do not commute: deviation {comm:.3e}")
    rhs = iscale(2.0, imul(ev.radius(P), ev.radius(Q)))
    return [("", ev.radius(P @ Q), rhs)]


def _c11(ev: Evaluator):
    T, S = ev.mat("T"), ev.mat("S")
    lhs = ev.norm(T @ ev.sharp(T) + ev.sharp(S) @ S)
    rhs = iadd(imax(isq(ev.norm(T)), isq(ev.norm(S))), ev.norm(S @ T))
    return [("", lhs, rhs)]


def _c12(ev: Evaluator):
    X, Y = ev.mat("X"), ev.mat("Y")
    lhs = ev.radius(ev.block(X, Y, "antidiagonal"))
    inner = iadd(
        ev.norm(ev.sharp(X) @ X + Y @ ev.sharp(Y)),
        iscale(2.0, ev.crawford(Y @ X)),
    )
    return [("", lhs, iscale(0.5, isqrt(inner)))]


def _c13(ev: Evaluator):
    T, S, X, Y = ev.mat("T"), ev.mat("S"), ev.mat("X"), ev.mat("Y")
    wblock = ev.radius(ev.block(X, Y, "antidiagonal"))
    first = isqrt(iadd(imax(isq(ev.norm(T)), isq(ev.norm(S))), ev.norm(S @ T)))
    second = isqrt(isub(isq(wblock), iscale(0.5, ev.crawford(Y @ X))))
    mid = iscale(2.0, imul(first, second))
    outer = iscale(_2SQRT2, imul(imax(ev.norm(T), ev.norm(S)), wblock))
    notes = {"chain_slack": outer.lo - mid.hi}
    variants = [(v, ev.radius(M), mid) for v, M in _pm(T @ X, Y @ S)]
    variants.append(("chain", mid, outer))
    return variants, notes


def _c14(ev: Evaluator):
    T, S = ev.mat("T"), ev.mat("S")
    nt, ns = ev.norm(T), ev.norm(S)
    prod = imul(nt, ns)
    mean = iscale(0.5, iadd(isq(nt), isq(ns)))
    top = imax(isq(nt), isq(ns))
    return [
        ("product", ev.norm(S @ T), prod),
        ("mean", prod, mean),
        ("max", mean, top),
    ]


def _c15(ev: Evaluator):
    T = ev.mat("T")
    if ev.space.rank == 0:
        raise PreconditionFailed("no unit vectors exist for a rank-zero seed")
    w = ev.radius(T)
    Tn = T / w.hi if w.hi > RADIUS_FLOOR else T
    Tns = ev.sharp(Tn)
    X = sample_unit_vectors(ev.space, VECTOR_COUNT, content_seed(ev.space.matrix, T))
    A = ev.space.matrix
    V, W = Tn @ X, Tns @ X
    vals = np.einsum("ij,ij->j", V.conj(), A @ V) + np.einsum("ij,ij->j", W.conj(), A @ W)
    worst = float(np.max(np.maximum(vals.real, 0.0)))
    lhs = ipoint(worst, err=1e-10 * (1.0 + worst))
    rhs = iscale(4.0, isub(ipoint(1.0), iscale(0.5, _part_gap(ev, Tn))))
    return [("", lhs, rhs)]


def _c16(ev: Evaluator):
    T = ev.mat("T")
    Ts = ev.sharp(T)
    lhs = ev.norm(Ts @ T + T @ Ts)
    top = imax(isq(ev.norm(ev.re(T))), isq(ev.norm(ev.im(T))))
    rhs = isub(iscale(4.0, top), iscale(2.0, _part_gap(ev, T)))
    return [("", lhs, rhs)]


def _c17(ev: Evaluator):
    X, Y = ev.mat("X"), ev.mat("Y")
    lhs = ev.norm(ev.sharp(X) @ X + ev.sharp(Y) @ Y)
    np_, nm = isq(ev.norm(X + Y)), isq(ev.norm(X - Y))
    rhs = isub(imax(np_, nm), iscale(0.5, iabs(isub(np_, nm))))
    return [("", lhs, rhs)]


def _c18(ev: Evaluator):
    T = ev.mat("T")
    Ts = ev.sharp(T)
    lhs = ev.norm(Ts @ T + T @ Ts)
    rhs = isub(iscale(4.0, isq(ev.radius(T))), iscale(2.0, _part_gap(ev, T)))
    return [("", lhs, rhs)]


def _c19(ev: Evaluator):
    T = ev.mat("T")
    w = ev.radius(T)
    return [
        ("re", ev.radius(ev.re(T)), w),
        ("im", ev.radius(ev.im(T)), w),
    ]


def _c20(ev: Evaluator):
    T, S, X, Y = ev.mat("T"), ev.mat("S"), ev.mat("X"), ev.mat("Y")
    factor = imul(ev.norm(S), imax(ev.norm(X), ev.norm(Y)))
    rhs = iscale(_2SQRT2, imul(factor, _damped_radius_sq(ev, T)))
    return [(v, ev.radius(M), rhs) for v, M in _pm(T @ X @ S, S @ Y @ T)]


def _c21(ev: Evaluator):
    T, S = ev.mat("T"), ev.mat("S")
    rhs = iscale(_2SQRT2, imin(_f_mixed(ev, T, S), _f_mixed(ev, S, T)))
    coarse = _coarse_commutator_rhs(ev)
    notes = {"coarse_rhs_slack": coarse.lo - rhs.hi}
    return [(v, ev.radius(M), rhs) for v, M in _pm(T @ S, S @ T)], notes


def _c22(ev: Evaluator):
    T = ev.mat("T")
    rhs = iscale(math.sqrt(2.0), imul(ev.norm(T), _damped_radius_sq(ev, T)))
    return [("", ev.radius(T @ T), rhs)]


def _c23(ev: Evaluator):
    T, S = ev.mat("T"), ev.mat("S")
    ns = ev.norm(S)
    if ns.hi <= RADIUS_FLOOR:
        raise _Skip("seminorm of S vanishes")
    rhs = _coarse_commutator_rhs(ev)
    worst_lhs = None
    for _v, M in _pm(T @ S, S @ T):
        w = ev.radius(M)
        if worst_lhs is None or w.hi > worst_lhs.hi:
            worst_lhs = w
    tol = EQUALITY_TOL * (1.0 + abs(rhs.hi))
    if rhs.lo - worst_lhs.hi >= tol:
        raise _Skip("commutator bound is not near equality")
    gap = _part_gap(ev, T)
    notes = {"near_equality_gap": gap.hi, "parts_agree": float(gap.hi < tol)}
    return [("", worst_lhs, rhs)], notes


def _entry(check_id, operands, direction, formula, evaluate) -> CheckDefinition:
    return CheckDefinition(check_id, tuple(operands), direction, formula, evaluate)


CATALOG: dict[str, CheckDefinition] = {
    d.check_id: d
    for d in (
        _entry("C1", ("T",), LE, "0.5*norm(T) <= radius(T) <= norm(T)", _c1),
        _entry("C2", ("Tsa",), EQ, "norm(Tsa) = radius(Tsa) for selfadjoint Tsa", _c2),
        _entry(
            "C3",
            ("T",),
            EQ,
            "norm(sharp(T)T) = norm(T sharp(T)) = norm(T)^2 = norm(sharp(T))^2",
            _c3,
        ),
        _entry(
            "C4",
            ("T",),
            LE,
            "norm(sharp(T)T + T sharp(T))/4 <= radius(T)^2 <= norm(...)/2",
            _c4,
        ),
        _entry(
            "C5",
            ("T", "S"),
            LE,
            "radius(TS+-ST) <= 2*sqrt(2)*min(norm(T)radius(S), norm(S)radius(T))",
            _c5,
        ),
        _entry(
            "C6",
            ("T1", "S1", "T2", "S2"),
            LE,
            "radius(T1S1+-S2T2) <= sqrt(norm(T1 sharp(T1) + sharp(T2)T2))"
            " * sqrt(norm(sharp(S1)S1 + S2 sharp(S2)))",
            _c6,
        ),
        _entry(
            "C7",
            ("T", "S"),
            EQ,
            "block radii and norms reduce to componentwise max",
            _c7,
        ),
        _entry(
            "C8",
            ("T1", "T2", "S"),
            LE,
            "radius(T1 S +- S T2) <= 4*radius(antidiag(T1,T2))*radius(S)",
            _c8,
        ),
        _entry("C9", ("T", "S"), LE, "radius(TS+-ST) <= 4*radius(T)*radius(S)", _c9),
        _entry(
            "C10",
            ("P", "Q"),
            LE,
            "radius(PQ) <= 2*radius(P)*radius(Q) when PQ = QP",
            _c10,
        ),
        _entry(
            "C11",
            ("T", "S"),
            LE,
            "norm(T sharp(T) + sharp(S)S) <= max(norm(T)^2, norm(S)^2) + norm(ST)",
            _c11,
        ),
        _entry(
            "C12",
            ("X", "Y"),
            GE,
            "radius(antidiag(X,Y)) >="
            " sqrt(norm(sharp(X)X + Y sharp(Y)) + 2*crawford(YX))/2",
            _c12,
        ),
        _entry(
            "C13",
            ("T", "S", "X", "Y"),
            LE,
            "radius(TX+-YS) <= 2*sqrt(max(norm(T)^2,norm(S)^2)+norm(ST))"
            " * sqrt(radius(antidiag(X,Y))^2 - crawford(YX)/2)"
            " <= 2*sqrt(2)*max(norm(T),norm(S))*radius(antidiag(X,Y))",
            _c13,
        ),
        _entry(
            "C14",
            ("T", "S"),
            LE,
            "norm(ST) <= norm(T)norm(S) <= (norm(T)^2+norm(S)^2)/2"
            " <= max(norm(T)^2, norm(S)^2)",
            _c14,
        ),
        _entry(
            "C15",
            ("T",),
            LE,
            "vecnorm(T'x)^2 + vecnorm(sharp(T')x)^2 <= 4 - 2*partgap(T')"
            " for unit x, T' = T/radius hi",
            _c15,
        ),
        _entry(
            "C16",
            ("T",),
            LE,
            "norm(sharp(T)T + T sharp(T)) <= 4*max(norm(re T)^2, norm(im T)^2)"
            " - 2*partgap(T)",
            _c16,
        ),
        _entry(
            "C17",
            ("X", "Y"),
            LE,
            "norm(sharp(X)X + sharp(Y)Y) <= max(norm(X+Y)^2, norm(X-Y)^2)"
            " - |norm(X+Y)^2 - norm(X-Y)^2|/2",
            _c17,
        ),
        _entry(
            "C18",
            ("T",),
            LE,
            "norm(sharp(T)T + T sharp(T)) <= 4*radius(T)^2 - 2*partgap(T)",
            _c18,
        ),
        _entry(
            "C19",
            ("T",),
            LE,
            "radius(re T) <= radius(T) and radius(im T) <= radius(T)",
            _c19,
        ),
        _entry(
            "C20",
            ("T", "S", "X", "Y"),
            LE,
            "radius(TXS+-SYT) <= 2*sqrt(2)*norm(S)*max(norm(X),norm(Y))"
            " * sqrt(radius(T)^2 - partgap(T)/2)",
            _c20,
        ),
        _entry(
            "C21",
            ("T", "S"),
            LE,
            "radius(TS+-ST) <= 2*sqrt(2)*min(f(T,S), f(S,T)),"
            " f(X,Y) = norm(Y)*sqrt(radius(X)^2 - partgap(X)/2)",
            _c21,
        ),
        _entry(
            "C22",
            ("T",),
            LE,
            "radius(T^2) <= sqrt(2)*norm(T)*sqrt(radius(T)^2 - partgap(T)/2)",
            _c22,
        ),
        _entry(
            "C23",
            ("T", "S"),
            CONDITIONAL,
            "near equality in the commutator bound implies partgap(T) near 0",
            _c23,
        ),
    )
}


def _slack(direction: str, lhs: Enclosure, rhs: Enclosure) -> float:
    if direction == GE:
        return lhs.lo - rhs.hi
    if direction == EQ:
        cushion = EQ_TOL * (1.0 + max(abs(lhs.hi), abs(rhs.hi)))
        gap = max(lhs.lo - rhs.hi, rhs.lo - lhs.hi, 0.0)
        return cushion - gap
    return rhs.lo - lhs.hi


def _verdict(slack: float, rhs: Enclosure) -> str:
    # The certification floor absorbs last-place rounding between routes
    # that compute one quantity two ways; it sits four orders of magnitude
    # below the violation threshold, so no near-violation can certify.
    if slack >= -CERT_EPS * (1.0 + abs(rhs.hi)):
        return PASS_CERTIFIED
    if slack < -VIOLATION_TOL * (1.0 + abs(rhs.hi)):
        return VIOLATION_CANDIDATE
    return PASS_UNCERTIFIED


def _run_entry(ev: Evaluator, entry: CheckDefinition, instance: str) -> CheckResult:
    for name in entry.operands:
        if not ev.member_ok(name):
            raise MembershipViolated(
                f"{entry.check_id}: operand {name!r} fails the membership tests"
            )
    out = entry.evaluate(ev)
    variants, notes = out if isinstance(out, tuple) else (out, {})
    best = None
    for variant, lhs, rhs in variants:
        slack = _slack(entry.direction if entry.direction != CONDITIONAL else LE, lhs, rhs)
        if best is None or slack < best[0]:
            best = (slack, variant, lhs, rhs)
    slack, variant, lhs, rhs = best
    verdict = PASS_CERTIFIED if entry.direction == CONDITIONAL else _verdict(slack, rhs)
    return CheckResult(
        check_id=entry.check_id,
        instance=instance,
        lhs=lhs,
        rhs=rhs,
        slack=slack,
        verdict=verdict,
        tightness=lhs.hi / max(rhs.lo, TIGHTNESS_EPS),
        variant=variant,
        notes=notes,
    )


def _skip_result(check_id: str, instance: str, reason: str) -> CheckResult:
    zero = ipoint(0.0)
    return CheckResult(
        check_id=check_id,
        instance=instance,
        lhs=zero,
        rhs=zero,
        slack=0.0,
        verdict=SKIPPED,
        tightness=0.0,
        notes={"reason": reason},
    )


def run_check(
    space: SemiHilbertSpace,
    check_id: str,
    operands,
    opts: RadiusOptions | None = None,
    instance: str = "adhoc",
) -> CheckResult:
    """Evaluate one catalog entry; raises instead of skipping."""
    entry = CATALOG.get(check_id)
    if entry is None:
        raise UnknownCheck(f"no catalog entry {check_id!r}")
    ev = Evaluator(space, operands, opts)
    try:
        return _run_entry(ev, entry, instance)
    except _Skip as exc:
        raise PreconditionFailed(str(exc)) from None


def run_all(
    space: SemiHilbertSpace,
    operands,
    opts: RadiusOptions | None = None,
    instance: str = "adhoc",
    checks=None,
) -> list[CheckResult]:
    """Evaluate the catalog on a shared operand bundle.

    Entries whose precondition or membership fails are reported as
    skipped rather than aborting the batch.  ``checks`` restricts the
    run to the given ids; by default every entry whose operands are all
    present runs.
    """
    if checks is None:
        ids = [cid for cid, d in CATALOG.items() if set(d.operands) <= set(operands)]
    else:
        ids = list(checks)
        for cid in ids:
            if cid not in CATALOG:
                raise UnknownCheck(f"no catalog entry {cid!r}")
    ev = Evaluator(space, operands, opts)
    results = []
    for cid in ids:
        entry = CATALOG[cid]
        try:
            results.append(_run_entry(ev, entry, instance))
        except (_Skip, PreconditionFailed, MembershipViolated) as exc:
            results.append(_skip_result(cid, instance, str(exc)))
    return results


def tightness_report(results) -> dict[str, dict]:
    """Per-check slack and tightness aggregation over many results."""
    rows = [r for r in results]
    if not rows:
        raise EmptyInput("no results to aggregate")
    out: dict[str, dict] = {}
    for cid in sorted({r.check_id for r in rows}, key=_check_order):
        got = [r for r in rows if r.check_id == cid]
        live = [r for r in got if r.verdict != SKIPPED]
        summary = {
            "trials": len(got),
            "skipped": len(got) - len(live),
            "certified": sum(r.verdict == PASS_CERTIFIED for r in live),
            "uncertified": sum(r.verdict == PASS_UNCERTIFIED for r in live),
            "violations": sum(r.verdict == VIOLATION_CANDIDATE for r in live),
        }
        if live:
            slacks = sorted(r.slack for r in live)
            argmin = min(live, key=lambda r: r.slack)
            summary["min_slack"] = slacks[0]
            summary["median_slack"] = slacks[len(slacks) // 2]
            summary["max_tightness"] = max(r.tightness for r in live)
            summary["argmin_instance"] = argmin.instance
            note_mins: dict[str, float] = {}
            for r in live:
                for k, v in r.notes.items():
                    if isinstance(v, (int, float)):
                        note_mins[k] = min(note_mins.get(k, math.inf), float(v))
            if note_mins:
                summary["note_mins"] = note_mins
        out[cid] = summary
    return out


def _check_order(cid: str):
    return (len(cid), cid)
