"""Catalog mechanics: hand-checked slacks, folding, verdicts, reports."""

import math

import numpy as np
import pytest

from semiradius.catalog import (
    CATALOG,
    PASS_CERTIFIED,
    PASS_UNCERTIFIED,
    SKIPPED,
    VIOLATION_CANDIDATE,
    Evaluator,
    run_all,
    run_check,
    tightness_report,
)
from semiradius.errors import (
    EmptyInput,
    MembershipViolated,
    PreconditionFailed,
    UnknownCheck,
)
from semiradius.sampler import SampleConfig, sample_bundle, sample_space
from semiradius.space import build_space

SHIFT = np.array([[0.0, 1.0], [0.0, 0.0]])
A_DEG = np.diag([2.0, 0.0])
T_LOWER = np.array([[1.0, 0.0], [5.0, 3.0]])


def bundle_for(dim, rank, space_seed, bundle_seed, scale=1.0):
    sp = sample_space(SampleConfig(dim=dim, rank=rank, master_seed=space_seed))
    return sp, sample_bundle(sp, scale=scale, seed=bundle_seed)


class TestHandExamples:
    def test_commutator_bound_forced_values(self):
        # T nilpotent, S identity: one sign gives radius 1, the bound is
        # 2*sqrt(2)*min(1*1, 1*0.5) = sqrt(2).
        sp = build_space(np.eye(2))
        res = run_check(sp, "C5", {"T": SHIFT, "S": np.eye(2)})
        assert res.verdict == PASS_CERTIFIED
        assert res.variant == "+"
        assert res.slack == pytest.approx(math.sqrt(2.0) - 1.0, abs=1e-8)
        assert res.tightness == pytest.approx(1.0 / math.sqrt(2.0), rel=1e-6)

    def test_zero_operator_identities(self):
        sp = build_space(np.eye(2))
        res = run_check(sp, "C3", {"T": np.zeros((2, 2))})
        assert res.verdict == PASS_CERTIFIED
        assert abs(res.slack) <= 1e-8
        assert res.lhs.hi == 0.0 and res.rhs.hi == 0.0

    def test_norm_sum_bound_equality_instance(self):
        # Dense arithmetic gives exactly 2 on both sides here, so the
        # verdict must be a pass of some kind and never a violation.
        sp = build_space(A_DEG)
        res = run_check(sp, "C11", {"T": T_LOWER, "S": T_LOWER})
        assert res.verdict in (PASS_CERTIFIED, PASS_UNCERTIFIED)
        assert abs(res.slack) <= 1e-9
        assert res.lhs.lo == pytest.approx(2.0, abs=1e-9)
        assert res.rhs.hi == pytest.approx(2.0, abs=1e-9)

    def test_block_lower_bound_equality_instance(self):
        # X = Y = I on the identity seed puts both sides at exactly 1.
        sp = build_space(np.eye(2))
        res = run_check(sp, "C12", {"X": np.eye(2), "Y": np.eye(2)})
        assert res.verdict in (PASS_CERTIFIED, PASS_UNCERTIFIED)
        assert abs(res.slack) <= 1e-8
        assert res.lhs.lo == pytest.approx(1.0, abs=1e-8)


class TestErrors:
    def test_unknown_check(self):
        sp = build_space(np.eye(2))
        with pytest.raises(UnknownCheck):
            run_check(sp, "C99", {"T": SHIFT})
        with pytest.raises(UnknownCheck):
            run_all(sp, {"T": SHIFT}, checks=["C1", "nope"])

    def test_membership_violated(self):
        sp = build_space(A_DEG)
        bad = np.array([[1.0, 2.0], [0.0, 3.0]])
        with pytest.raises(MembershipViolated):
            run_check(sp, "C1", {"T": bad})

    def test_commuting_precondition(self):
        sp = build_space(np.eye(2))
        P, Q = SHIFT, SHIFT.T
        with pytest.raises(PreconditionFailed):
            run_check(sp, "C10", {"P": P, "Q": Q})
        res = run_all(sp, {"P": P, "Q": Q}, checks=["C10"])
        assert res[0].verdict == SKIPPED
        assert "commute" in res[0].notes["reason"]

    def test_selfadjoint_precondition(self):
        sp = build_space(np.eye(2))
        with pytest.raises(PreconditionFailed):
            run_check(sp, "C2", {"Tsa": SHIFT})

    def test_vector_check_needs_rank(self):
        sp = build_space(np.zeros((2, 2)))
        with pytest.raises(PreconditionFailed):
            run_check(sp, "C15", {"T": SHIFT})


class TestRunAll:
    def test_zero_bundle_all_pass(self):
        sp = build_space(np.eye(2))
        zero = np.zeros((2, 2))
        ops = {k: zero for k in ("T", "S", "X", "Y", "T1", "T2", "S1", "S2", "Tsa", "P", "Q")}
        results = run_all(sp, ops)
        assert [r.check_id for r in results] == [f"C{i}" for i in range(1, 24)]
        for r in results:
            if r.check_id == "C23":
                assert r.verdict == SKIPPED
            else:
                assert r.verdict == PASS_CERTIFIED, (r.check_id, r.slack)

    def test_random_bundle_no_violations(self):
        sp, ops = bundle_for(4, 2, space_seed=1, bundle_seed=1)
        results = run_all(sp, ops, instance="d4_r2_t1")
        assert len(results) == 23
        for r in results:
            assert r.verdict != VIOLATION_CANDIDATE, (r.check_id, r.slack)
            assert r.instance == "d4_r2_t1"

    def test_rerun_is_bit_identical(self):
        sp, ops = bundle_for(3, 3, space_seed=2, bundle_seed=5)
        a = run_all(sp, ops)
        b = run_all(sp, ops)
        assert [(r.check_id, r.slack, r.verdict, r.variant) for r in a] == [
            (r.check_id, r.slack, r.verdict, r.variant) for r in b
        ]

    def test_applicable_subset_by_default(self):
        sp = build_space(np.eye(2))
        results = run_all(sp, {"T": SHIFT})
        assert {r.check_id for r in results} == {"C1", "C3", "C4", "C15", "C16", "C18", "C19", "C22"}

    def test_chain_notes_present(self):
        sp, ops = bundle_for(3, 2, space_seed=4, bundle_seed=7)
        by_id = {r.check_id: r for r in run_all(sp, ops)}
        scale = 1.0 + abs(by_id["C13"].rhs.hi)
        assert by_id["C13"].notes["chain_slack"] >= -1e-7 * scale
        scale21 = 1.0 + abs(by_id["C21"].rhs.hi)
        assert by_id["C21"].notes["coarse_rhs_slack"] >= -1e-7 * scale21

    def test_degenerate_seed_skips_vector_check(self):
        sp = build_space(np.zeros((2, 2)))
        zero = np.zeros((2, 2))
        ops = {k: zero for k in ("T", "S")}
        by_id = {r.check_id: r for r in run_all(sp, ops)}
        assert by_id["C15"].verdict == SKIPPED
        assert by_id["C23"].verdict == SKIPPED
        assert by_id["C1"].verdict == PASS_CERTIFIED


class TestScalingCovariance:
    @pytest.mark.parametrize(
        "alpha,ids",
        [
            # Both sides of these are invariant under any unit phase.
            (np.exp(0.4j * np.pi), ["C1", "C3", "C4", "C5", "C9"]),
            # The re/im part gap mixes under a general phase; it is only
            # preserved by quarter turns, which swap the two parts.
            (1.0j, ["C1", "C3", "C4", "C5", "C9", "C21", "C22"]),
            (-1.0, ["C1", "C3", "C4", "C5", "C9", "C21", "C22"]),
        ],
    )
    def test_unimodular_scaling_leaves_slack(self, alpha, ids):
        sp, ops = bundle_for(4, 3, space_seed=8, bundle_seed=3)
        scaled = dict(ops)
        scaled["T"] = alpha * ops["T"]
        base = {r.check_id: r for r in run_all(sp, ops, checks=ids)}
        turned = {r.check_id: r for r in run_all(sp, scaled, checks=ids)}
        for cid in ids:
            scale = 1.0 + abs(base[cid].rhs.hi)
            assert abs(base[cid].slack - turned[cid].slack) <= 1e-9 * scale, cid


class TestEvaluatorCache:
    def test_functionals_memoized(self):
        sp, ops = bundle_for(3, 2, space_seed=6, bundle_seed=2)
        ev = Evaluator(sp, ops)
        assert ev.radius(ops["T"]) is ev.radius(ops["T"])
        assert ev.norm(ops["S"]) is ev.norm(ops["S"])
        assert ev.sharp(ops["T"]) is ev.sharp(ops["T"])


class TestTightnessReport:
    def test_empty_rejected(self):
        with pytest.raises(EmptyInput):
            tightness_report([])

    def test_aggregates(self):
        sp1, ops1 = bundle_for(3, 2, space_seed=10, bundle_seed=1)
        sp2, ops2 = bundle_for(3, 3, space_seed=11, bundle_seed=2)
        rows = run_all(sp1, ops1, instance="a") + run_all(sp2, ops2, instance="b")
        rep = tightness_report(rows)
        assert list(rep) == [f"C{i}" for i in range(1, 24)]
        c1 = rep["C1"]
        assert c1["trials"] == 2 and c1["skipped"] == 0
        assert c1["certified"] + c1["uncertified"] + c1["violations"] == 2
        slack_by_inst = {r.instance: r.slack for r in rows if r.check_id == "C1"}
        assert c1["min_slack"] == min(slack_by_inst.values())
        assert c1["argmin_instance"] == min(slack_by_inst, key=slack_by_inst.get)
        assert "note_mins" in rep["C13"]

    def test_catalog_formula_and_operand_consistency(self):
        assert len(CATALOG) == 23
        for cid, entry in CATALOG.items():
            assert entry.check_id == cid
            assert entry.direction in ("le", "ge", "eq", "conditional")
            assert entry.operands
