"""Reproducible campaigns of catalog checks over sampled spaces.

A campaign walks a (dim, rank) grid, draws independent operand bundles per
cell from per-trial derived seeds, runs every requested check, and folds
the outcomes into per-check aggregates.  Seeds depend only on the master
seed and the cell coordinates, so any instance can be regenerated in
isolation and the report is identical for every worker count.
"""

from __future__ import annotations

import csv
import json
import math
import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .catalog import (
    CATALOG,
    PASS_CERTIFIED,
    PASS_UNCERTIFIED,
    SKIPPED,
    VIOLATION_CANDIDATE,
    CheckResult,
    run_all,
)
from .errors import BadConfig, ParseError
from .functionals import RadiusOptions
from .instances import read_instance, write_instance
from .sampler import SampleConfig, derive_seed, sample_bundle, sample_space

__all__ = [
    "SCHEMA_VERSION",
    "CampaignConfig",
    "run_campaign",
    "report_exit_code",
    "write_report",
    "write_csv",
    "save_extremes",
    "verify_instance",
]

SCHEMA_VERSION = 1

_CSV_FIELDS = (
    "check",
    "trials",
    "skipped",
    "certified",
    "uncertified",
    "violations",
    "min_slack",
    "median_slack",
    "max_tightness",
    "argmin_instance",
)

_INSTANCE_ID = re.compile(r"^d(\d+)_r(\d+)_t(\d+)$")


@dataclass(frozen=True)
class CampaignConfig:
    """Declarative description of one campaign run."""

    dims: tuple[int, ...] = (2, 3, 4, 5, 6)
    ranks: tuple[int, ...] | None = None
    trials: int = 100
    master_seed: int = 0
    law: str = "uniform"
    lam_min: float = 0.1
    lam_max: float = 2.0
    scale: float = 1.0
    grid_count: int = 256
    gap_scale: float = 1e-9
    oracle_samples: int = 4096
    checks: tuple[str, ...] | None = None
    workers: int = 1

    def __post_init__(self):
        dims = tuple(sorted(set(int(d) for d in self.dims)))
        if not dims or dims[0] < 1:
            raise BadConfig("dims must be a nonempty set of positive integers")
        object.__setattr__(self, "dims", dims)
        if self.ranks is not None:
            ranks = tuple(sorted(set(int(r) for r in self.ranks)))
            if not ranks or ranks[0] < 0:
                raise BadConfig("ranks must be nonnegative integers")
            object.__setattr__(self, "ranks", ranks)
        if self.trials < 1:
            raise BadConfig(f"trials must be positive, got {self.trials}")
        if self.workers < 1:
            raise BadConfig(f"workers must be positive, got {self.workers}")
        if self.checks is not None:
            checks = tuple(self.checks)
            unknown = [c for c in checks if c not in CATALOG]
            if unknown:
                raise BadConfig(f"unknown checks: {', '.join(unknown)}")
            object.__setattr__(self, "checks", checks)
        if not self.cells():
            raise BadConfig("no (dim, rank) cell matches the requested grid")
        # Delegates spectrum and seed validation.
        self._sample_config(self.dims[0], min(1, self.dims[0]), self.master_seed)

    def cells(self) -> list[tuple[int, int]]:
        """The (dim, rank) grid in report order."""
        out = []
        for dim in self.dims:
            ranks = self.ranks if self.ranks is not None else range(1, dim + 1)
            out.extend((dim, rank) for rank in ranks if rank <= dim)
        return out

    def options(self) -> RadiusOptions:
        return RadiusOptions(
            grid_count=self.grid_count,
            gap_scale=self.gap_scale,
            oracle_samples=self.oracle_samples,
        )

    def _sample_config(self, dim: int, rank: int, seed: int) -> SampleConfig:
        return SampleConfig(
            dim=dim,
            rank=rank,
            law=self.law,
            lam_min=self.lam_min,
            lam_max=self.lam_max,
            scale=self.scale,
            master_seed=seed,
        )

    def echo(self) -> dict:
        # Worker count is scheduling, not configuration: reports from the
        # same experiment must agree byte for byte whatever ran them.
        return {
            "dims": list(self.dims),
            "ranks": "all" if self.ranks is None else list(self.ranks),
            "trials": self.trials,
            "master_seed": self.master_seed,
            "law": self.law,
            "lam_min": self.lam_min,
            "lam_max": self.lam_max,
            "scale": self.scale,
            "grid_count": self.grid_count,
            "gap_scale": self.gap_scale,
            "oracle_samples": self.oracle_samples,
            "checks": "all" if self.checks is None else list(self.checks),
        }


def _regenerate(config: CampaignConfig, dim: int, rank: int, trial: int):
    seed = derive_seed(config.master_seed, dim, rank, trial)
    space = sample_space(config._sample_config(dim, rank, seed))
    bundle = sample_bundle(space, scale=config.scale, seed=derive_seed(seed, 1))
    return space, bundle


class _Aggregate:
    """Streaming per-check summary; merge order is fixed by the caller."""

    def __init__(self):
        self.trials = 0
        self.skipped = 0
        self.certified = 0
        self.uncertified = 0
        self.violations = 0
        self.slacks: list[float] = []
        self.min_slack = math.inf
        self.argmin_instance = ""
        self.max_tightness = -math.inf
        self.note_mins: dict[str, float] = {}

    def fold(self, r: CheckResult):
        self.trials += 1
        if r.verdict == SKIPPED:
            self.skipped += 1
            return
        self.certified += r.verdict == PASS_CERTIFIED
        self.uncertified += r.verdict == PASS_UNCERTIFIED
        self.violations += r.verdict == VIOLATION_CANDIDATE
        self.slacks.append(r.slack)
        if r.slack < self.min_slack:
            self.min_slack = r.slack
            self.argmin_instance = r.instance
        self.max_tightness = max(self.max_tightness, r.tightness)
        for key, val in r.notes.items():
            if isinstance(val, (int, float)):
                cur = self.note_mins.get(key, math.inf)
                self.note_mins[key] = min(cur, float(val))

    def merge(self, other: "_Aggregate"):
        self.trials += other.trials
        self.skipped += other.skipped
        self.certified += other.certified
        self.uncertified += other.uncertified
        self.violations += other.violations
        self.slacks.extend(other.slacks)
        if other.min_slack < self.min_slack:
            self.min_slack = other.min_slack
            self.argmin_instance = other.argmin_instance
        self.max_tightness = max(self.max_tightness, other.max_tightness)
        for key, val in other.note_mins.items():
            self.note_mins[key] = min(self.note_mins.get(key, math.inf), val)

    def summary(self) -> dict:
        out = {
            "trials": self.trials,
            "skipped": self.skipped,
            "certified": self.certified,
            "uncertified": self.uncertified,
            "violations": self.violations,
        }
        if self.slacks:
            ordered = sorted(self.slacks)
            out["min_slack"] = ordered[0]
            out["median_slack"] = ordered[len(ordered) // 2]
            out["max_tightness"] = self.max_tightness
            out["argmin_instance"] = self.argmin_instance
            if self.note_mins:
                out["note_mins"] = self.note_mins
        return out


def _run_cell(args) -> dict[str, _Aggregate]:
    config, dim, rank = args
    opts = config.options()
    folded: dict[str, _Aggregate] = {}
    for trial in range(config.trials):
        space, bundle = _regenerate(config, dim, rank, trial)
        instance = f"d{dim}_r{rank}_t{trial}"
        for r in run_all(space, bundle, opts=opts, instance=instance, checks=config.checks):
            folded.setdefault(r.check_id, _Aggregate()).fold(r)
    return folded


def run_campaign(config: CampaignConfig) -> dict:
    """Execute the campaign and return the report document."""
    start = time.perf_counter()
    cells = config.cells()
    jobs = [(config, dim, rank) for dim, rank in cells]
    if config.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            partials = list(pool.map(_run_cell, jobs))
    else:
        partials = [_run_cell(job) for job in jobs]

    merged: dict[str, _Aggregate] = {}
    for part in partials:
        for cid, agg in part.items():
            if cid in merged:
                merged[cid].merge(agg)
            else:
                merged[cid] = agg

    checks = {cid: merged[cid].summary() for cid in sorted(merged, key=_check_order)}
    totals = {
        "trials": sum(s["trials"] for s in checks.values()),
        "skipped": sum(s["skipped"] for s in checks.values()),
        "certified": sum(s["certified"] for s in checks.values()),
        "uncertified": sum(s["uncertified"] for s in checks.values()),
        "violations": sum(s["violations"] for s in checks.values()),
    }
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": _tool_block(),
        "master_seed": config.master_seed,
        "config": config.echo(),
        "totals": totals,
        "checks": checks,
        "wall_time_s": time.perf_counter() - start,
    }


def _tool_block() -> dict:
    from . import __version__

    return {"name": "semiradius", "version": __version__}


def _check_order(cid: str):
    return (len(cid), cid)


def report_exit_code(report: dict) -> int:
    """0 all certified, 2 uncertified present, 3 violation candidates."""
    totals = report["totals"]
    if totals["violations"]:
        return 3
    if totals["uncertified"]:
        return 2
    return 0


def write_report(report: dict, path) -> None:
    text = json.dumps(report, indent=1, sort_keys=True, allow_nan=False)
    Path(path).write_text(text + "\n")


def write_csv(report: dict, path) -> None:
    """Per-check aggregate rows for plotting."""
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=_CSV_FIELDS)
        writer.writeheader()
        for cid, summary in report["checks"].items():
            row = {k: summary.get(k, "") for k in _CSV_FIELDS[1:]}
            row["check"] = cid
            row.pop("note_mins", None)
            writer.writerow(row)


def save_extremes(config: CampaignConfig, report: dict, directory) -> list[Path]:
    """Regenerate each check's argmin instance and write it as a file."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    ids = sorted(
        {
            s["argmin_instance"]
            for s in report["checks"].values()
            if s.get("argmin_instance")
        }
    )
    written = []
    for iid in ids:
        match = _INSTANCE_ID.match(iid)
        if match is None:
            raise ParseError(f"malformed instance id in report: {iid!r}")
        dim, rank, trial = (int(g) for g in match.groups())
        space, bundle = _regenerate(config, dim, rank, trial)
        path = directory / f"{iid}.json"
        write_instance(path, space, bundle)
        written.append(path)
    return written


def verify_instance(path, opts: RadiusOptions = RadiusOptions()) -> list[CheckResult]:
    """Replay all applicable checks on a stored instance file."""
    space, operands = read_instance(path)
    return run_all(space, operands, instance=Path(path).stem, opts=opts)
