"""Run the full acceptance campaign and write its artifacts.

Equivalent to

    semiradius campaign --dims 2,3,4,5,6 --ranks all --trials 1000 \
        --seed 42 --grid 64 --out report.json --csv summary.csv

but exposed as a script so the exact acceptance configuration lives in
one reviewable place.  Exit status follows the report verdict: 0 when
every live row certifies, 2 when uncertified rows remain, 3 on
violation candidates.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from semiradius import CampaignConfig, report_exit_code, run_campaign, write_csv, write_report


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=1000, help="trials per (dim, rank) cell")
    ap.add_argument("--seed", type=int, default=42, help="campaign master seed")
    ap.add_argument("--grid", type=int, default=64, help="initial angle grid for the radius search")
    ap.add_argument("--workers", type=int, default=1, help="worker processes")
    ap.add_argument("--out", type=Path, default=Path("report.json"), help="report destination")
    ap.add_argument("--csv", type=Path, default=Path("summary.csv"), help="per-check table destination")
    args = ap.parse_args(argv)

    config = CampaignConfig(
        dims=(2, 3, 4, 5, 6),
        ranks=None,
        trials=args.trials,
        master_seed=args.seed,
        grid_count=args.grid,
        workers=args.workers,
    )
    report = run_campaign(config)
    write_report(report, args.out)
    write_csv(report, args.csv)

    totals = report["totals"]
    live = totals["trials"] - totals["skipped"]
    print(
        f"{live} live rows: {totals['certified']} certified, "
        f"{totals['uncertified']} uncertified, {totals['violations']} violations "
        f"in {report['wall_time_s']:.1f}s"
    )
    print(f"wrote {args.out} and {args.csv}")
    return report_exit_code(report)


if __name__ == "__main__":
    sys.exit(main())
