#!/usr/bin/env python3
"""Run every lemma sweep and export the reports.

Usage:
    python scripts/lemma_sweeps.py [--csv-dir DIR]

Writes one JSON line per report to stdout; with --csv-dir also writes one
CSV per sweep (one row per parameter point).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from specfactor.harness import verify_lemma_no_factor, verify_spectral_lemmas, verify_zhw


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--csv-dir", type=Path)
    args = ap.parse_args()

    reports = {
        "nofactor_1_1": verify_lemma_no_factor(1, 1, [8, 10, 12]),
        "nofactor_1_3": verify_lemma_no_factor(1, 3, [8, 10, 12]),
        "nofactor_2_2": verify_lemma_no_factor(2, 2, [6, 9, 12]),
        "zhw_s1": verify_zhw(1, 12, 4),
        "zhw_s2": verify_zhw(2, 12, 4),
        "zhw_s3": verify_zhw(3, 14, 4),
        "spectral": verify_spectral_lemmas(),
    }
    failed = 0
    for name, rep in reports.items():
        print(rep.json_str())
        status = "ok" if rep.passed else f"{len(rep.failures)} FAILURES"
        print(f"# {name}: {len(rep.points)} points, min slack {rep.min_slack:.6f}, {status}", file=sys.stderr)
        if args.csv_dir:
            args.csv_dir.mkdir(parents=True, exist_ok=True)
            (args.csv_dir / f"{name}.csv").write_text(rep.to_csv())
        failed += not rep.passed
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
