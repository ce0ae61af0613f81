"""Regenerate the sixteen published error tables and compare them cell by cell.

Writes one CSV per table plus a JSON summary into --out, and prints the
mismatch list and pooled sign percentages.

    python3 scripts/reproduce_tables.py --out artifacts/tables --boundary published
"""

from __future__ import annotations

import argparse
import json
import time
from pathlib import Path

from apsums import reference
from apsums.identities import reproduce_published_tables, table_csv
from apsums.prime_stats import BOUNDARY_RULES
from apsums.verification import compare_tables, sign_claims


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", type=Path, default=Path("artifacts/tables"))
    parser.add_argument("--boundary", choices=BOUNDARY_RULES, default="published")
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--max-x", type=float, default=1e8, help="truncate the grid for quick runs")
    args = parser.parse_args()

    grid = [x for x in reference.TABLE_GRID if x <= args.max_x]
    start = time.perf_counter()
    tables = reproduce_published_tables(grid, boundary=args.boundary, worker_count=args.workers)
    elapsed = time.perf_counter() - start

    args.out.mkdir(parents=True, exist_ok=True)
    for num, rows in tables.items():
        (args.out / f"table{num:02d}.csv").write_text(table_csv(rows))
    mismatches = compare_tables(tables)
    claims = sign_claims(tables) if len(grid) == len(reference.TABLE_GRID) else []
    summary = {"boundary": args.boundary, "grid": grid, "seconds": round(elapsed, 2),
               "mismatches": mismatches, "sign_claims": claims}
    (args.out / "summary.json").write_text(json.dumps(summary, indent=1, sort_keys=True) + "\n")

    print(f"{sum(map(len, tables.values()))} rows in {elapsed:.1f} s, boundary={args.boundary}")
    for mm in mismatches:
        print(f"  table {mm['table']:2d} x={mm['x']:>9} {mm['column']:>9}: "
              f"printed {mm['published']}, computed {mm['computed']}")
    for c in claims:
        mark = "ok " if c["passed"] else "off"
        print(f"  [{mark}] {c['name']}: {c['count']}/{c['rows']} = {c['percent']}% "
              f"(printed {c['published']}%)")


if __name__ == "__main__":
    main()
