"""Prime race between two residue classes: how often does the first lead?

    python3 scripts/race_bias.py --mod 4 --first 3 --second 1 --X 1e7
"""

from __future__ import annotations

import argparse

from apsums.cli import parse_int
from apsums.identities import race_tally


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--mod", type=int, default=4)
    parser.add_argument("--first", type=int, default=3)
    parser.add_argument("--second", type=int, default=1)
    parser.add_argument("--X", type=parse_int, default=10**6)
    parser.add_argument("--stride", type=int, default=None)
    args = parser.parse_args()

    for limit in sorted({10**3, 10**4, 10**5, 10**6, args.X}):
        if limit > args.X:
            continue
        t = race_tally(args.mod, args.first, args.second, limit, args.stride)
        print(f"X={limit:>11}  samples={t.samples:>9}  lead={t.lead_fraction:.5f}  "
              f"tie={t.tie_fraction:.5f}  leader changes={t.leader_changes}")


if __name__ == "__main__":
    main()
