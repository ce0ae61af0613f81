"""Command-line entry point: ``apsums {count,powersum,table,verify}``.

Exit codes: 0 success, 2 invalid input, 3 a verification tolerance failed,
4 a resource or bound limit was hit.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from decimal import Decimal, InvalidOperation
from pathlib import Path

from . import reference
from .identities import generate_table, round_half_up, table_csv
from .prime_stats import BOUNDARY_RULES, DomainError, RationalExponent, count_primes, power_sum, \
    power_sum_at_threshold
from .quadrature import QuadratureError
from .sieve import DEFAULT_SEGMENT_SIZE, BoundError, ResidueClass, SieveError
from .verification import SUITES, run_suite

EXIT_OK, EXIT_VALIDATION, EXIT_TOLERANCE, EXIT_RESOURCE = 0, 2, 3, 4
REPORT_SCHEMA = 1


class UsageError(ValueError):
    pass


def parse_int(text: str) -> int:
    """Integer flag value; scientific notation such as ``1e8`` is accepted if exact."""
    try:
        value = Decimal(text.strip())
    except InvalidOperation:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value.is_finite() or value != value.to_integral_value():
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(value)


def parse_grid(text: str) -> list[int]:
    if not text.strip():
        return []
    return [parse_int(part) for part in text.split(",") if part.strip()]


def parse_exponent(text: str) -> RationalExponent:
    try:
        return RationalExponent.parse(text.strip())
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def default_cache_dir() -> Path:
    if os.environ.get("APPS_CACHE_DIR"):
        return Path(os.environ["APPS_CACHE_DIR"])
    base = os.environ.get("XDG_DATA_HOME") or Path.home() / ".local" / "share"
    return Path(base) / "apsums"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--workers", type=int, default=1, help="sieve worker threads")
    common.add_argument("--segment-size", type=int, default=DEFAULT_SEGMENT_SIZE,
                        help="odd numbers per sieve segment")
    common.add_argument("--cache-dir", type=Path, default=None,
                        help="prime cache directory (default: $APPS_CACHE_DIR or the user data dir)")
    common.add_argument("--no-cache", action="store_true", help="disable the on-disk prime cache")
    common.add_argument("--format", dest="output_format", choices=("csv", "json", "pretty"),
                        default="pretty")

    cls = argparse.ArgumentParser(add_help=False)
    cls.add_argument("--mod", type=int, default=1, help="modulus m (1 = all primes)")
    cls.add_argument("--res", type=int, default=0, help="residue n")

    parser = argparse.ArgumentParser(prog="apsums", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common, cls], help="pi(x; m, n)")
    p.add_argument("--x", type=parse_int, required=True)

    p = sub.add_parser("powersum", parents=[common, cls], help="sum of p^k over class primes")
    p.add_argument("--x", type=parse_int, required=True)
    p.add_argument("--k", type=parse_exponent, required=True)
    p.add_argument("--at-threshold", action="store_true",
                   help="sum over p <= x^(1/(k+1)) instead of p <= x")
    p.add_argument("--boundary", choices=BOUNDARY_RULES, default="exact")

    p = sub.add_parser("table", parents=[common, cls], help="error table as CSV")
    p.add_argument("--k", type=parse_exponent, required=True)
    p.add_argument("--grid", type=parse_grid, default=list(reference.TABLE_GRID),
                   help="comma-separated ascending x values")
    p.add_argument("--boundary", choices=BOUNDARY_RULES, default="exact")
    p.add_argument("--out", type=Path, default=None, help="write CSV here instead of stdout")

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", choices=(*SUITES, "all"), default="all")
    p.add_argument("--scale", choices=("small", "full"), default="full")
    p.add_argument("--k", type=parse_exponent, default=RationalExponent(1))
    p.add_argument("--mod", type=int, default=4)
    p.add_argument("--res", type=int, default=1)
    p.add_argument("--X", type=parse_int, default=10**4)
    p.add_argument("--theorem2-tol", type=float, default=0.02)
    p.add_argument("--mertens-tol", type=float, default=0.01)
    p.add_argument("--abel-tol", type=float, default=1e-8)
    return parser


def _sieve_kwargs(args) -> dict:
    cache = None if args.no_cache else (args.cache_dir or default_cache_dir())
    return {"worker_count": args.workers, "segment_size": args.segment_size, "cache_dir": cache}


def _emit(args, payload: dict, pretty: str, out=None):
    out = out or sys.stdout
    if args.output_format == "json":
        out.write(json.dumps({"schema": REPORT_SCHEMA, **payload}, sort_keys=True) + "\n")
    elif args.output_format == "csv":
        keys = list(payload)
        out.write(",".join(keys) + "\n" + ",".join(str(payload[k]) for k in keys) + "\n")
    else:
        out.write(pretty + "\n")


def cmd_count(args) -> int:
    rc = ResidueClass(args.mod, args.res)
    pi = count_primes(args.x, rc, **_sieve_kwargs(args))
    _emit(args, {"command": "count", "x": args.x, "m": rc.modulus, "n": rc.residue, "pi": pi}, str(pi))
    return EXIT_OK


def _format_sum(acc) -> str:
    if acc.exact_sum is not None:
        return str(acc.exact_sum)
    return str(round_half_up(acc.value))


def cmd_powersum(args) -> int:
    rc = ResidueClass(args.mod, args.res)
    kw = _sieve_kwargs(args)
    if args.at_threshold:
        acc = power_sum_at_threshold(args.x, args.k, rc, boundary=args.boundary, **kw)
    else:
        acc = power_sum(args.x, args.k, rc, **kw)
    text = _format_sum(acc)
    _emit(args, {"command": "powersum", "x": args.x, "k": str(args.k), "m": rc.modulus,
                 "n": rc.residue, "at_threshold": args.at_threshold, "value": repr(acc.value),
                 "exact": None if acc.exact_sum is None else str(acc.exact_sum),
                 "terms": acc.term_count, "rounded": text}, text)
    return EXIT_OK


def cmd_table(args) -> int:
    if not args.grid:
        raise UsageError("empty grid")
    rc = ResidueClass(args.mod, args.res)
    rows = generate_table(args.k, rc, args.grid, boundary=args.boundary, **_sieve_kwargs(args))
    text = table_csv(rows)
    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    kw = _sieve_kwargs(args)
    suites = SUITES if args.suite == "all" else (args.suite,)
    options = {
        "tables": {"scale": args.scale, **kw},
        "theorem2": {"k": args.k, "m": args.mod, "n": args.res, "X": args.X,
                     "tol": args.theorem2_tol, **kw},
        "mertens": {"tol": args.mertens_tol, **kw},
        "abel": {"tol": args.abel_tol},
        "race": kw,
    }
    reports = [run_suite(name, **options[name]) for name in suites]
    passed = all(r["passed"] for r in reports)
    payload = {"command": "verify", "suite": args.suite, "passed": passed, "reports": reports}
    if args.output_format == "pretty":
        lines = []
        for r in reports:
            for c in r["checks"]:
                lines.append(f"[{'PASS' if c['passed'] else 'FAIL'}] {r['suite']}: {c['name']}")
                for mm in c.get("mismatches", []):
                    lines.append(f"       table {mm['table']} x={mm['x']} {mm['column']}: "
                                 f"published {mm['published']}, computed {mm['computed']}")
                if "target" in c:
                    lines.append(f"       partial {float(c['partial_integral']):.6f}  "
                                 f"target {float(c['target']):.6f}  gap {float(c['gap']):.6f}")
        lines.append("overall: " + ("PASS" if passed else "FAIL"))
        sys.stdout.write("\n".join(lines) + "\n")
    else:
        sys.stdout.write(json.dumps({"schema": REPORT_SCHEMA, **payload}, sort_keys=True, indent=1) + "\n")
    return EXIT_OK if passed else EXIT_TOLERANCE


COMMANDS = {"count": cmd_count, "powersum": cmd_powersum, "table": cmd_table, "verify": cmd_verify}


def _attach_negative_values(argv: list[str]) -> list[str]:
    # "--k -1/10" would otherwise be read as an unknown flag
    out = []
    it = iter(argv)
    for tok in it:
        if tok in ("--k", "--x", "--X", "--grid"):
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-") and nxt[1:2].isdigit():
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
            continue
        out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    args = parser.parse_args(_attach_negative_values(argv))  # argparse exits with status 2 on bad flags
    try:
        if getattr(args, "workers", 1) < 1:
            raise UsageError("--workers must be >= 1")
        return COMMANDS[args.command](args)
    except BoundError as exc:
        print(f"apsums: bound error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (SieveError, DomainError, UsageError) as exc:
        print(f"apsums: invalid input: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except QuadratureError as exc:
        print(f"apsums: numerical failure: {exc}", file=sys.stderr)
        return EXIT_TOLERANCE
    except (MemoryError, OSError) as exc:
        print(f"apsums: resource error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
