"""Verification suites shared by the ``verify`` command and the acceptance tests."""

from __future__ import annotations

import math
import random
from decimal import Decimal

import numpy as np

from . import reference
from .baselines import abel_summation_check, estimate_mertens_B
from .identities import (
    reproduce_published_tables,
    round_half_up,
    sign_statistics,
    theorem2_partial_integral,
    race_tally,
)
from .prime_stats import RationalExponent
from .sieve import ResidueClass, simple_sieve

SUITES = ("tables", "theorem2", "mertens", "abel", "race")
LAST_DIGIT = Decimal("0.00001")
SMALL_GRID_MAX = 10**6
MERTENS_GRID = (10**4, 10**5, 10**6, 10**7)
ABEL_TOL = 1e-8


def _check(name, passed, **detail):
    return {"name": name, "passed": bool(passed), **detail}


def compare_tables(produced, tables=None):
    """Cell-by-cell comparison against the transcribed tables.

    Integer columns must match exactly, fractional columns and error
    percentages to one unit in the fifth decimal.
    """
    mismatches = []
    for num, rows in sorted(produced.items()):
        if tables is not None and num not in tables:
            continue
        published = {row[0]: row for row in reference.PUBLISHED_TABLES[num][3]}
        for row in rows:
            _, pi, approx, err = published[row.x]
            got_a, got_e = round_half_up(row.approx), round_half_up(row.error_pct)
            if "." not in approx and row.approx != int(approx):
                mismatches.append({"table": num, "x": row.x, "column": "approx",
                                   "published": approx, "computed": str(got_a)})
            elif abs(got_a - Decimal(approx)) > LAST_DIGIT:
                mismatches.append({"table": num, "x": row.x, "column": "approx",
                                   "published": approx, "computed": str(got_a)})
            if row.pi != pi:
                mismatches.append({"table": num, "x": row.x, "column": "pi",
                                   "published": str(pi), "computed": str(row.pi)})
            if abs(got_e - Decimal(err)) > LAST_DIGIT:
                mismatches.append({"table": num, "x": row.x, "column": "error_pct",
                                   "published": err, "computed": str(got_e)})
    return mismatches


def sign_claims(produced):
    """Pooled sign percentages per published claim, computed from ``produced``."""
    out = []
    for first, last, which, printed in reference.PUBLISHED_SIGN_CLAIMS:
        stats = sign_statistics([produced[i] for i in range(first, last + 1)])
        count = stats.positive if which == "positive" else stats.negative
        out.append(_check(f"tables {first}-{last} {which}", stats.percent(which) == Decimal(printed),
                          count=count, rows=stats.signed + stats.zero,
                          percent=str(stats.percent(which)), published=printed))
    return out


def suite_tables(scale="full", boundary="published", **sieve_kwargs):
    grid = reference.TABLE_GRID
    if scale == "small":
        grid = tuple(x for x in grid if x <= SMALL_GRID_MAX)
    produced = reproduce_published_tables(grid, boundary=boundary, **sieve_kwargs)
    mismatches = compare_tables(produced)
    checks = [_check("table cells", not mismatches, rows=sum(map(len, produced.values())),
                     mismatches=mismatches)]
    if scale == "full":
        checks += sign_claims(produced)
    return checks


def suite_theorem2(k="1", m=4, n=1, X=10**4, tol=0.02, **sieve_kwargs):
    k = RationalExponent.parse(k)
    rc = ResidueClass(m, n)
    report = theorem2_partial_integral(k, rc, X, **sieve_kwargs)
    return [_check(f"integral identity k={k} ({m},{n}) X={X}", report.gap <= tol,
                   tolerance=tol, **report.to_dict())]


def suite_mertens(classes=((4, 1), (4, 3)), grid=MERTENS_GRID, tol=0.01, **sieve_kwargs):
    fits = [estimate_mertens_B(ResidueClass(m, n), grid, **sieve_kwargs) for m, n in classes]
    checks = [_check(f"mertens spread ({f.residue_class.modulus},{f.residue_class.residue})",
                     f.residual_bound <= tol, tolerance=tol, **f.to_dict()) for f in fits]
    distinct = len({f.B_estimate for f in fits}) == len(fits)
    checks.append(_check("class B estimates distinct", distinct,
                         B=[repr(f.B_estimate) for f in fits]))
    return checks


def abel_instances():
    """The three fixed instantiations: (label, a, f, f', x, y)."""
    out = []
    ones = np.ones(10)
    out.append(("a=1, f(t)=t", ones, lambda t: t, lambda t: np.ones_like(t), 0.5, 10.0))

    y = 10**4
    primes = simple_sieve(y)
    a = np.zeros(y)
    sel = primes[primes % 4 == 3]
    a[sel - 1] = np.log(sel) / sel
    out.append(("a(p)=log p/p on p=3 mod 4, f=1/log t", a, lambda t: 1 / np.log(t),
                lambda t: -1 / (t * np.log(t) ** 2), 2.0, float(y)))

    y = 10**3
    a = np.zeros(y)
    a[simple_sieve(y) - 1] = 1.0
    out.append(("prime indicator, f(t)=t^(1/2)", a, np.sqrt, lambda t: 0.5 / np.sqrt(t), 1.0, float(y)))
    return out


def random_abel_instances(count=100, seed=20240501):
    rng = random.Random(seed)
    out = []
    for i in range(count):
        y = rng.uniform(3.0, 40.0)
        x = rng.uniform(0.5, y - 1.0)
        top = math.floor(y)
        a = np.array([rng.choice([0.0, 0.0, rng.uniform(-1, 1)]) for _ in range(top)])
        coeffs = [rng.uniform(-1, 1) for _ in range(rng.randint(1, 4))]
        poly = np.polynomial.Polynomial(coeffs)
        out.append((f"random #{i}", a, poly, poly.deriv(), x, y))
    return out


def suite_abel(count=100, seed=20240501, tol=ABEL_TOL):
    checks = []
    for label, a, f, fp, x, y in abel_instances():
        r = abel_summation_check(a, f, fp, x, y)
        checks.append(_check(label, r <= tol, residual=repr(r)))
    worst = 0.0
    for label, a, f, fp, x, y in random_abel_instances(count, seed):
        worst = max(worst, abel_summation_check(a, f, fp, x, y))
    checks.append(_check(f"{count} random step/polynomial pairs", worst <= tol, worst=repr(worst)))
    return checks


def suite_race(m=4, n1=3, n2=1, X=10**6, stride=None, **sieve_kwargs):
    tally = race_tally(m, n1, n2, X, stride, **sieve_kwargs)
    return [_check(f"race {n1} vs {n2} mod {m} to {X}", tally.lead_fraction > 0.5, **tally.to_dict())]


def run_suite(name, **opts):
    runners = {"tables": suite_tables, "theorem2": suite_theorem2, "mertens": suite_mertens,
               "abel": suite_abel, "race": suite_race}
    checks = runners[name](**opts)
    return {"suite": name, "passed": all(c["passed"] for c in checks), "checks": checks}
