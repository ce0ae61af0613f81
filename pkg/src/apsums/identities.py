"""Error tables, sign statistics, the integral identity and prime races."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal

import numpy as np

from . import reference
from .baselines import stieltjes_sums
from .prime_stats import (
    ZERO,
    DomainError,
    RationalExponent,
    SumQuery,
    evaluate_queries,
    power_bound,
    threshold_bound,
)
from .sieve import MAX_LIMIT, BoundError, ResidueClass, SieveConfig, SieveError, iter_prime_blocks

CSV_HEADER = ("x", "pi", "approx", "error_pct")
_FIVE_PLACES = Decimal("0.00001")


def round_half_up(value: float, places: int = 5) -> Decimal:
    """Round the exact binary value of ``value`` half-up to ``places`` decimals."""
    return Decimal(value).quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_UP)


@dataclass(frozen=True)
class TableRow:
    x: int
    pi: int
    approx: float
    error_pct: float

    @property
    def sign(self) -> int:
        return (self.error_pct > 0) - (self.error_pct < 0)

    def csv_fields(self) -> list[str]:
        return [str(self.x), str(self.pi), str(round_half_up(self.approx)),
                str(round_half_up(self.error_pct))]


def _row(x: int, pi: int, approx: float) -> TableRow:
    if pi == 0:
        raise DomainError(f"no class primes up to {x}; the relative error is undefined")
    return TableRow(x, pi, approx, 100.0 * (pi - approx) / pi)


def generate_tables(specs, x_values, boundary: str = "exact", **sieve_kwargs):
    """Rows for several ``(k, class)`` pairs over one grid, from a single sieve pass.

    Returns a list of row lists in the order of ``specs``.
    """
    x_values = [int(x) for x in x_values]
    if not x_values:
        raise SieveError("empty x grid")
    if any(b <= a for a, b in zip(x_values, x_values[1:])):
        raise SieveError("x grid must be strictly ascending")
    if x_values[0] < 2:
        raise DomainError("table x values must be >= 2")
    specs = [(RationalExponent.parse(k), rc) for k, rc in specs]
    queries = []
    for k, rc in specs:
        for x in x_values:
            queries.append(SumQuery(x, ZERO, rc))
            queries.append(SumQuery(threshold_bound(x, k, boundary), k, rc))
    res = evaluate_queries(queries, **sieve_kwargs)
    tables = []
    for k, rc in specs:
        tables.append([
            _row(x, res[SumQuery(x, ZERO, rc)].term_count,
                 res[SumQuery(threshold_bound(x, k, boundary), k, rc)].value)
            for x in x_values
        ])
    return tables


def generate_table(k, residue_class: ResidueClass, x_values=reference.TABLE_GRID,
                   boundary: str = "exact", **sieve_kwargs) -> list[TableRow]:
    return generate_tables([(k, residue_class)], x_values, boundary, **sieve_kwargs)[0]


def error_at(x: int, k, residue_class: ResidueClass, boundary: str = "exact",
             **sieve_kwargs) -> TableRow:
    if x < 2:
        raise DomainError("error_at needs x >= 2")
    return generate_table(k, residue_class, [x], boundary, **sieve_kwargs)[0]


def published_specs() -> dict[int, tuple[RationalExponent, ResidueClass]]:
    return {num: (RationalExponent.parse(k), ResidueClass(m, n))
            for num, (k, m, n, _) in reference.PUBLISHED_TABLES.items()}


def reproduce_published_tables(x_values=reference.TABLE_GRID, boundary: str = "published",
                               tables=None, **sieve_kwargs) -> dict[int, list[TableRow]]:
    """Regenerate the sixteen published tables (or a subset) in one pass."""
    specs = published_specs()
    numbers = sorted(tables) if tables is not None else sorted(specs)
    rows = generate_tables([specs[i] for i in numbers], x_values, boundary, **sieve_kwargs)
    return dict(zip(numbers, rows))


def table_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(row.csv_fields())
    return buf.getvalue()


def read_table_csv(text: str) -> list[tuple[int, int, Decimal, Decimal]]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if tuple(header) != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {header}")
    return [(int(x), int(pi), Decimal(a), Decimal(e)) for x, pi, a, e in reader]


# -- sign statistics -------------------------------------------------------------

@dataclass(frozen=True)
class SignStatistics:
    positive: int
    negative: int
    zero: int

    @property
    def signed(self) -> int:
        return self.positive + self.negative

    @property
    def fraction_positive(self) -> float:
        return self.positive / self.signed if self.signed else 0.0

    @property
    def fraction_negative(self) -> float:
        return self.negative / self.signed if self.signed else 0.0

    def percent(self, which: str) -> Decimal:
        """Half-up percentage over signed rows, two decimals."""
        count = self.positive if which == "positive" else self.negative
        if not self.signed:
            return Decimal("0.00")
        return (Decimal(100 * count) / Decimal(self.signed)).quantize(
            Decimal("0.01"), rounding=ROUND_HALF_UP)

    def to_dict(self) -> dict:
        return {"positive": self.positive, "negative": self.negative, "zero": self.zero,
                "percent_positive": str(self.percent("positive")),
                "percent_negative": str(self.percent("negative"))}


def sign_statistics(tables) -> SignStatistics:
    """Pool rows from several tables; zero errors are counted apart from both signs."""
    rows = [row for table in tables for row in table]
    if not rows:
        raise ValueError("sign_statistics needs at least one row")
    signs = [row.sign for row in rows]
    return SignStatistics(signs.count(1), signs.count(-1), signs.count(0))


# -- integral identity ------------------------------------------------------------

@dataclass(frozen=True)
class IntegralIdentityReport:
    k: RationalExponent
    residue_class: ResidueClass
    upper_limit: int
    partial_integral: float
    target: float
    gap: float

    def to_dict(self) -> dict:
        return {"k": str(self.k), "m": self.residue_class.modulus,
                "n": self.residue_class.residue, "X": self.upper_limit,
                "partial_integral": repr(self.partial_integral),
                "target": repr(self.target), "gap": repr(self.gap)}


def integral_target(k: RationalExponent, residue_class: ResidueClass) -> float:
    """Closed-form value of the full integral, -log(k+1) / ((k+1) phi(m))."""
    kp1 = (k.numerator + k.denominator) / k.denominator
    if k.numerator == 0:
        return 0.0
    return -math.log(kp1) / (kp1 * residue_class.totient)


def theorem2_partial_integral(k, residue_class: ResidueClass, X: int,
                              max_limit: int = MAX_LIMIT, **sieve_kwargs) -> IntegralIdentityReport:
    """Integral over [1, X] of (pi_k(t) - pi(t^(k+1))) / t^(k+2), evaluated exactly.

    Integrating each term by parts turns the partial integral into
    ``[ (pi(X^(k+1)) - pi_k(X)) / X^(k+1) + S(X) - S(X^(k+1)) ] / (k+1)``
    with ``S(y)`` the class sum of 1/p up to y, so only prime enumeration is
    needed.
    """
    k = RationalExponent.parse(k)
    if X < 2:
        raise DomainError("X must be >= 2")
    inner = power_bound(X, k)  # floor(X^(k+1)), exact
    if max(inner, X) > max_limit:
        raise BoundError(f"X^(k+1) requires sieving to {max(inner, X)}, beyond the limit {max_limit}")
    if k.numerator == 0:
        return IntegralIdentityReport(k, residue_class, X, 0.0, 0.0, 0.0)
    res = evaluate_queries([SumQuery(X, k, residue_class), SumQuery(inner, ZERO, residue_class)],
                           **sieve_kwargs)
    pi_k_X = res[SumQuery(X, k, residue_class)].value
    pi_inner = res[SumQuery(inner, ZERO, residue_class)].term_count
    s_X, s_inner = stieltjes_sums(lambda t: 1.0 / t, [X, inner], residue_class, **sieve_kwargs)
    kp1 = (k.numerator + k.denominator) / k.denominator
    scale = math.exp(kp1 * math.log(X))
    partial = ((pi_inner - pi_k_X) / scale + (s_X - s_inner)) / kp1
    target = integral_target(k, residue_class)
    return IntegralIdentityReport(k, residue_class, X, partial, target, abs(partial - target))


# -- prime races -------------------------------------------------------------------

@dataclass(frozen=True)
class RaceTally:
    modulus: int
    contenders: tuple[int, int]
    samples: int
    leads: int
    ties: int
    leader_changes: int

    @property
    def lead_fraction(self) -> float:
        return self.leads / self.samples if self.samples else 0.0

    @property
    def tie_fraction(self) -> float:
        return self.ties / self.samples if self.samples else 0.0

    def to_dict(self) -> dict:
        return {"m": self.modulus, "n1": self.contenders[0], "n2": self.contenders[1],
                "samples": self.samples, "leads": self.leads, "ties": self.ties,
                "leader_changes": self.leader_changes,
                "lead_fraction": repr(self.lead_fraction)}


def default_stride(X: int) -> int:
    return 1 if X <= 10**6 else 97


def race_tally(m: int, n1: int, n2: int, X: int, sample_stride: int | None = None,
               **sieve_kwargs) -> RaceTally:
    """Tally ``pi(x; m, n1) > pi(x; m, n2)`` at x = 2, 2 + stride, ... <= X.

    ``leader_changes`` counts switches of the strict leader; samples with a
    tie neither count as leads nor break a run.
    """
    first, second = ResidueClass(m, n1), ResidueClass(m, n2)
    if n1 == n2:
        raise SieveError("race contenders must be distinct residues")
    if m < 2:
        raise SieveError("a race needs modulus >= 2")
    if X < 2:
        raise DomainError("X must be >= 2")
    stride = sample_stride or default_stride(X)
    samples = np.arange(2, X + 1, stride, dtype=np.int64)
    leads = ties = changes = 0
    leader = 0
    c1 = c2 = 0
    pos = 0
    cache_dir = sieve_kwargs.pop("cache_dir", None)
    for block in iter_prime_blocks(SieveConfig(X, **sieve_kwargs), cache_dir=cache_dir):
        top = int(block[-1])
        end = int(np.searchsorted(samples, top, side="left"))
        p1, p2 = first.select(block), second.select(block)
        # samples strictly below this block's top prime see part of the block
        chunk = samples[pos:end]
        if chunk.size:
            d = (c1 + np.searchsorted(p1, chunk, side="right")) - (c2 + np.searchsorted(p2, chunk, side="right"))
            leads, ties, changes, leader = _fold(d, leads, ties, changes, leader)
        pos = end
        c1 += p1.size
        c2 += p2.size
    chunk = samples[pos:]
    if chunk.size:
        d = np.full(chunk.size, c1 - c2, dtype=np.int64)
        leads, ties, changes, leader = _fold(d, leads, ties, changes, leader)
    return RaceTally(m, (n1, n2), int(samples.size), leads, ties, changes)


def _fold(d, leads, ties, changes, leader):
    leads += int((d > 0).sum())
    ties += int((d == 0).sum())
    signs = np.sign(d[d != 0])
    if signs.size:
        seq = np.concatenate([[leader], signs]) if leader else signs
        changes += int((seq[1:] != seq[:-1]).sum())
        leader = int(signs[-1])
    return leads, ties, changes, leader
