"""Prime counts and prime power sums over residue classes.

Everything funnels through :func:`evaluate_queries`: a batch of
``(bound, exponent, class)`` requests is answered from one ascending pass of
the sieve.  Each (exponent, class) pair owns a compensated accumulator that
sees its primes in increasing order, so a value depends only on the prime
sequence and not on how the sieve chopped it into blocks.
"""

from __future__ import annotations

import json
import math
from collections import defaultdict
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np
from numba import njit

from .sieve import ResidueClass, SieveConfig, SieveError, iter_prime_blocks

CHECKPOINT_SCHEMA = 1


class DomainError(ValueError):
    """Exponent outside k > -1."""


@dataclass(frozen=True, order=True)
class RationalExponent:
    """The exponent ``k = numerator / denominator`` in lowest terms, ``k > -1``."""

    numerator: int
    denominator: int = 1

    def __post_init__(self):
        a, b = self.numerator, self.denominator
        if b <= 0:
            raise DomainError(f"denominator must be positive, got {b}")
        g = math.gcd(a, b)
        if g != 1:
            object.__setattr__(self, "numerator", a // g)
            object.__setattr__(self, "denominator", b // g)
        if self.numerator + self.denominator <= 0:
            raise DomainError(f"exponent must exceed -1, got {self}")

    @classmethod
    def parse(cls, text) -> RationalExponent:
        """Accept ``"1"``, ``"1/2"``, ``"-1/10"``, ints and Fractions."""
        if isinstance(text, RationalExponent):
            return text
        try:
            frac = Fraction(text) if not isinstance(text, float) else None
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"cannot parse exponent {text!r}") from exc
        if frac is None:
            raise DomainError("exponents must be given exactly, not as floats")
        return cls(frac.numerator, frac.denominator)

    @property
    def is_integer(self) -> bool:
        return self.denominator == 1

    @property
    def value(self) -> float:
        return self.numerator / self.denominator

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def __str__(self):
        if self.denominator == 1:
            return str(self.numerator)
        return f"{self.numerator}/{self.denominator}"


ZERO = RationalExponent(0)


def iroot(n: int, e: int) -> int:
    """Largest integer r >= 0 with r**e <= n."""
    if n < 0 or e < 1:
        raise ValueError("iroot needs n >= 0 and e >= 1")
    if n < 2 or e == 1:
        return n
    if e == 2:
        return math.isqrt(n)
    # float guess, then exact correction
    try:
        r = int(round(math.exp(math.log(n) / e)))
    except OverflowError:
        r = 1 << (n.bit_length() // e + 1)
    while r**e > n:
        r -= 1
    while (r + 1) ** e <= n:
        r += 1
    return r


def threshold_membership(p: int, x: int, k: RationalExponent) -> bool:
    """True iff ``p <= x**(1/(k+1))``, decided as ``p**(a+b) <= x**b``."""
    a, b = k.numerator, k.denominator
    return p ** (a + b) <= x**b


BOUNDARY_RULES = ("exact", "published")


def threshold_bound(x: int, k: RationalExponent, boundary: str = "exact") -> int:
    """Largest integer p with ``p**(a+b) <= x**b``; primes up to it are exactly the members.

    ``boundary="published"`` reproduces the convention behind the published
    tables: for k > 0 the integer ``floor(x**(1/(k+1)))`` itself is excluded
    (a half-open prime range), while k <= 0 is unchanged.
    """
    if boundary not in BOUNDARY_RULES:
        raise ValueError(f"unknown boundary rule {boundary!r}; expected one of {BOUNDARY_RULES}")
    a, b = k.numerator, k.denominator
    bound = iroot(x**b, a + b)
    if boundary == "published" and a > 0:
        bound -= 1
    return bound


def power_bound(x: int, k: RationalExponent) -> int:
    """``floor(x**(k+1))`` computed exactly."""
    a, b = k.numerator, k.denominator
    return iroot(x ** (a + b), b)


# -- compensated accumulation -------------------------------------------------

_MODE_COUNT, _MODE_INT, _MODE_EXP = 0, 1, 2


@njit(cache=True, nogil=True)
def _neumaier_powers(primes, mode, k_float, k_int, s, c):
    for i in range(primes.shape[0]):
        p = float(primes[i])
        if mode == 0:
            term = 1.0
        elif mode == 1:
            term = 1.0
            for _ in range(k_int):
                term *= p
        else:
            term = math.exp(k_float * math.log(p))
        t = s + term
        if abs(s) >= abs(term):
            c += (s - t) + term
        else:
            c += (term - t) + s
        s = t
    return s, c


@njit(cache=True, nogil=True)
def _neumaier_apply(values, s, c):
    for i in range(values.shape[0]):
        term = values[i]
        t = s + term
        if abs(s) >= abs(term):
            c += (s - t) + term
        else:
            c += (term - t) + s
        s = t
    return s, c


def neumaier_sum(values) -> float:
    s, c = _neumaier_apply(np.asarray(values, dtype=np.float64), 0.0, 0.0)
    return s + c


@dataclass
class PowerSumAccumulator:
    """Running ``sum p**k`` with a Kahan-Babuska carry and, for integer k >= 0, an exact twin."""

    exponent: RationalExponent = ZERO
    float_sum: float = 0.0
    float_compensation: float = 0.0
    exact_sum: int | None = None
    term_count: int = 0

    def __post_init__(self):
        if self.exact_sum is None and self.exact_active:
            self.exact_sum = 0

    @property
    def exact_active(self) -> bool:
        return self.exponent.is_integer and self.exponent.numerator >= 0

    @property
    def value(self) -> float:
        return self.float_sum + self.float_compensation

    def add(self, primes: np.ndarray) -> None:
        if primes.size == 0:
            return
        k = self.exponent
        if k.numerator == 0:
            mode = _MODE_COUNT
        elif k.is_integer and k.numerator > 0:
            mode = _MODE_INT
        else:
            mode = _MODE_EXP
        self.float_sum, self.float_compensation = _neumaier_powers(
            primes, mode, k.value, max(k.numerator, 0), self.float_sum, self.float_compensation)
        if self.exact_active:
            self.exact_sum += _exact_power_sum(primes, k.numerator)
        self.term_count += int(primes.size)

    def snapshot(self) -> PowerSumAccumulator:
        return replace(self)

    def to_json(self) -> dict:
        return {
            "k": str(self.exponent),
            "value": repr(self.value),
            "float_sum": repr(self.float_sum),
            "float_compensation": repr(self.float_compensation),
            "exact_sum": None if self.exact_sum is None else str(self.exact_sum),
            "term_count": self.term_count,
        }

    @classmethod
    def from_json(cls, doc: dict) -> PowerSumAccumulator:
        return cls(
            exponent=RationalExponent.parse(doc["k"]),
            float_sum=float(doc["float_sum"]),
            float_compensation=float(doc["float_compensation"]),
            exact_sum=None if doc["exact_sum"] is None else int(doc["exact_sum"]),
            term_count=int(doc["term_count"]),
        )


def _exact_power_sum(primes: np.ndarray, k: int) -> int:
    if k == 0:
        return int(primes.size)
    if k == 1 and int(primes[-1]) * primes.size < 2**62:
        return int(primes.sum(dtype=np.int64))
    return sum(p**k for p in primes.tolist())


# -- batched single-pass evaluation ---------------------------------------------

@dataclass(frozen=True)
class SumQuery:
    """Sum of ``p**exponent`` over class primes ``p <= bound``."""

    bound: int
    exponent: RationalExponent
    residue_class: ResidueClass


def evaluate_queries(queries, *, segment_size: int | None = None, worker_count: int = 1,
                     cache_dir=None) -> dict[SumQuery, PowerSumAccumulator]:
    """Answer every query from a single sieve pass up to the largest bound."""
    queries = list(dict.fromkeys(queries))
    results: dict[SumQuery, PowerSumAccumulator] = {}
    groups: dict[tuple, list[int]] = defaultdict(list)
    for q in queries:
        if q.bound < 2:
            results[q] = PowerSumAccumulator(q.exponent)
        else:
            groups[(q.exponent, q.residue_class)].append(q.bound)
    if not groups:
        return results
    limit = max(max(b) for b in groups.values())
    config = SieveConfig(limit, **({"segment_size": segment_size} if segment_size else {}),
                         worker_count=worker_count)

    state = {}
    for (k, rc), bounds in groups.items():
        state[(k, rc)] = (PowerSumAccumulator(k), sorted(set(bounds)))
    classes = {rc for _, rc in groups}

    for block in iter_prime_blocks(config, cache_dir=cache_dir):
        top = int(block[-1])
        selected = {rc: rc.select(block) for rc in classes}
        for (k, rc), (acc, pending) in state.items():
            arr = selected[rc]
            start = 0
            while pending and pending[0] < top:
                cut = int(np.searchsorted(arr, pending[0], side="right"))
                acc.add(arr[start:cut])
                start = cut
                results[SumQuery(pending.pop(0), k, rc)] = acc.snapshot()
            acc.add(arr[start:])
    for (k, rc), (acc, pending) in state.items():
        for b in pending:
            results[SumQuery(b, k, rc)] = acc.snapshot()
    return results


def power_sum(x: int, k, residue_class: ResidueClass, **kwargs) -> PowerSumAccumulator:
    """``sum of p**k`` over primes ``p <= x`` with ``p`` in the class."""
    k = RationalExponent.parse(k)
    if x < 0:
        raise DomainError("x must be nonnegative")
    q = SumQuery(x, k, residue_class)
    return evaluate_queries([q], **kwargs)[q]


def count_primes(x: int, residue_class: ResidueClass, **kwargs) -> int:
    return power_sum(x, ZERO, residue_class, **kwargs).term_count


def power_sum_at_threshold(x: int, k, residue_class: ResidueClass, boundary: str = "exact",
                           **kwargs) -> PowerSumAccumulator:
    """Sum of ``p**k`` over class primes with ``p**(k+1) <= x``."""
    k = RationalExponent.parse(k)
    return power_sum(threshold_bound(x, k, boundary), k, residue_class, **kwargs)


# -- checkpoints ------------------------------------------------------------------

@dataclass
class CheckpointedCounts:
    x: int
    residue_class: ResidueClass
    pi: int
    power_sums: dict[RationalExponent, PowerSumAccumulator] = field(default_factory=dict)

    def to_json(self) -> str:
        doc = {
            "schema": CHECKPOINT_SCHEMA,
            "x": self.x,
            "m": self.residue_class.modulus,
            "n": self.residue_class.residue,
            "pi": self.pi,
            "power_sums": {str(k): acc.to_json() for k, acc in sorted(self.power_sums.items())},
        }
        return json.dumps(doc, indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> CheckpointedCounts:
        doc = json.loads(text)
        if doc.get("schema") != CHECKPOINT_SCHEMA:
            raise SieveError(f"unsupported checkpoint schema {doc.get('schema')!r}")
        sums = {RationalExponent.parse(key): PowerSumAccumulator.from_json(val)
                for key, val in doc["power_sums"].items()}
        return cls(int(doc["x"]), ResidueClass(doc["m"], doc["n"]), int(doc["pi"]), sums)


def checkpointed_counts(x_values, residue_class: ResidueClass, exponents=(),
                        **kwargs) -> list[CheckpointedCounts]:
    """Counts and power sums at each x, all from one pass."""
    exponents = [RationalExponent.parse(k) for k in exponents]
    queries = [SumQuery(x, k, residue_class) for x in x_values for k in [ZERO, *exponents]]
    res = evaluate_queries(queries, **kwargs)
    out = []
    for x in x_values:
        sums = {k: res[SumQuery(x, k, residue_class)] for k in exponents}
        out.append(CheckpointedCounts(x, residue_class, res[SumQuery(x, ZERO, residue_class)].term_count, sums))
    return out
