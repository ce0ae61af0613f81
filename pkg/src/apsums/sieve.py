"""Segmented sieve of Eratosthenes and residue-class prime streams.

The sieve works on odd numbers only.  Segment ``i`` covers the odd numbers
``2*j + 1`` for ``j`` in ``[i * segment_size, (i + 1) * segment_size)``, so
segment boundaries depend only on ``segment_size`` and never on the number of
workers.  Workers sieve segments concurrently; blocks are always handed to the
consumer in ascending segment order.
"""

from __future__ import annotations

import math
import os
import struct
from collections.abc import Iterator
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from numba import njit

MAX_LIMIT = 2**63 - 1
DEFAULT_SEGMENT_SIZE = 1 << 16
CACHE_MAGIC = b"APPS"
CACHE_VERSION = 1
_CACHE_HEADER = struct.Struct("<4sIQ")


class SieveError(ValueError):
    """Invalid sieve configuration or residue class."""


class BoundError(SieveError):
    """A bound lies outside the supported 64-bit range."""


@dataclass(frozen=True)
class SieveConfig:
    limit: int
    segment_size: int = DEFAULT_SEGMENT_SIZE
    worker_count: int = 1

    def __post_init__(self):
        if self.limit > MAX_LIMIT:
            raise BoundError(f"limit {self.limit} exceeds 2^63-1")
        if self.limit < 2:
            raise SieveError(f"limit must be >= 2, got {self.limit}")
        if self.segment_size < 1024:
            raise SieveError(f"segment_size must be >= 1024, got {self.segment_size}")
        if self.worker_count < 1:
            raise SieveError(f"worker_count must be >= 1, got {self.worker_count}")


@dataclass(frozen=True)
class ResidueClass:
    """Primes ``p`` with ``p % modulus == residue``.

    ``ResidueClass(1, 0)`` is the unrestricted class of all primes.
    """

    modulus: int
    residue: int

    def __post_init__(self):
        m, n = self.modulus, self.residue
        if m == 1:
            if n != 0:
                raise SieveError("the unrestricted class is (1, 0)")
            return
        if m < 1 or m >= 2**32:
            raise SieveError(f"modulus out of range: {m}")
        if not 1 <= n < m:
            raise SieveError(f"residue must satisfy 1 <= n < m, got ({m}, {n})")
        if math.gcd(m, n) != 1:
            raise SieveError(f"residue {n} is not a unit modulo {m}")

    @classmethod
    def all_primes(cls) -> ResidueClass:
        return cls(1, 0)

    @property
    def totient(self) -> int:
        return euler_phi(self.modulus)

    def contains(self, p: int) -> bool:
        return p % self.modulus == self.residue

    def select(self, primes: np.ndarray) -> np.ndarray:
        if self.modulus == 1:
            return primes
        return primes[primes % self.modulus == self.residue]

    def __str__(self):
        return f"{self.residue} mod {self.modulus}"


def euler_phi(m: int) -> int:
    result, rest, d = m, m, 2
    while d * d <= rest:
        if rest % d == 0:
            while rest % d == 0:
                rest //= d
            result -= result // d
        d += 1
    if rest > 1:
        result -= result // rest
    return result


def classify(p: int, residue_class: ResidueClass) -> bool:
    return residue_class.contains(p)


def simple_sieve(n: int) -> np.ndarray:
    """All primes <= n with a plain (unsegmented) sieve; used for base primes."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for q in range(3, math.isqrt(n) + 1, 2):
        if flags[q]:
            flags[q * q :: 2 * q] = False
    return np.flatnonzero(flags).astype(np.int64)


@njit(cache=True, nogil=True)
def _mark_odd_window(j0, count, base_primes, flags):
    # flags[i] describes the odd number 2*(j0 + i) + 1
    for i in range(count):
        flags[i] = 1
    lo = 2 * j0 + 1
    hi = 2 * (j0 + count - 1) + 1
    for idx in range(base_primes.shape[0]):
        q = base_primes[idx]
        if q == 2:
            continue
        qq = q * q
        if qq > hi:
            break
        if qq >= lo:
            start = qq
        else:
            r = lo % q
            start = lo if r == 0 else lo + (q - r)
            if start % 2 == 0:
                start += q
        for v in range((start - lo) // 2, count, q):
            flags[v] = 0
    if j0 == 0:
        flags[0] = 0  # 1 is not prime


def sieve_segment(low: int, high: int, base_primes) -> np.ndarray:
    """Prime flags for the closed window ``[low, high]``.

    ``base_primes`` must hold every prime up to ``isqrt(high)``.  Entry ``i`` of
    the returned boolean array is True iff ``low + i`` is prime.
    """
    if high > MAX_LIMIT:
        raise BoundError(f"high {high} exceeds 2^63-1")
    if not 2 <= low <= high:
        raise SieveError(f"need 2 <= low <= high, got {low}, {high}")
    base = np.asarray(base_primes, dtype=np.int64)
    root = math.isqrt(high)
    needed = base[base <= root]
    if not np.isin(simple_sieve(root), needed).all():
        raise SieveError("base_primes must cover every prime <= sqrt(high)")
    first_odd = low | 1
    j0 = first_odd // 2
    count = (high - first_odd) // 2 + 1 if high >= first_odd else 0
    out = np.zeros(high - low + 1, dtype=bool)
    if count > 0:
        flags = np.empty(count, dtype=np.uint8)
        _mark_odd_window(j0, count, needed, flags)
        out[first_odd - low :: 2] = flags.view(bool)
    if low == 2:
        out[0] = True
    return out


class PrimeStream:
    """Ascending stream of primes ``<= config.limit`` lying in one residue class.

    Iterating yields Python ints; :meth:`blocks` yields numpy arrays and is
    what the accumulators use.  ``cursor`` is the last prime handed out, and a
    stream rebuilt with :meth:`resume` continues strictly after it.
    """

    def __init__(self, config: SieveConfig, residue_class: ResidueClass | None = None,
                 cursor: int = 0, cache_dir: str | os.PathLike | None = None):
        self.config = config
        self.filter = residue_class or ResidueClass.all_primes()
        self.cursor = cursor
        self.cache_dir = Path(cache_dir) if cache_dir is not None else None
        self._started = False

    @classmethod
    def resume(cls, checkpoint: dict, cache_dir=None) -> PrimeStream:
        config = SieveConfig(checkpoint["limit"], checkpoint["segment_size"],
                             checkpoint.get("worker_count", 1))
        rc = ResidueClass(checkpoint["modulus"], checkpoint["residue"])
        return cls(config, rc, cursor=checkpoint["cursor"], cache_dir=cache_dir)

    def checkpoint(self) -> dict:
        return {
            "limit": self.config.limit,
            "segment_size": self.config.segment_size,
            "worker_count": self.config.worker_count,
            "modulus": self.filter.modulus,
            "residue": self.filter.residue,
            "cursor": self.cursor,
        }

    def blocks(self) -> Iterator[np.ndarray]:
        if self._started:
            raise RuntimeError("a PrimeStream is single-consumer; use resume() to restart")
        self._started = True
        for block in iter_prime_blocks(self.config, start_after=self.cursor,
                                       cache_dir=self.cache_dir):
            block = self.filter.select(block)
            if block.size:
                self.cursor = int(block[-1])
                yield block

    def __iter__(self) -> Iterator[int]:
        if self._started:
            raise RuntimeError("a PrimeStream is single-consumer; use resume() to restart")
        self._started = True
        for block in iter_prime_blocks(self.config, start_after=self.cursor,
                                       cache_dir=self.cache_dir):
            for p in self.filter.select(block).tolist():
                self.cursor = p
                yield p


def stream_primes(config: SieveConfig, residue_class: ResidueClass | None = None,
                  cache_dir=None) -> PrimeStream:
    return PrimeStream(config, residue_class, cache_dir=cache_dir)


def primes_up_to(limit: int, residue_class: ResidueClass | None = None, **kwargs) -> np.ndarray:
    """Convenience: every class prime <= limit as one int64 array."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    stream = stream_primes(SieveConfig(limit, **kwargs), residue_class)
    parts = list(stream.blocks())
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)


# blocks: one per batch of segments so numpy/numba call overhead stays small
_SEGMENTS_PER_BLOCK = 16


def iter_prime_blocks(config: SieveConfig, start_after: int = 0,
                      cache_dir: str | os.PathLike | None = None) -> Iterator[np.ndarray]:
    """Yield ascending int64 arrays of all primes in ``(start_after, limit]``."""
    if cache_dir is not None:
        cached = load_prime_cache(cache_dir, config.limit)
        if cached is not None:
            yield from _blocks_from_array(cached, config, start_after)
            return
        if start_after == 0:
            yield from _sieve_and_store(config, Path(cache_dir))
            return
    yield from _sieve_blocks(config, start_after)


def _blocks_from_array(primes, config, start_after):
    lo = int(np.searchsorted(primes, start_after, side="right"))
    hi = int(np.searchsorted(primes, config.limit, side="right"))
    step = 1 << 18
    for i in range(lo, hi, step):
        yield np.array(primes[i : min(i + step, hi)], dtype=np.int64)


def _sieve_blocks(config: SieveConfig, start_after: int) -> Iterator[np.ndarray]:
    limit = config.limit
    if start_after < 2 <= limit:
        yield np.array([2], dtype=np.int64)
    if limit < 3:
        return
    base = simple_sieve(math.isqrt(limit))
    seg = config.segment_size
    j_end = (limit - 1) // 2 + 1  # odd numbers 2j+1 <= limit
    j_first = max(start_after + 1, 3) // 2
    first_seg = j_first // seg
    n_segs = (j_end + seg - 1) // seg
    seg_ids = range(first_seg, n_segs)

    def work(batch_start):
        parts = []
        flags = np.empty(seg, dtype=np.uint8)
        for s in range(batch_start, min(batch_start + _SEGMENTS_PER_BLOCK, n_segs)):
            j0 = s * seg
            count = min(seg, j_end - j0)
            _mark_odd_window(j0, count, base, flags)
            idx = np.flatnonzero(flags[:count])
            parts.append(2 * (idx.astype(np.int64) + j0) + 1)
        out = np.concatenate(parts)
        return out[out > start_after] if out.size and out[0] <= start_after else out

    starts = list(seg_ids[::_SEGMENTS_PER_BLOCK])
    if config.worker_count == 1:
        for b in starts:
            block = work(b)
            if block.size:
                yield block
        return
    with ThreadPoolExecutor(max_workers=config.worker_count) as pool:
        # bounded lookahead keeps memory flat; map() preserves segment order
        window = 4 * config.worker_count
        for i in range(0, len(starts), window):
            for block in pool.map(work, starts[i : i + window]):
                if block.size:
                    yield block


# -- optional on-disk cache ---------------------------------------------------

def cache_path(cache_dir, limit: int) -> Path:
    return Path(cache_dir) / f"primes-{limit}.apps"


def write_prime_cache(path, limit: int, primes: np.ndarray) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    with open(tmp, "wb") as fh:
        fh.write(_CACHE_HEADER.pack(CACHE_MAGIC, CACHE_VERSION, limit))
        fh.write(np.asarray(primes, dtype="<u8").tobytes())
    os.replace(tmp, path)


def read_prime_cache(path) -> tuple[int, np.ndarray]:
    with open(path, "rb") as fh:
        magic, version, limit = _CACHE_HEADER.unpack(fh.read(_CACHE_HEADER.size))
    if magic != CACHE_MAGIC or version != CACHE_VERSION:
        raise SieveError(f"{path} is not a version-{CACHE_VERSION} prime cache")
    data = np.memmap(path, dtype="<u8", mode="r", offset=_CACHE_HEADER.size)
    return limit, data.view(np.int64) if data.size else np.zeros(0, dtype=np.int64)


def load_prime_cache(cache_dir, limit: int):
    """Smallest cached prime table covering ``limit``, or None."""
    best = None
    for path in Path(cache_dir).glob("primes-*.apps"):
        try:
            cached_limit = int(path.stem.split("-", 1)[1])
        except ValueError:
            continue
        if cached_limit >= limit and (best is None or cached_limit < best[0]):
            best = (cached_limit, path)
    if best is None:
        return None
    _, primes = read_prime_cache(best[1])
    return primes


def _sieve_and_store(config: SieveConfig, cache_dir: Path) -> Iterator[np.ndarray]:
    path = cache_path(cache_dir, config.limit)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(f".partial-{os.getpid()}")
    done = False
    try:
        with open(tmp, "wb") as fh:
            fh.write(_CACHE_HEADER.pack(CACHE_MAGIC, CACHE_VERSION, config.limit))
            for block in _sieve_blocks(config, 0):
                fh.write(block.astype("<u8").tobytes())
                yield block
        os.replace(tmp, path)
        done = True
    finally:
        if not done:
            tmp.unlink(missing_ok=True)
