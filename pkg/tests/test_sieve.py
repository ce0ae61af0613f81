from __future__ import annotations

import struct

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from apsums.sieve import (
    CACHE_MAGIC,
    BoundError,
    PrimeStream,
    ResidueClass,
    SieveConfig,
    SieveError,
    cache_path,
    classify,
    iter_prime_blocks,
    load_prime_cache,
    primes_up_to,
    read_prime_cache,
    sieve_segment,
    simple_sieve,
    stream_primes,
)
from oracles import naive_sieve, trial_division_primes


def window_primes(low, high):
    flags = sieve_segment(low, high, simple_sieve(int(high**0.5) + 1))
    return (np.flatnonzero(flags) + low).tolist()


def test_segment_examples():
    assert window_primes(2, 10) == [2, 3, 5, 7]
    assert window_primes(90, 100) == [97]


def test_segment_far_window_matches_naive_sieve():
    lo, hi = 9_999_900, 10_000_000
    flags = naive_sieve(hi)
    expected = np.flatnonzero(flags[lo:]) + lo
    assert window_primes(lo, hi) == expected.tolist()


def test_segment_rejects_short_base():
    with pytest.raises(SieveError):
        sieve_segment(1000, 2000, [2, 3, 5])
    with pytest.raises(SieveError):
        sieve_segment(10, 5, [2])
    with pytest.raises(BoundError):
        sieve_segment(10, 2**63, [2])


@given(st.integers(2, 20_000), st.integers(0, 3_000))
def test_segment_property(low, width):
    high = low + width
    expected = [p for p in trial_division_primes(high) if p >= low]
    assert window_primes(low, high) == expected


def test_stream_examples():
    got = list(stream_primes(SieveConfig(100), ResidueClass(4, 1)))
    assert got == [5, 13, 17, 29, 37, 41, 53, 61, 73, 89, 97]
    assert list(stream_primes(SieveConfig(10), ResidueClass(1, 0))) == [2, 3, 5, 7]
    assert primes_up_to(10**4, ResidueClass(4, 1)).size == 609


def test_classify_examples():
    assert classify(5, ResidueClass(4, 1))
    assert not classify(2, ResidueClass(4, 1))
    assert not classify(97, ResidueClass(5, 3))


@pytest.mark.parametrize("m, n", [(4, 2), (6, 3), (5, 0), (5, 5), (1, 1), (0, 0)])
def test_residue_class_validation(m, n):
    with pytest.raises(SieveError):
        ResidueClass(m, n)


def test_config_validation():
    with pytest.raises(SieveError):
        SieveConfig(1)
    with pytest.raises(SieveError):
        SieveConfig(100, segment_size=10)
    with pytest.raises(SieveError):
        SieveConfig(100, worker_count=0)
    with pytest.raises(BoundError):
        SieveConfig(2**63)


@pytest.mark.parametrize("segment_size", [1024, 4096, 65536])
def test_oracle_equivalence(oracle_primes_1e5, segment_size):
    got = primes_up_to(10**5, segment_size=segment_size)
    np.testing.assert_array_equal(got, oracle_primes_1e5)


@given(st.integers(2, 10**5), st.sampled_from([1024, 4096, 65536]))
def test_oracle_equivalence_any_limit(oracle_primes_1e5, limit, segment_size):
    expected = oracle_primes_1e5[oracle_primes_1e5 <= limit]
    np.testing.assert_array_equal(primes_up_to(limit, segment_size=segment_size), expected)


def test_worker_count_does_not_change_output():
    runs = [np.concatenate(list(iter_prime_blocks(SieveConfig(3_000_000, 1024, w)))) for w in (1, 2, 8)]
    for other in runs[1:]:
        assert runs[0].tobytes() == other.tobytes()


@pytest.mark.parametrize("modulus", [3, 4, 5, 8, 12])
def test_classes_partition_the_primes(modulus):
    limit = 50_000
    everything = primes_up_to(limit)
    units = [n for n in range(1, modulus) if np.gcd(n, modulus) == 1]
    parts = [primes_up_to(limit, ResidueClass(modulus, n)) for n in units]
    merged = np.sort(np.concatenate(parts))
    ramified = everything[np.gcd(everything, modulus) != 1]
    np.testing.assert_array_equal(np.sort(np.concatenate([merged, ramified])), everything)
    assert sum(p.size for p in parts) + ramified.size == everything.size


@given(st.integers(0, 400))
def test_resume_continues_after_cursor(cut):
    config = SieveConfig(20_000, 1024)
    full = list(stream_primes(config, ResidueClass(4, 3)))
    stream = stream_primes(config, ResidueClass(4, 3))
    head = []
    for p in stream:
        if len(head) == cut:
            break
        head.append(p)
    # the loop consumed one extra prime past the cut; rewind the cursor to the head
    state = stream.checkpoint()
    state["cursor"] = head[-1] if head else 0
    tail = list(PrimeStream.resume(state))
    assert head + tail == full


def test_stream_is_single_consumer():
    stream = stream_primes(SieveConfig(100))
    list(stream)
    with pytest.raises(RuntimeError):
        list(stream)


def test_cache_round_trip_and_format(tmp_path):
    config = SieveConfig(200_000, 4096)
    uncached = np.concatenate(list(iter_prime_blocks(config)))
    first = np.concatenate(list(iter_prime_blocks(config, cache_dir=tmp_path)))
    path = cache_path(tmp_path, 200_000)
    assert path.exists()
    assert not list(tmp_path.glob("*.partial-*"))
    second = np.concatenate(list(iter_prime_blocks(config, cache_dir=tmp_path)))
    assert uncached.tobytes() == first.tobytes() == second.tobytes()

    raw = path.read_bytes()
    magic, version, limit = struct.unpack("<4sIQ", raw[:16])
    assert (magic, version, limit) == (CACHE_MAGIC, 1, 200_000)
    assert np.frombuffer(raw[16:], dtype="<u8").tolist() == uncached.tolist()
    assert read_prime_cache(path)[0] == 200_000

    # a larger cached table serves smaller requests and resumes correctly
    smaller = SieveConfig(1000)
    assert np.concatenate(list(iter_prime_blocks(smaller, cache_dir=tmp_path))).tolist() == \
        trial_division_primes(1000)
    assert load_prime_cache(tmp_path, 10**6) is None
    tail = np.concatenate(list(iter_prime_blocks(smaller, start_after=900, cache_dir=tmp_path)))
    assert tail.tolist() == [p for p in trial_division_primes(1000) if p > 900]


def test_abandoned_cache_write_leaves_no_file(tmp_path):
    blocks = iter_prime_blocks(SieveConfig(500_000, 1024), cache_dir=tmp_path)
    next(blocks)
    blocks.close()
    assert list(tmp_path.iterdir()) == []
