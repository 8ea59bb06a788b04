import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sopfr import (
    Factorization,
    build_sieve,
    factorize,
    iter_sopfr_mod,
    primes_upto,
    sopfr,
    sopfr_mod,
    stream_sopfr_mod,
)
from sopfr.sieve import sopfr_mod_segment, sopfr_segment

from conftest import sopfr_oracle, trial_division_factors


def test_build_sieve_small_range():
    sv = build_sieve(2, 20)
    assert sv.spf_of(12) == 2
    assert sv.spf_of(13) == 13
    assert sv.spf_of(15) == 3


def test_build_sieve_unit_only():
    sv = build_sieve(1, 1)
    assert sv.primes.size == 0
    assert factorize(1, sv).factors == ()


def test_build_sieve_invariants_sampled():
    sv = build_sieve(1, 5000)
    primes = set(primes_upto(5000).tolist())
    for n in range(2, 5001):
        p = sv.spf_of(n)
        assert n % p == 0 and p in primes
        assert (p == n) == (n in primes)


def test_build_sieve_segment_vs_trial_division():
    lo = 10**6
    sv = build_sieve(lo, lo + 10**5)
    rng = random.Random(7)
    for _ in range(20):
        n = rng.randint(lo, lo + 10**5)
        assert sv.spf_of(n) == trial_division_factors(n)[0][0]
        assert factorize(n, sv).factors == tuple(trial_division_factors(n))


def test_build_sieve_errors():
    with pytest.raises(ValueError):
        build_sieve(10, 5)
    with pytest.raises(ValueError):
        build_sieve(0, 5)
    with pytest.raises(ValueError):
        build_sieve(1, 10**9)  # exceeds max segment length
    with pytest.raises(ValueError):
        build_sieve(2**62, 2**62 + 10)


def test_factorize_examples(sieve_1e5):
    assert factorize(12, sieve_1e5).factors == ((2, 2), (3, 1))
    assert factorize(1, sieve_1e5).factors == ()
    assert factorize(9000, sieve_1e5).factors == ((2, 3), (3, 2), (5, 3))


def test_factorize_out_of_range(sieve_1e5):
    with pytest.raises(ValueError):
        factorize(10**5 + 1, sieve_1e5)


def test_factorization_validation():
    with pytest.raises(ValueError):
        Factorization(n=12, factors=((3, 1), (2, 2)))  # primes not increasing
    with pytest.raises(ValueError):
        Factorization(n=12, factors=((2, 1), (3, 1)))  # wrong product


def test_sopfr_examples(sieve_1e5):
    assert sopfr(factorize(12, sieve_1e5)).value == 7
    assert sopfr(factorize(1, sieve_1e5)).value == 0
    assert sopfr(factorize(2**10, sieve_1e5)).value == 20
    for p in (2, 3, 5, 97, 99991):
        assert sopfr(factorize(p, sieve_1e5)).value == p


def test_sopfr_prime_powers():
    # k*p for every prime p <= 1000 and k <= 20, on the exact integer path
    for p in primes_upto(1000).tolist():
        for k in range(1, 21):
            f = Factorization(n=p**k, factors=((p, k),))
            assert sopfr(f).value == k * p


def test_sopfr_mod_examples(sieve_1e5):
    assert sopfr_mod(12, 3, sieve_1e5) == 1
    for q in (2, 3, 7, 100):
        assert sopfr_mod(1, q, sieve_1e5) == 0
    with pytest.raises(ValueError):
        sopfr_mod(12, 0, sieve_1e5)


def test_sopfr_mod_large_n_vs_exact_oracle():
    n = 10**6 + 3
    sv = build_sieve(1, n)
    assert sopfr_mod(n, 9, sv) == sopfr_oracle(n) % 9


@settings(max_examples=60, deadline=None)
@given(
    m=st.integers(min_value=1, max_value=10**5),
    n=st.integers(min_value=1, max_value=10**5),
)
def test_complete_additivity(sieve_1e5, m, n):
    a_m = sopfr(factorize(m, sieve_1e5)).value
    a_n = sopfr(factorize(n, sieve_1e5)).value
    assert a_m + a_n == sopfr_oracle(m * n)


def test_segment_values_match_trial_division_up_to_1e5():
    primes = primes_upto(317)
    seg = sopfr_segment(1, 10**5 + 1, primes)
    for n in range(1, 10**5 + 1):
        assert seg[n - 1] == sopfr_oracle(n), n


def test_segments_are_consistent_across_boundaries():
    primes = primes_upto(1000)
    whole = sopfr_segment(1, 20001, primes)
    pieces = np.concatenate(
        [sopfr_segment(lo, min(lo + 3000, 20001), primes) for lo in range(1, 20001, 3000)]
    )
    assert np.array_equal(whole, pieces)


def test_streaming_matches_single_shot(sieve_1e5):
    q = 7
    seg = sopfr_mod_segment(1, 10**5 + 1, q, primes_upto(317))
    seen = 0
    for n, r in iter_sopfr_mod(10**5, q, segment_size=2**14):
        assert r == seg[n - 1]
        assert n == seen + 1  # increasing order, exactly once
        seen = n
    assert seen == 10**5
    # spot-check the per-n contract against sopfr_mod
    for n in (1, 2, 9973, 99991, 86400):
        assert seg[n - 1] == sopfr_mod(n, q, sieve_1e5)


def test_stream_visitor_abort_propagates():
    class Boom(Exception):
        pass

    calls = []

    def visitor(n, r):
        calls.append(n)
        if n == 5:
            raise Boom

    with pytest.raises(Boom):
        stream_sopfr_mod(100, 3, visitor)
    assert calls == [1, 2, 3, 4, 5]


def test_stream_errors():
    with pytest.raises(ValueError):
        list(iter_sopfr_mod(0, 3))
    with pytest.raises(ValueError):
        list(iter_sopfr_mod(10, 0))
