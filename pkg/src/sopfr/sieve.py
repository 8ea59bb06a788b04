"""Segmented sieving for sopfr(n), the additive prime-divisor function.

For n = prod p_i^{a_i} the function computed here is

    sopfr(n) = sum_i a_i * p_i        (sopfr(1) = 0, empty sum)

It is completely additive: sopfr(mn) = sopfr(m) + sopfr(n) for all m, n.

Provides:
- prime enumeration (single source of primes for the whole package)
- FactorSieve: smallest-prime-factor table over a segment [lo, hi]
- exact factorization and sopfr values for n inside a sieve segment
- a vectorized segment engine producing sopfr(n) mod q for whole segments,
  which is what makes counting up to 10^8..10^9 feasible
"""

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Callable, Iterator

import numpy as np

DEFAULT_SEGMENT_SIZE = 1 << 22  # cache-friendly; keeps memory flat for large x
MAX_SIEVE_LENGTH = 1 << 26
# n must fit comfortably in int64: sopfr(n) <= n, so the accumulators below
# cannot overflow as long as hi stays under this bound.
MAX_SIEVE_BOUND = 1 << 62


@lru_cache(maxsize=8)
def _primes_upto_cached(limit: int) -> np.ndarray:
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, isqrt(limit) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    primes = np.nonzero(mask)[0].astype(np.int64)
    primes.setflags(write=False)
    return primes


def primes_upto(limit: int) -> np.ndarray:
    """All primes <= limit as a read-only int64 array (cached)."""
    if limit < 0:
        raise ValueError("limit must be nonnegative")
    return _primes_upto_cached(int(limit))


@dataclass(frozen=True)
class FactorSieve:
    """Smallest-prime-factor table for the integers in [lo, hi].

    spf[n - lo] is the smallest prime factor of n (spf entry for n = 1 is 1,
    a sentinel: the unit has no prime factor).  primes holds the primes up to
    sqrt(hi) used for marking; immutable and safe to share between threads.
    """

    lo: int
    hi: int
    spf: np.ndarray
    primes: np.ndarray

    def spf_of(self, n: int) -> int:
        if not self.lo <= n <= self.hi:
            raise ValueError(f"n={n} outside sieve range [{self.lo}, {self.hi}]")
        return int(self.spf[n - self.lo])


@dataclass(frozen=True)
class Factorization:
    """n = prod p^a with strictly increasing primes; empty factors iff n = 1."""

    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        prev = 1
        for p, a in self.factors:
            if p <= prev or a < 1:
                raise ValueError(f"invalid factorization of {self.n}")
            prev = p
            prod *= p**a
        if prod != self.n:
            raise ValueError(f"factors do not multiply to {self.n}")


@dataclass(frozen=True)
class SopfrValue:
    n: int
    value: int


def build_sieve(lo: int, hi: int, max_length: int = MAX_SIEVE_LENGTH) -> FactorSieve:
    """Sieve smallest prime factors for every n in [lo, hi] (inclusive).

    The segment length hi - lo + 1 is bounded by max_length so large ranges
    must be processed segment by segment.
    """
    if lo < 1 or lo > hi:
        raise ValueError(f"need 1 <= lo <= hi, got [{lo}, {hi}]")
    if hi >= MAX_SIEVE_BOUND:
        raise ValueError(f"hi={hi} exceeds supported integer range")
    length = hi - lo + 1
    if length > max_length:
        raise ValueError(f"segment of {length} entries exceeds max_length={max_length}")

    spf = np.zeros(length, dtype=np.int64)
    primes = primes_upto(isqrt(hi))
    for p in primes.tolist():
        start = ((lo + p - 1) // p) * p
        if start > hi:
            continue
        view = spf[start - lo :: p]
        view[view == 0] = p
    # untouched entries are 1 or primes > sqrt(hi)
    left = np.nonzero(spf == 0)[0]
    spf[left] = left + lo
    if lo == 1:
        spf[0] = 1
    spf.setflags(write=False)
    return FactorSieve(lo=lo, hi=hi, spf=spf, primes=primes)


def factorize(n: int, sieve: FactorSieve) -> Factorization:
    """Exact factorization of n, which must lie inside the sieve range."""
    if not sieve.lo <= n <= sieve.hi:
        raise ValueError(f"n={n} outside sieve range [{sieve.lo}, {sieve.hi}]")
    if n == 1:
        return Factorization(n=1, factors=())
    factors: list[tuple[int, int]] = []
    if sieve.lo == 1:
        # quotients stay inside the table, walk the spf chain
        m = n
        while m > 1:
            p = int(sieve.spf[m - 1])
            a = 0
            while m % p == 0:
                m //= p
                a += 1
            factors.append((p, a))
    else:
        m = n
        for p in sieve.primes.tolist():
            if p * p > m:
                break
            if m % p == 0:
                a = 0
                while m % p == 0:
                    m //= p
                    a += 1
                factors.append((p, a))
        if m > 1:
            factors.append((m, 1))  # leftover prime > sqrt(hi)
    return Factorization(n=n, factors=tuple(factors))


def sopfr(f: Factorization) -> SopfrValue:
    """sopfr(n) = sum a_i * p_i, exact integer arithmetic."""
    return SopfrValue(n=f.n, value=sum(a * p for p, a in f.factors))


def sopfr_mod(n: int, q: int, sieve: FactorSieve) -> int:
    """sopfr(n) mod q, reducing each prime-power contribution as it is added."""
    if q < 1:
        raise ValueError("q must be >= 1")
    if not sieve.lo <= n <= sieve.hi:
        raise ValueError(f"n={n} outside sieve range [{sieve.lo}, {sieve.hi}]")
    r = 0
    for p, a in factorize(n, sieve).factors:
        r = (r + (a % q) * (p % q)) % q
    return r


def sopfr_segment(lo: int, hi: int, primes: np.ndarray) -> np.ndarray:
    """Exact sopfr(n) for n in [lo, hi) as int64 (vectorized).

    primes must contain every prime <= sqrt(hi - 1).  For each prime power
    p^e < hi one pass adds p to every multiple of p^e, so a multiple of
    exactly p^a accumulates a*p; the cofactor left after dividing out all
    marked primes is either 1 or a single prime > sqrt(hi), added at the end.
    """
    if lo < 1 or lo > hi:
        raise ValueError(f"need 1 <= lo <= hi, got [{lo}, {hi})")
    if hi > MAX_SIEVE_BOUND:
        raise ValueError("range exceeds supported integer width")
    length = hi - lo
    acc = np.zeros(length, dtype=np.int64)
    rem = np.arange(lo, hi, dtype=np.int64)
    for p in primes.tolist():
        if p * p >= hi:
            break
        pe = p
        while pe < hi:
            start = ((lo + pe - 1) // pe) * pe
            if start >= hi:
                break
            sl = slice(start - lo, length, pe)
            acc[sl] += p
            rem[sl] //= p
            pe *= p
    big = rem > 1
    acc[big] += rem[big]
    return acc


def sopfr_mod_segment(lo: int, hi: int, q: int, primes: np.ndarray) -> np.ndarray:
    """sopfr(n) mod q for n in [lo, hi) as int64."""
    if q < 1:
        raise ValueError("q must be >= 1")
    seg = sopfr_segment(lo, hi, primes)
    seg %= q
    return seg


def segment_residue_counts(lo: int, hi: int, q: int, primes: np.ndarray) -> np.ndarray:
    """Counts of n in [lo, hi) per residue class of sopfr(n) mod q."""
    return np.bincount(sopfr_mod_segment(lo, hi, q, primes), minlength=q)


def iter_sopfr_mod(
    x: int, q: int, segment_size: int = DEFAULT_SEGMENT_SIZE
) -> Iterator[tuple[int, int]]:
    """Yield (n, sopfr(n) mod q) for n = 1..x in order, memory bounded by segment."""
    if x < 1:
        raise ValueError("x must be >= 1")
    if q < 1:
        raise ValueError("q must be >= 1")
    primes = primes_upto(isqrt(x))
    lo = 1
    while lo <= x:
        hi = min(lo + segment_size, x + 1)
        seg = sopfr_mod_segment(lo, hi, q, primes)
        for i, r in enumerate(seg.tolist()):
            yield lo + i, r
        lo = hi


def stream_sopfr_mod(
    x: int,
    q: int,
    visitor: Callable[[int, int], None],
    segment_size: int = DEFAULT_SEGMENT_SIZE,
) -> None:
    """Invoke visitor(n, sopfr(n) mod q) exactly once per n in [1, x].

    Exceptions raised by the visitor propagate and abort the stream.
    """
    for n, r in iter_sopfr_mod(x, q, segment_size=segment_size):
        visitor(n, r)
