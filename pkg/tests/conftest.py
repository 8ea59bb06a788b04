"""Shared fixtures and independent oracles.

The oracles here are deliberately primitive (trial division, direct
summation) so they share no code path with the implementations they check.
"""

import pytest

from sopfr import build_sieve, residue_counts


def trial_division_factors(n: int) -> list[tuple[int, int]]:
    """Plain trial division; the factorization oracle for everything else."""
    out = []
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            a = 0
            while m % d == 0:
                m //= d
                a += 1
            out.append((d, a))
        d += 1 if d == 2 else 2
    if m > 1:
        out.append((m, 1))
    return out


def sopfr_oracle(n: int) -> int:
    return sum(a * p for p, a in trial_division_factors(n))


@pytest.fixture(scope="session")
def sieve_1e5():
    return build_sieve(1, 10**5)


@pytest.fixture(scope="session")
def counts_1e7_q3():
    return residue_counts(10**7, 3)


@pytest.fixture(scope="session")
def counts_1e7_q9():
    return residue_counts(10**7, 9)
