"""Explicit constants of the sopfr exponential-sum asymptotics.

Everything here is a truncated prime/prime-power sum with a certified tail
bound.  With e(r) = e^{2 pi i r / q} and s real:

    power_correction(s):   sum_p sum_{k>=2} (e(phk) - e(p^k h)) / (k p^{sk})
    log_correction(s):     -(mu(q)/phi(q)) sum_{p|q} sum_k 1/(k p^{sk})
                           + sum_{p|q} sum_k e(h p^k) / (k p^{sk})
                           + power_correction(s)
    correction_factor:     exp(log_correction(1))
    leading_coefficient:   correction_factor * sin(mu pi/phi)/pi
                           * Gamma(1 - mu/phi)
                           * prod_{chi != chi0} L(1, chi)^{tau(conj chi) chi(h) / phi}

leading_coefficient is the constant multiplying x (log x)^{-1 + mu/phi} in the
main term of sum_{n<=x} e^{2 pi i h sopfr(n) / q}; it vanishes (no main term)
when mu(q) = 0.

Tail bounds use elementary integral overestimates, preferring correctness to
sharpness; a result whose tail cannot meet the configured target raises
TruncationError rather than silently degrading.
"""

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, pi

import numpy as np

from .characters import character_group, euler_phi, factorize_small, gauss_sum, mobius, unit_roots
from .lfunctions import EvaluationOptions, complex_pow, l_at_one, real_gamma
from .sieve import primes_upto


@lru_cache(maxsize=4)
def _log_primes(limit: int) -> np.ndarray:
    logs = np.log(primes_upto(limit).astype(np.float64))
    logs.setflags(write=False)
    return logs

# contributions below this size are dropped from the truncated sums; they are
# orders of magnitude beneath every reported tail bound
_TERM_FLOOR_LOG = 60.0  # skip terms with p^{sk} > e^60 ~ 1e26


class TruncationError(ValueError):
    """The configured (P, K) cannot certify the requested accuracy."""


@dataclass(frozen=True)
class TruncationConfig:
    prime_bound: int = 10**7
    power_bound: int = 64
    target_abs_error: float = 1e-6

    def __post_init__(self):
        if self.prime_bound < 100:
            raise ValueError("prime_bound must be >= 100")
        if self.power_bound < 2:
            raise ValueError("power_bound must be >= 2")
        if self.target_abs_error <= 0:
            raise ValueError("target_abs_error must be positive")


DEFAULT_TRUNCATION = TruncationConfig()


@dataclass(frozen=True)
class ConstantResult:
    value: complex
    tail_bound: float
    prime_bound: int
    power_bound: int
    no_main_term: bool = False


def prime_sum_tail(P: int, s: float, numerator: float) -> float:
    """Upper bound for sum_{p > P} numerator / p^s via the integral estimate
    numerator * P^{1-s} / ((s-1) log P)."""
    if s <= 1:
        raise ValueError("prime tail requires s > 1")
    return numerator * P ** (1.0 - s) / ((s - 1.0) * math.log(P))


def _power_tail(P: int, s: float, K: int, numerator: float) -> float:
    """Bound for the dropped k > K terms, sum over all primes <= P."""
    a = s * (K + 1)
    # sum_{n>=2} n^-a <= 2^-a (1 + 2/(a-1)); the 1/(1-p^-s) factor is <= 2
    per_n = 2.0 ** (-a) * (1.0 + 2.0 / (a - 1.0))
    return numerator * 2.0 / (K + 1) * per_n * 2.0


def _check_target(tail: float, cfg: TruncationConfig, what: str) -> None:
    if tail > cfg.target_abs_error:
        raise TruncationError(
            f"{what}: tail bound {tail:.3e} exceeds target {cfg.target_abs_error:.3e}; "
            f"raise prime_bound/power_bound or the target"
        )


def power_correction(
    s: float, h: int, q: int, cfg: TruncationConfig = DEFAULT_TRUNCATION
) -> ConstantResult:
    """The k >= 2 mismatch sum between the additive phases k*p*h and the
    multiplicative phases p^k*h, truncated at (P, K) with a certified tail.

    Converges absolutely for s > 1/2; the sum runs over all primes, including
    those dividing q.
    """
    if s <= 0.5:
        raise ValueError("power_correction requires s > 1/2")
    if q <= 1:
        raise ValueError("q must be > 1")
    if gcd(h, q) != 1:
        raise ValueError("h must be coprime to q")
    P, K = cfg.prime_bound, cfg.power_bound
    primes = primes_upto(P)
    logp = _log_primes(P)
    pmod = primes % q
    roots = unit_roots(q)

    total = 0j
    pk_mod = (pmod * pmod) % q  # p^k mod q, starting at k = 2
    for k in range(2, K + 1):
        if k > 2:
            pk_mod = (pk_mod * pmod) % q
        lim = int(np.searchsorted(logp, _TERM_FLOOR_LOG / (s * k), side="right"))
        if lim == 0:
            break
        additive = (pmod[:lim] * ((h * k) % q)) % q
        multiplicative = (pk_mod[:lim] * (h % q)) % q
        terms = (roots[additive] - roots[multiplicative]) / (
            k * np.exp((s * k) * logp[:lim])
        )
        total += complex(terms.sum())

    tail = prime_sum_tail(P, 2.0 * s, 2.0) + _power_tail(P, s, K, 2.0)
    _check_target(tail, cfg, "power_correction")
    return ConstantResult(value=total, tail_bound=tail, prime_bound=P, power_bound=K)


def _dividing_prime_sums(
    s: float, h: int, q: int, K: int
) -> tuple[float, complex, float]:
    """The two sums over primes dividing q, truncated at K, plus their tail.

    Returns (sum_{p|q} sum_k 1/(k p^{sk}),
             sum_{p|q} sum_k e(h p^k mod q)/(k p^{sk}),
             geometric tail bound covering both)."""
    roots = unit_roots(q)
    plain = 0.0
    phased = 0j
    tail = 0.0
    for p, _ in factorize_small(q):
        pk_mod = 1
        for k in range(1, K + 1):
            pk_mod = (pk_mod * p) % q
            expo = s * k * math.log(p)
            if expo > _TERM_FLOOR_LOG:
                break
            den = k * math.exp(expo)
            plain += 1.0 / den
            phased += roots[(h * pk_mod) % q] / den
        # k > K tail: geometric, 1/(1 - p^-s) <= 2
        tail += 2.0 / (K + 1) * p ** (-s * (K + 1)) * 2.0
    return plain, phased, tail


def log_correction(
    s: float, h: int, q: int, cfg: TruncationConfig = DEFAULT_TRUNCATION
) -> ConstantResult:
    """Logarithm of the factor relating the sopfr-phase Dirichlet series to
    the product of Dirichlet L-functions and the zeta power:

        -(mu/phi) sum_{p|q} sum_k 1/(k p^{sk})
        + sum_{p|q} sum_k e(h p^k mod q)/(k p^{sk})
        + power_correction(s)
    """
    if s <= 0.5:
        raise ValueError("log_correction requires s > 1/2")
    mu = mobius(q)
    phi = euler_phi(q)
    t = power_correction(s, h, q, cfg)
    plain, phased, div_tail = _dividing_prime_sums(s, h, q, cfg.power_bound)
    value = -(mu / phi) * plain + phased + t.value
    tail = t.tail_bound + div_tail * (abs(mu) / phi + 1.0)
    _check_target(tail, cfg, "log_correction")
    return ConstantResult(
        value=value, tail_bound=tail, prime_bound=cfg.prime_bound, power_bound=cfg.power_bound
    )


def correction_factor(
    h: int, q: int, cfg: TruncationConfig = DEFAULT_TRUNCATION
) -> ConstantResult:
    """exp(log_correction(1)); the Euler-product correction constant.

    Always nonzero.  Replacing h by q - h conjugates every summand, so the
    result for q - h is the exact conjugate.
    """
    if q <= 2:
        raise ValueError("q must be > 2")
    if gcd(h, q) != 1:
        raise ValueError("h must be coprime to q")
    u = log_correction(1.0, h, q, cfg)
    value = cmath.exp(u.value)
    # |e^{z+d} - e^z| <= |e^z| (e^{|d|} - 1)
    tail = abs(value) * math.expm1(u.tail_bound)
    return ConstantResult(
        value=value, tail_bound=tail, prime_bound=u.prime_bound, power_bound=u.power_bound
    )


def leading_coefficient(
    h: int, q: int, cfg: TruncationConfig = DEFAULT_TRUNCATION
) -> ConstantResult:
    """Constant in front of x (log x)^{-1 + mu/phi} in the exponential-sum
    main term.

    When mu(q) = 0 there is no main term: the result carries value 0 and
    no_main_term=True (this is a defined outcome, not a failure).
    """
    if q <= 2:
        raise ValueError("q must be > 2")
    if gcd(h, q) != 1:
        raise ValueError("h must be coprime to q")
    mu = mobius(q)
    phi = euler_phi(q)
    if mu == 0:
        return ConstantResult(
            value=0j,
            tail_bound=0.0,
            prime_bound=cfg.prime_bound,
            power_bound=cfg.power_bound,
            no_main_term=True,
        )
    # canonicalize to h <= q/2: replacing h by q - h conjugates every factor,
    # and computing one representative makes the mirror symmetry exact
    h %= q
    if h > q - h:
        mirrored = leading_coefficient(q - h, q, cfg)
        return ConstantResult(
            value=mirrored.value.conjugate(),
            tail_bound=mirrored.tail_bound,
            prime_bound=mirrored.prime_bound,
            power_bound=mirrored.power_bound,
        )

    v = correction_factor(h, q, cfg)
    sin_factor = math.sin(mu * pi / phi) / pi
    gamma_factor = real_gamma(1.0 - mu / phi)

    lopts = EvaluationOptions(target_abs_error=min(1e-13, cfg.target_abs_error))
    product = 1 + 0j
    rel_err = 0.0
    for chi in character_group(q).nonprincipal():
        lval = l_at_one(chi, lopts)
        weight = gauss_sum(chi.conjugate()) * chi(h) / phi
        product *= complex_pow(lval, weight)
        rel_err += abs(weight) * lopts.target_abs_error / abs(lval)

    value = v.value * sin_factor * gamma_factor * product
    rel_err += math.expm1(v.tail_bound / max(abs(v.value), 1e-300))
    tail = abs(value) * rel_err
    _check_target(tail, cfg, "leading_coefficient")
    return ConstantResult(
        value=value, tail_bound=tail, prime_bound=cfg.prime_bound, power_bound=cfg.power_bound
    )
