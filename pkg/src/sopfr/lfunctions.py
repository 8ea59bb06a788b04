"""Real-axis zeta, Gamma, Dirichlet L-values, and principal-branch powers.

zeta(sigma) is evaluated through the alternating (eta) series with Borwein's
acceleration, zeta = eta / (1 - 2^{1-sigma}), which is uniformly accurate on
(0, 1) and (1, oo).  L(sigma, chi) for non-principal chi uses the Hurwitz
decomposition

    L(sigma, chi) = q^{-sigma} sum_{a=1}^{q} chi(a) zeta(sigma, a/q)

with the Hurwitz values computed by Euler-Maclaurin after subtracting the
1/(sigma-1) pole, which cancels exactly across a (sum chi(a) = 0) and makes
sigma = 1 a regular point of the same code path.
"""

import cmath
import logging
import math
from dataclasses import dataclass
from functools import lru_cache

log = logging.getLogger(__name__)

LOG2 = math.log(2.0)

# B_{2j} / (2j)! for j = 1..8 (the Euler-Maclaurin correction coefficients)
_BERN_OVER_FACT = (
    1.0 / 12,
    -1.0 / 720,
    1.0 / 30240,
    -1.0 / 1209600,
    1.0 / 47900160,
    -691.0 / 1307674368000,
    1.0 / 74724249600,
    -3617.0 / 10670622842880000,
)
_NEXT_COEFF = 43867.0 / 5109094217170944000  # |B_18| / 18!, drives the cutoff


@dataclass(frozen=True)
class EvaluationOptions:
    target_abs_error: float = 1e-12
    max_terms: int = 1_000_000

    def __post_init__(self):
        if self.target_abs_error <= 0:
            raise ValueError("target_abs_error must be positive")


DEFAULT_OPTIONS = EvaluationOptions()


@lru_cache(maxsize=8)
def _borwein_coefficients(n: int) -> tuple[tuple[int, ...], int]:
    """Exact d_k coefficients of Borwein's eta acceleration of order n."""
    term = 1
    cum = 1
    ds = [1]
    for i in range(1, n + 1):
        term = term * (n + i - 1) * 4 * (n - i + 1) // ((2 * i - 1) * (2 * i))
        cum += term
        ds.append(cum)
    return tuple(ds), ds[n]


def zeta(sigma: float, opts: EvaluationOptions = DEFAULT_OPTIONS) -> float:
    """Riemann zeta on the real axis, sigma > 0, sigma != 1."""
    if sigma <= 0:
        raise ValueError("zeta evaluated only for sigma > 0")
    if sigma == 1:
        raise ValueError("sigma = 1 is the pole")
    n = 50  # error ~ (3+sqrt 8)^-n, far below float64 resolution
    ds, dn = _borwein_coefficients(n)
    eta = 0.0
    sign = 1.0
    for k in range(n):
        eta += sign * (ds[k] - dn) / float(k + 1) ** sigma
        sign = -sign
    eta /= -dn
    denom = -math.expm1((1.0 - sigma) * LOG2)  # 1 - 2^{1-sigma}, no cancellation
    return eta / denom


def real_gamma(x: float) -> float:
    """Gamma(x) for x > 0."""
    if x <= 0:
        raise ValueError("real_gamma requires x > 0")
    return math.gamma(x)


def hurwitz_zeta_minus_pole(
    s: float, a: float, opts: EvaluationOptions = DEFAULT_OPTIONS
) -> float:
    """zeta(s, a) - 1/(s-1), regular at s = 1, for s > 0 and 0 < a <= 1.

    Euler-Maclaurin with 8 Bernoulli correction terms; the cutoff M grows
    until the first omitted correction is below the requested error.
    """
    if a <= 0 or a > 1:
        raise ValueError("need 0 < a <= 1")
    if s <= 0:
        raise ValueError("need s > 0")
    target = max(opts.target_abs_error, 1e-15)
    M = 32
    while True:
        poch = 1.0
        for i in range(17):
            poch *= s + i
        est = 4.0 * _NEXT_COEFF * abs(poch) * (a + M) ** (-s - 17.0)
        if est <= target or M > opts.max_terms:
            break
        M *= 2

    total = 0.0
    for k in range(M):
        total += (a + k) ** (-s)
    am = a + M
    logam = math.log(am)
    if s == 1.0:
        total += -logam
    else:
        total += math.expm1((1.0 - s) * logam) / (s - 1.0)
    total += 0.5 * am**-s
    poch = s
    ampow = am ** (-s - 1.0)
    for j, coeff in enumerate(_BERN_OVER_FACT, start=1):
        total += coeff * poch * ampow
        poch *= (s + 2 * j - 1) * (s + 2 * j)
        ampow /= am * am
    return total


def dirichlet_l(sigma: float, chi, opts: EvaluationOptions = DEFAULT_OPTIONS) -> complex:
    """L(sigma, chi) for non-principal chi, 0.5 < sigma <= 4.

    Works at sigma = 1 as well: the subtracted Hurwitz poles cancel exactly
    because the character values over a period sum to zero.
    """
    if chi.is_principal:
        raise ValueError("principal character: use zeta with its Euler-factor correction")
    if not 0.5 < sigma <= 4:
        raise ValueError("sigma outside the supported range (0.5, 4]")
    q = chi.q
    total = 0j
    for a in range(1, q):
        val = chi(a)
        if val == 0:
            continue
        total += val * hurwitz_zeta_minus_pole(sigma, a / q, opts)
    result = q**-sigma * total
    if result.real < 0 and abs(result.imag) < 1e-9:
        # branch ambiguity alert: a power of this value is taken elsewhere and
        # the principal branch would be discontinuous near the negative axis
        log.warning(
            "L(%.6g, chi mod %d) = %s lies near the negative real axis", sigma, q, result
        )
    return result


def l_at_one(chi, opts: EvaluationOptions = DEFAULT_OPTIONS) -> complex:
    """L(1, chi), finite and nonzero for non-principal chi."""
    return dirichlet_l(1.0, chi, opts)


def complex_pow(z: complex, w: complex) -> complex:
    """z**w = exp(w Log z) with the principal branch, Im(Log) in (-pi, pi]."""
    if z == 0:
        raise ValueError("0 cannot be raised to a complex power here")
    return cmath.exp(w * cmath.log(z))
