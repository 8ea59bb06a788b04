"""Theoretical predictions for the sopfr exponential sums and class counts.

The exponential sum S(x; h, q) = sum_{n<=x} e^{2 pi i h sopfr(n)/q} with
gcd(h, q) = 1, q > 2 satisfies

    S(x; h, q) = C * x (log x)^{-1 + mu(q)/phi(q)} (1 + O(1/log x))   mu(q) != 0
    S(x; h, q) = O(x e^{-c0 sqrt(log x)})                             mu(q) == 0

with C = leading_coefficient(h, q).  The main term is the endpoint
contribution of a branch-cut integral along the real slit [1 - c/sqrt(log x), 1]:

    I = (sin(mu pi/phi)/pi) * Integral  prod_{chi != chi0} L(sigma, conj chi)^{w_chi}
        * |zeta(sigma)|^{mu/phi} * e^{log_correction(sigma)} * x^sigma / sigma  dsigma

(slit_integral evaluates this in full).  Freezing the slowly varying L and
correction factors at sigma = 1 and integrating |zeta(sigma)|^{mu/phi}
x^sigma / sigma numerically gives the finite-x refinement used by
predict_main's quadrature method; replacing the zeta integral by its
closed-form limit Gamma(1 - mu/phi) x / (log x)^{1 - mu/phi} gives the pure
main term.

Also here: the identity checkers comparing sieve data and Euler products
against the closed forms (parity_series_identity, euler_product_identity).
"""

import cmath
import logging
import math
from dataclasses import dataclass, replace
from math import gcd, isqrt, log, pi
from typing import NamedTuple

import numpy as np
from scipy.special import roots_jacobi

from .characters import character_group, euler_phi, gauss_sum, mobius, unit_roots
from .constants import (
    DEFAULT_TRUNCATION,
    TruncationConfig,
    _log_primes,
    correction_factor,
    leading_coefficient,
    log_correction,
    prime_sum_tail,
)
from .lfunctions import EvaluationOptions, complex_pow, dirichlet_l, real_gamma, zeta
from .sieve import DEFAULT_SEGMENT_SIZE, primes_upto, sopfr_segment

logger = logging.getLogger(__name__)

SIGMA_FLOOR = 0.51  # the correction series converge only right of sigma = 1/2
_QUAD_START_NODES = 48
_QUAD_MAX_NODES = 768


class QuadratureError(RuntimeError):
    """Node refinement failed to reach the requested relative accuracy."""


@dataclass(frozen=True)
class PredictionReport:
    x: int
    h: int
    q: int
    main_term: complex
    quadrature_term: complex | None
    method: str
    error_class: str

    @property
    def prediction(self) -> complex:
        """Best available prediction: quadrature refinement when present."""
        return self.quadrature_term if self.quadrature_term is not None else self.main_term


@dataclass(frozen=True)
class ClassCoefficients:
    """Second-order coefficients c_a of N_a(x) ~ x/q + c_a x/(log x)^{1-mu/phi}."""

    q: int
    values: tuple[float, ...]
    tail_bound: float
    max_imag: float


def default_slit_length(x: int) -> float:
    """Largest slit constant keeping the interval right of SIGMA_FLOOR, capped at 3."""
    return min(3.0, (1.0 - SIGMA_FLOOR) * math.sqrt(log(x)))


def zeta_integral_closed_form(x: int, q: int) -> float:
    """Gamma(1 - mu/phi) * x / (log x)^{1 - mu/phi}, the x -> oo limit of the
    slit integral of |zeta(sigma)|^{mu/phi} x^sigma."""
    mu = mobius(q)
    phi = euler_phi(q)
    if mu == 0:
        raise ValueError("no main term when mu(q) = 0")
    if x <= 1:
        raise ValueError("x must exceed 1")
    expo = 1.0 - mu / phi
    return real_gamma(expo) * x / log(x) ** expo


def _jacobi_sum(smooth, umax: float, alpha: float, rel_target: float) -> float | complex:
    """Integrate u^alpha * smooth(u) over [0, umax] by Gauss-Jacobi nodes,
    doubling the node count until two refinements agree."""
    prev = None
    n = _QUAD_START_NODES
    while n <= _QUAD_MAX_NODES:
        nodes, weights = roots_jacobi(n, 0.0, alpha)
        u = umax * (nodes + 1.0) / 2.0
        vals = np.array([smooth(float(ui)) for ui in u])
        est = (umax / 2.0) ** (1.0 + alpha) * np.sum(weights * vals)
        if prev is not None and abs(est - prev) <= rel_target * abs(est):
            return est
        prev = est
        n *= 2
    raise QuadratureError(
        f"no convergence to relative {rel_target:g} within {_QUAD_MAX_NODES} nodes"
    )


def zeta_integral_quadrature(
    x: int, q: int, c_slit: float | None = None, rel_target: float = 1e-5
) -> float:
    """Numerical value of Integral_{1-c/sqrt(log x)}^{1} |zeta(s)|^{mu/phi} x^s / s ds.

    Substituting u = (1 - sigma) log x turns the endpoint singularity into the
    weight u^{-mu/phi}, handled by Gauss-Jacobi nodes.
    """
    mu = mobius(q)
    phi = euler_phi(q)
    if mu == 0:
        raise ValueError("no main term when mu(q) = 0")
    if x < 16:
        raise ValueError("x must be >= 16")
    L = log(x)
    if c_slit is None:
        c_slit = default_slit_length(x)
    if not 0 < c_slit <= (1.0 - SIGMA_FLOOR) * math.sqrt(L):
        raise ValueError(f"c_slit must keep the slit right of sigma = {SIGMA_FLOOR}")
    umax = c_slit * math.sqrt(L)
    alpha = -mu / phi
    ratio = mu / phi

    def smooth(u: float) -> float:
        sigma = 1.0 - u / L
        scaled = abs(zeta(sigma)) * u / L  # -> 1 as u -> 0
        return scaled**ratio * math.exp(-u) / sigma

    integral = _jacobi_sum(smooth, umax, alpha, rel_target)
    return float((x / L) * L**-alpha * integral)


def predict_main(
    x: int,
    h: int,
    q: int,
    cfg: TruncationConfig = DEFAULT_TRUNCATION,
    method: str = "closed_form",
) -> PredictionReport:
    """Predicted value of S(x; h, q).

    method="closed_form" reports the pure main term
    C * x (log x)^{-1+mu/phi}; method="slit_quadrature" additionally refines
    the zeta integral numerically at finite x, which is how the headline
    finite-x predictions are produced.  When mu(q) = 0 the prediction is 0
    with the decay error class.
    """
    if x < 16:
        raise ValueError("x must be >= 16")
    if q <= 2:
        raise ValueError("q must be > 2")
    if gcd(h, q) != 1:
        raise ValueError("h must be coprime to q")
    if method not in ("closed_form", "slit_quadrature"):
        raise ValueError(f"unknown method {method!r}")
    mu = mobius(q)
    phi = euler_phi(q)
    if mu == 0:
        return PredictionReport(
            x=x,
            h=h,
            q=q,
            main_term=0j,
            quadrature_term=None,
            method=method,
            error_class="O(x exp(-c0 sqrt(log x)))",
        )
    c = leading_coefficient(h, q, cfg)
    main = c.value * x * log(x) ** (-1.0 + mu / phi)
    quadrature = None
    if method == "slit_quadrature":
        j = zeta_integral_quadrature(x, q)
        quadrature = c.value / real_gamma(1.0 - mu / phi) * j
    return PredictionReport(
        x=x,
        h=h,
        q=q,
        main_term=main,
        quadrature_term=quadrature,
        method=method,
        error_class="relative O(1/log x)",
    )


def _character_weights(h: int, q: int) -> list[tuple[object, complex]]:
    """(conj chi, tau(chi) conj(chi(h)) / phi) pairs for chi != chi0."""
    phi = euler_phi(q)
    out = []
    for chi in character_group(q).nonprincipal():
        weight = gauss_sum(chi) * chi(h).conjugate() / phi
        out.append((chi.conjugate(), weight))
    return out


def slit_integrand(
    sigma: float, x: int, h: int, q: int, cfg: TruncationConfig = DEFAULT_TRUNCATION
) -> complex:
    """Value at sigma of the full slit integrand (without the sin/pi prefactor):

        prod L(sigma, conj chi)^{w_chi} * |zeta(sigma)|^{mu/phi}
        * e^{log_correction(sigma)} * x^sigma / sigma
    """
    mu = mobius(q)
    phi = euler_phi(q)
    relaxed = replace(
        cfg, prime_bound=min(cfg.prime_bound, 10**6), target_abs_error=math.inf
    )
    lopts = EvaluationOptions(target_abs_error=1e-12)
    value = complex(abs(zeta(sigma)) ** (mu / phi) * x**sigma / sigma)
    for chi_bar, weight in _character_weights(h, q):
        value *= complex_pow(dirichlet_l(sigma, chi_bar, lopts), weight)
    value *= cmath.exp(log_correction(sigma, h, q, relaxed).value)
    return value


def slit_integral(
    x: int,
    h: int,
    q: int,
    cfg: TruncationConfig = DEFAULT_TRUNCATION,
    c_slit: float | None = None,
    rel_target: float = 1e-5,
) -> complex:
    """Full numerical evaluation of the branch-cut integral

        (sin(mu pi/phi)/pi) Integral_{1-c/sqrt(log x)}^{1}
            prod L(sigma, conj chi)^{w} |zeta(sigma)|^{mu/phi}
            e^{log_correction(sigma)} x^sigma / sigma  dsigma

    with every factor evaluated at sigma (nothing frozen at the endpoint).
    This is the sharpest finite-x representation of S(x; h, q) available here;
    it approaches the main term only as x -> oo.
    """
    mu = mobius(q)
    phi = euler_phi(q)
    if mu == 0:
        raise ValueError("the slit integral exists only for mu(q) != 0")
    if x < 16:
        raise ValueError("x must be >= 16")
    if gcd(h, q) != 1:
        raise ValueError("h must be coprime to q")
    L = log(x)
    if c_slit is None:
        c_slit = default_slit_length(x)
    if not 0 < c_slit <= (1.0 - SIGMA_FLOOR) * math.sqrt(L):
        raise ValueError(f"c_slit must keep the slit right of sigma = {SIGMA_FLOOR}")
    umax = c_slit * math.sqrt(L)
    alpha = -mu / phi
    ratio = mu / phi
    weights = _character_weights(h, q)
    relaxed = replace(
        cfg, prime_bound=min(cfg.prime_bound, 10**6), target_abs_error=math.inf
    )
    lopts = EvaluationOptions(target_abs_error=1e-12)

    def smooth(u: float) -> complex:
        sigma = 1.0 - u / L
        scaled = abs(zeta(sigma)) * u / L
        val = scaled**ratio * math.exp(-u) / sigma + 0j
        for chi_bar, w in weights:
            val *= complex_pow(dirichlet_l(sigma, chi_bar, lopts), w)
        val *= cmath.exp(log_correction(sigma, h, q, relaxed).value)
        return val

    integral = _jacobi_sum(smooth, umax, alpha, rel_target)
    prefactor = math.sin(mu * pi / phi) / pi
    return complex(prefactor * (x / L) * L**-alpha * integral)


def class_coefficients(
    q: int, cfg: TruncationConfig = DEFAULT_TRUNCATION
) -> ClassCoefficients:
    """Coefficients c_a = (1/q) sum_{h coprime to q} C_{h,q} e^{-2 pi i h a / q}.

    These give the second-order term of the residue-class counts,
    N_a(x) = x/q + c_a x/(log x)^{1 - mu/phi} + ..., for squarefree q.  The
    conjugate pairing h <-> q-h makes every c_a real; the residual imaginary
    parts are reported and must stay within the propagated tail bound.
    """
    if q <= 2:
        raise ValueError("q must be > 2")
    if mobius(q) == 0:
        raise ValueError("second-order coefficients need squarefree q")
    roots = unit_roots(q)
    consts: dict[int, complex] = {}
    tail = 0.0
    for h in range(1, q):
        if gcd(h, q) != 1:
            continue
        if q - h in consts:
            consts[h] = consts[q - h].conjugate()
        else:
            c = leading_coefficient(h, q, cfg)
            consts[h] = c.value
            tail += 2.0 * c.tail_bound
    raw = []
    for a in range(q):
        total = 0j
        for h, c in sorted(consts.items()):
            total += c * roots[(-h * a) % q]
        raw.append(total / q)
    max_imag = max(abs(v.imag) for v in raw)
    return ClassCoefficients(
        q=q,
        values=tuple(v.real for v in raw),
        tail_bound=tail / q,
        max_imag=max_imag,
    )


class IdentityCheck(NamedTuple):
    lhs: complex
    rhs: complex
    residual: float
    bound: float


def parity_series_identity(
    s: float, N: int, segment_size: int = DEFAULT_SEGMENT_SIZE
) -> IdentityCheck:
    """Compare sum_{n<=N} (-1)^{sopfr(n)} n^{-s} against its closed form
    (2^s + 1)/(2^s - 1) * zeta(2s)/zeta(s).

    The truncation residual is bounded by the integral tail N^{1-s}/(s-1).
    """
    if s <= 1:
        raise ValueError("s must exceed 1")
    if N < 1000:
        raise ValueError("N must be >= 1000")
    primes = primes_upto(isqrt(N))
    lhs = 0.0
    lo = 1
    while lo <= N:
        hi = min(lo + segment_size, N + 1)
        seg = sopfr_segment(lo, hi, primes)
        signs = 1.0 - 2.0 * (seg & 1)
        n = np.arange(lo, hi, dtype=np.float64)
        lhs += float(np.sum(signs * n**-s))
        lo = hi
    rhs = (2.0**s + 1.0) / (2.0**s - 1.0) * zeta(2.0 * s) / zeta(s)
    residual = abs(lhs - rhs)
    bound = N ** (1.0 - s) / (s - 1.0)
    return IdentityCheck(lhs=lhs, rhs=rhs, residual=residual, bound=bound)


def euler_product_identity(
    s: float, h: int, q: int, cfg: TruncationConfig = DEFAULT_TRUNCATION
) -> IdentityCheck:
    """Compare the truncated Euler product of the sopfr-phase series,

        lhs = prod_{p <= P} (1 - e^{2 pi i h p / q} p^{-s})^{-1},

    against its representation through Dirichlet L-functions,

        rhs = prod_{chi != chi0} L(s, conj chi)^{tau(chi) conj(chi(h))/phi}
              * zeta(s)^{mu/phi} * e^{log_correction(s)}.

    The zeta factor is skipped entirely when mu(q) = 0.  The Euler product is
    used for the left side because its truncation error decays geometrically
    per prime, giving a clean bound; s >= 1.5 keeps both sides fast.
    """
    if s < 1.5:
        raise ValueError("s must be >= 1.5")
    if q <= 2:
        raise ValueError("q must be > 2")
    if gcd(h, q) != 1:
        raise ValueError("h must be coprime to q")
    P = cfg.prime_bound
    primes = primes_upto(P)
    roots = unit_roots(q)
    phases = roots[(primes % q) * (h % q) % q]
    z = phases * np.exp(-s * _log_primes(P))
    log_lhs = complex(-np.sum(np.log(1.0 - z)))
    lhs = cmath.exp(log_lhs)
    # dropped log terms: sum_{p>P} sum_k p^{-sk}/k
    lhs_log_tail = prime_sum_tail(P, s, 2.0) + prime_sum_tail(P, 2.0 * s, 2.0)

    mu = mobius(q)
    phi = euler_phi(q)
    u = log_correction(s, h, q, cfg)
    lopts = EvaluationOptions(target_abs_error=1e-13)
    rhs = cmath.exp(u.value)
    rel_err = math.expm1(u.tail_bound)
    for chi_bar, weight in _character_weights(h, q):
        lval = dirichlet_l(s, chi_bar, lopts)
        rhs *= complex_pow(lval, weight)
        rel_err += abs(weight) * lopts.target_abs_error / abs(lval)
    if mu != 0:
        rhs *= zeta(s) ** (mu / phi)
    rhs = complex(rhs)

    residual = abs(lhs - rhs)
    bound = abs(lhs) * math.expm1(lhs_log_tail) + abs(rhs) * rel_err
    return IdentityCheck(lhs=complex(lhs), rhs=rhs, residual=residual, bound=bound)
