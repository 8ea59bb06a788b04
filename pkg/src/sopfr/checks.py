"""Self-contained verification suites behind the `verify` CLI command.

Each check returns a CheckResult with the measured residual and the bound it
was held to, so failures print enough context to be diagnosed from the run
log alone.  The suites cover: the phase reconstruction from Gauss sums,
character orthogonality, Gauss-sum moduli, the parity-series identity, the
Euler-product/L-function representation, Parseval and inversion on exact
class counts, the conjugation symmetries, and truncation self-consistency of
the constants.
"""

from dataclasses import dataclass, replace
from math import gcd, sqrt

import numpy as np

from .asymptotic import euler_product_identity, parity_series_identity, predict_main
from .characters import character_group, euler_phi, phase_from_gauss_sums, unit_roots
from .constants import (
    DEFAULT_TRUNCATION,
    TruncationConfig,
    correction_factor,
    leading_coefficient,
    log_correction,
)
from .empirical import exp_sum_from_counts, residue_counts


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    residual: float
    bound: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        msg = f"{status}  {self.name}: residual {self.residual:.3e} vs bound {self.bound:.3e}"
        if self.detail:
            msg += f"  ({self.detail})"
        return msg


def check_phase_identity(qmax: int = 60) -> CheckResult:
    """Max error of the Gauss-sum reconstruction of e^{2 pi i h/q}, q <= qmax."""
    worst = 0.0
    where = ""
    for q in range(3, qmax + 1):
        for h in range(1, q):
            if gcd(h, q) != 1:
                continue
            err = abs(phase_from_gauss_sums(h, q) - np.exp(2j * np.pi * h / q))
            if err > worst:
                worst, where = err, f"h={h}, q={q}"
    return CheckResult(
        name=f"gauss-sum phase reconstruction, q<={qmax}",
        passed=worst < 1e-12,
        residual=worst,
        bound=1e-12,
        detail=f"worst at {where}",
    )


def check_orthogonality(qmax: int = 60) -> CheckResult:
    """Both orthogonality relations for all character groups with q <= qmax."""
    worst = 0.0
    where = ""
    for q in range(3, qmax + 1):
        grp = character_group(q)
        phi = len(grp)
        # rows: characters; columns: all residues mod q
        table = np.array([[chi(n) for n in range(q)] for chi in grp])
        gram = table @ table.conj().T
        err = float(np.max(np.abs(gram - phi * np.eye(phi))))
        units = [n for n in range(q) if gcd(n, q) == 1]
        unit_table = table[:, units]
        gram2 = unit_table.conj().T @ unit_table
        err = max(err, float(np.max(np.abs(gram2 - phi * np.eye(phi)))))
        if err > worst:
            worst, where = err, f"q={q}"
    return CheckResult(
        name=f"character orthogonality (both directions), q<={qmax}",
        passed=worst < 1e-12,
        residual=worst,
        bound=1e-12,
        detail=f"worst at {where}",
    )


def check_gauss_modulus(qmax: int = 60) -> CheckResult:
    """|tau(chi)| = sqrt(q) and tau(chi) tau(conj chi) = chi(-1) q for the
    primitive characters; prime moduli make every non-principal chi primitive."""
    from .characters import gauss_sum
    from .sieve import primes_upto

    worst = 0.0
    where = ""
    for q in primes_upto(qmax).tolist():
        if q <= 2:
            continue
        grp = character_group(q)
        for chi in grp.nonprincipal():
            tau = gauss_sum(chi)
            err = abs(abs(tau) - sqrt(q))
            err = max(err, abs(tau * gauss_sum(chi.conjugate()) - chi.parity * q))
            if err > worst:
                worst, where = err, f"q={q}"
    return CheckResult(
        name=f"gauss-sum modulus and pairing, prime q<={qmax}",
        passed=worst < 1e-10,
        residual=worst,
        bound=1e-10,
        detail=f"worst at {where}",
    )


def check_parity_series(s: float = 2.0, N: int = 10**6) -> CheckResult:
    r = parity_series_identity(s, N)
    return CheckResult(
        name=f"parity Dirichlet series vs closed form, s={s}, N={N}",
        passed=r.residual <= r.bound,
        residual=r.residual,
        bound=r.bound,
    )


def check_representation(
    qs: tuple[int, ...] = (3, 5, 7, 9, 15),
    svals: tuple[float, ...] = (1.5, 2.0, 3.0),
    cfg: TruncationConfig = DEFAULT_TRUNCATION,
) -> CheckResult:
    """Euler product vs L-function representation across moduli and s."""
    worst_ratio = 0.0
    where = ""
    for q in qs:
        for s in svals:
            for h in range(1, q):
                if gcd(h, q) != 1:
                    continue
                r = euler_product_identity(s, h, q, cfg)
                ratio = r.residual / r.bound if r.bound > 0 else float("inf")
                if ratio > worst_ratio:
                    worst_ratio, where = ratio, f"s={s}, h={h}, q={q}"
    return CheckResult(
        name=f"euler product vs L-representation, q in {qs}",
        passed=worst_ratio <= 1.0,
        residual=worst_ratio,
        bound=1.0,
        detail=f"worst residual/bound at {where}",
    )


def check_parseval_inversion(x: int = 10**5, qmax: int = 12) -> CheckResult:
    """Parseval (sum_h |S|^2 = q sum_a N_a^2) and Fourier inversion back to
    the class counts, on exact counts up to x."""
    worst = 0.0
    where = ""
    for q in range(2, qmax + 1):
        counts = residue_counts(x, q)
        sums = [exp_sum_from_counts(counts, h).value for h in range(q)]
        lhs = sum(abs(s) ** 2 for s in sums)
        rhs = q * sum(c * c for c in counts.counts)
        err = abs(lhs - rhs) / rhs
        roots = unit_roots(q)
        for a in range(q):
            inv = sum(sums[h] * roots[(-h * a) % q] for h in range(q)) / q
            err = max(err, abs(inv - counts.counts[a]) / max(counts.counts[a], 1))
        if err > worst:
            worst, where = err, f"q={q}"
    return CheckResult(
        name=f"parseval + inversion on exact counts, x={x}, q<={qmax}",
        passed=worst < 1e-6,
        residual=worst,
        bound=1e-6,
        detail=f"worst at {where}",
    )


def check_conjugation(x: int = 10**5, cfg: TruncationConfig = DEFAULT_TRUNCATION) -> CheckResult:
    """Conjugation symmetries: exact for the exponential sums, within twice the
    tail bound for the constants, exact for the predictions."""
    counts = residue_counts(x, 7)
    for h in (1, 2, 3):
        a = exp_sum_from_counts(counts, h).value
        b = exp_sum_from_counts(counts, 7 - h).value
        if a != b.conjugate():
            return CheckResult(
                name="conjugation symmetry",
                passed=False,
                residual=abs(a - b.conjugate()),
                bound=0.0,
                detail=f"exp_sum h={h} mod 7 not an exact mirror",
            )
    worst = 0.0
    where = ""
    for q in (3, 5, 7):
        for h in range(1, (q + 1) // 2):
            if gcd(h, q) != 1:
                continue
            ca = leading_coefficient(h, q, cfg)
            cb = leading_coefficient(q - h, q, cfg)
            err = abs(ca.value - cb.value.conjugate())
            allowed = 2.0 * max(ca.tail_bound, cb.tail_bound) + 1e-12
            ratio = err / allowed
            if ratio > worst:
                worst, where = ratio, f"h={h}, q={q}"
            pa = predict_main(10**6, h, q, cfg).main_term
            pb = predict_main(10**6, q - h, q, cfg).main_term
            if pa != pb.conjugate():
                return CheckResult(
                    name="conjugation symmetry",
                    passed=False,
                    residual=abs(pa - pb.conjugate()),
                    bound=0.0,
                    detail=f"prediction h={h} mod {q} not an exact mirror",
                )
    return CheckResult(
        name="conjugation symmetries (sums exact, constants within tails)",
        passed=worst <= 1.0,
        residual=worst,
        bound=1.0,
        detail=f"worst constant ratio at {where}",
    )


def check_truncation_consistency(cfg: TruncationConfig = DEFAULT_TRUNCATION) -> CheckResult:
    """Values must move by less than the reported tails as (P, K) grow."""
    worst = 0.0
    where = ""
    small = replace(cfg, prime_bound=10**5)
    mid = replace(cfg, prime_bound=10**6)
    for h, q in ((1, 3), (1, 5), (2, 5)):
        a = log_correction(1.0, h, q, small)
        b = log_correction(1.0, h, q, mid)
        ratio = abs(a.value - b.value) / (a.tail_bound + b.tail_bound)
        if ratio > worst:
            worst, where = ratio, f"log_correction h={h}, q={q}"
        va = correction_factor(h, q, small)
        vb = correction_factor(h, q, mid)
        ratio = abs(va.value - vb.value) / (va.tail_bound + vb.tail_bound)
        if ratio > worst:
            worst, where = ratio, f"correction_factor h={h}, q={q}"
        ca = leading_coefficient(h, q, small)
        cb = leading_coefficient(h, q, replace(cfg, prime_bound=2 * 10**5))
        ratio = abs(ca.value - cb.value) / ca.tail_bound
        if ratio > worst:
            worst, where = ratio, f"leading_coefficient h={h}, q={q}"
    return CheckResult(
        name="truncation self-consistency across prime bounds",
        passed=worst <= 1.0,
        residual=worst,
        bound=1.0,
        detail=f"worst drift/tails at {where}",
    )


def run_verify(which: str, cfg: TruncationConfig = DEFAULT_TRUNCATION, **kwargs) -> list[CheckResult]:
    """Dispatch for the verify CLI command; `which` is one of
    phase | mod2 | identity | all."""
    if which == "phase":
        return [check_phase_identity(kwargs.get("qmax", 60))]
    if which == "mod2":
        return [check_parity_series(kwargs.get("s", 2.0), kwargs.get("N", 10**6))]
    if which == "identity":
        return [check_representation(cfg=cfg)]
    if which == "all":
        return [
            check_phase_identity(kwargs.get("qmax", 60)),
            check_orthogonality(kwargs.get("qmax", 60)),
            check_gauss_modulus(kwargs.get("qmax", 60)),
            check_parity_series(kwargs.get("s", 2.0), kwargs.get("N", 10**6)),
            check_representation(cfg=cfg),
            check_parseval_inversion(),
            check_conjugation(cfg=cfg),
            check_truncation_consistency(cfg),
        ]
    raise ValueError(f"unknown verify suite {which!r}")
