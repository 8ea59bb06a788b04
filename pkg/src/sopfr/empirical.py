"""Exact residue-class counts of sopfr(n) mod q and the exponential sums.

N_a(x) = #{n <= x : sopfr(n) = a (mod q)} is counted exactly (64-bit
integers) segment by segment; n = 1 lands in class 0 through the empty sum.
The exponential sums

    S(x; h, q) = sum_{n<=x} e^{2 pi i h sopfr(n)/q} = sum_a N_a e^{2 pi i h a/q}

are always assembled from the integer class counts, never accumulated as
floating sums over n: one counting pass serves every h, and the only rounding
happens in the final q-term combination.  The root-of-unity table carries
exact conjugate symmetry, so S(x; q-h, q) == conj(S(x; h, q)) bit for bit.

Long counting runs can append a textual checkpoint line per finished segment
and resume from it.
"""

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import isqrt, log

import numpy as np

from .asymptotic import PredictionReport, class_coefficients, predict_main
from .characters import euler_phi, mobius, unit_roots
from .constants import DEFAULT_TRUNCATION, TruncationConfig
from .sieve import DEFAULT_SEGMENT_SIZE, primes_upto, segment_residue_counts

CHECKPOINT_MAGIC = "sopfr-counts"
CHECKPOINT_VERSION = 1


class CheckpointMismatch(RuntimeError):
    """Existing checkpoint header disagrees with the requested run."""


@dataclass(frozen=True)
class ResidueCounts:
    x: int
    q: int
    counts: tuple[int, ...]

    def __post_init__(self):
        if sum(self.counts) != self.x:
            raise ValueError("class counts must add up to x")


@dataclass(frozen=True)
class ExpSumResult:
    x: int
    h: int
    q: int
    value: complex
    derived_from: ResidueCounts


@dataclass(frozen=True)
class ComparisonReport:
    empirical: ExpSumResult
    predicted: PredictionReport
    abs_gap: float
    rel_gap: float
    log_x: float
    per_class: tuple[tuple[int, int, float], ...]  # (a, N_a, predicted N_a)


def _segment_bounds(x: int, segment_size: int) -> list[tuple[int, int]]:
    bounds = []
    lo = 1
    while lo <= x:
        hi = min(lo + segment_size, x + 1)
        bounds.append((lo, hi))
        lo = hi
    return bounds


def _checkpoint_header(x: int, q: int, segment_size: int) -> str:
    return (
        f"{CHECKPOINT_MAGIC} v{CHECKPOINT_VERSION}\n"
        f"x={x} q={q} segment_size={segment_size}\n"
    )


def _load_checkpoint(path: str, x: int, q: int, segment_size: int) -> list[np.ndarray]:
    """Per-segment counts already completed, in segment order."""
    with open(path, "r", encoding="ascii") as fh:
        lines = fh.read().splitlines()
    expected = _checkpoint_header(x, q, segment_size).splitlines()
    if len(lines) < 2 or lines[0] != expected[0] or lines[1] != expected[1]:
        raise CheckpointMismatch(f"checkpoint {path} does not match this run")
    done = []
    for line in lines[2:]:
        parts = line.split()
        if len(parts) != q:
            break  # torn final line: recompute from here
        done.append(np.array([int(p) for p in parts], dtype=np.int64))
    return done


def residue_counts(
    x: int,
    q: int,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    threads: int = 1,
    checkpoint_path: str | None = None,
) -> ResidueCounts:
    """Exact N_a(x) for a = 0..q-1.

    Segments are independent work units; with threads > 1 they are sieved
    concurrently and merged in segment order, so the counts are identical for
    every thread count.  With a checkpoint path, one line of q integers is
    appended per finished segment and a rerun resumes after the last complete
    line (a mismatched header raises CheckpointMismatch).
    """
    if x < 1:
        raise ValueError("x must be >= 1")
    if q < 2:
        raise ValueError("q must be >= 2")
    if segment_size < 1024:
        raise ValueError("segment_size too small")
    primes = primes_upto(isqrt(x))
    bounds = _segment_bounds(x, segment_size)

    done: list[np.ndarray] = []
    fh = None
    if checkpoint_path is not None:
        if os.path.exists(checkpoint_path) and os.path.getsize(checkpoint_path) > 0:
            done = _load_checkpoint(checkpoint_path, x, q, segment_size)
            done = done[: len(bounds)]
            fh = open(checkpoint_path, "r+", encoding="ascii")
            fh.seek(0)
            header = _checkpoint_header(x, q, segment_size)
            fh.truncate(0)
            fh.write(header)
            for seg in done:
                fh.write(" ".join(str(int(c)) for c in seg) + "\n")
            fh.flush()
        else:
            fh = open(checkpoint_path, "w", encoding="ascii")
            fh.write(_checkpoint_header(x, q, segment_size))
            fh.flush()

    pending = bounds[len(done) :]

    def work(b: tuple[int, int]) -> np.ndarray:
        lo, hi = b
        return segment_residue_counts(lo, hi, q, primes)

    def record(seg: np.ndarray) -> None:
        if fh is not None:
            fh.write(" ".join(str(int(c)) for c in seg) + "\n")
            fh.flush()
        done.append(seg)

    try:
        if threads > 1 and len(pending) > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                # map yields in submission order, so the checkpoint stays a
                # clean prefix even while later segments run concurrently
                for seg in pool.map(work, pending):
                    record(seg)
        else:
            for b in pending:
                record(work(b))
    finally:
        if fh is not None:
            fh.close()

    total = np.zeros(q, dtype=np.int64)
    for seg in done:  # deterministic: summed in segment-index order
        total += seg
    return ResidueCounts(x=x, q=q, counts=tuple(int(c) for c in total))


def exp_sum_from_counts(counts: ResidueCounts, h: int) -> ExpSumResult:
    """Assemble S(x; h, q) from class counts.

    Counts sharing a phase are added as exact integers first; the q surviving
    integer weights then meet the conjugate-symmetric root table, so the
    rounding error stays near machine epsilon and conjugate h pairs are exact
    mirrors.  h = 0 returns exactly x.
    """
    q = counts.q
    h %= q
    weights = [0] * q
    for a, n_a in enumerate(counts.counts):
        weights[(h * a) % q] += n_a
    roots = unit_roots(q)
    value = 0j
    for r in range(q):
        if weights[r]:
            value += weights[r] * roots[r]
    return ExpSumResult(x=counts.x, h=h, q=q, value=value, derived_from=counts)


def exp_sum(
    x: int,
    h: int,
    q: int,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    threads: int = 1,
    checkpoint_path: str | None = None,
) -> ExpSumResult:
    """S(x; h, q) computed through one exact counting pass."""
    counts = residue_counts(
        x, q, segment_size=segment_size, threads=threads, checkpoint_path=checkpoint_path
    )
    return exp_sum_from_counts(counts, h)


def mod9_table(
    x: int,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    threads: int = 1,
    checkpoint_path: str | None = None,
) -> list[ExpSumResult]:
    """S(x; h, 9) for the six units h = 1, 2, 4, 5, 7, 8 from one counting pass.

    All six sums decay faster than any power of log x, so the values exhibit
    near-total cancellation; the (h, 9-h) pairs are exact conjugates.
    """
    counts = residue_counts(
        x, 9, segment_size=segment_size, threads=threads, checkpoint_path=checkpoint_path
    )
    return [exp_sum_from_counts(counts, h) for h in (1, 2, 4, 5, 7, 8)]


def compare(
    x: int,
    h: int,
    q: int,
    cfg: TruncationConfig = DEFAULT_TRUNCATION,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    threads: int = 1,
) -> ComparisonReport:
    """Empirical S(x; h, q) next to its prediction, with per-class counts.

    log x is included so the reader can judge the O(1/log x) relative scale of
    the correction terms when weighing the gap.
    """
    counts = residue_counts(x, q, segment_size=segment_size, threads=threads)
    emp = exp_sum_from_counts(counts, h)
    if h % q == 0:
        predicted = PredictionReport(
            x=x, h=0, q=q, main_term=complex(x), quadrature_term=None,
            method="closed_form", error_class="exact",
        )
    else:
        method = "slit_quadrature" if mobius(q) != 0 else "closed_form"
        predicted = predict_main(x, h, q, cfg, method=method)
    gap = abs(emp.value - predicted.prediction)
    rel = gap / abs(emp.value) if emp.value != 0 else 0.0

    per_class = []
    second_order = None
    if mobius(q) != 0:
        coeffs = class_coefficients(q, cfg)
        expo = 1.0 - mobius(q) / euler_phi(q)
        second_order = [
            x / q + c * x / log(x) ** expo for c in coeffs.values
        ]
    for a, n_a in enumerate(counts.counts):
        pred_a = second_order[a] if second_order is not None else x / q
        per_class.append((a, n_a, pred_a))

    return ComparisonReport(
        empirical=emp,
        predicted=predicted,
        abs_gap=gap,
        rel_gap=rel,
        log_x=log(x),
        per_class=tuple(per_class),
    )
