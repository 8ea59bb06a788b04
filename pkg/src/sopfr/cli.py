"""Command-line front end.

Subcommands:
    expsum     exact exponential sum S(x; h, q) from one counting pass
    counts     exact residue-class counts N_a(x)
    predict    theoretical prediction for S(x; h, q)
    constants  the explicit constant in front of the main term, with tail bound
    report     empirical vs predicted side by side, with per-class table
    verify     run the numerical identity / invariant suites

Output formats: text (paper-style fixed point), json (full precision,
machine-readable, includes the truncation config for reproducibility), csv.
Exit codes: 0 success, 1 verification failure, 2 invalid flags,
3 checkpoint mismatch.
"""

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass

from .asymptotic import predict_main
from .characters import mobius
from .checks import run_verify
from .constants import TruncationConfig, leading_coefficient
from .empirical import CheckpointMismatch, compare, exp_sum_from_counts, residue_counts
from .sieve import DEFAULT_SEGMENT_SIZE

THREADS_ENV = "SOPFR_THREADS"

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_CHECKPOINT = 3


@dataclass(frozen=True)
class RunConfig:
    """Validated flags with the package-wide defaults, echoed in JSON output."""

    prime_bound: int = 10**7
    power_bound: int = 64
    target_abs_error: float = 1e-6
    segment_size: int = DEFAULT_SEGMENT_SIZE
    threads: int = 1
    format: str = "text"

    def truncation(self) -> TruncationConfig:
        return TruncationConfig(
            prime_bound=self.prime_bound,
            power_bound=self.power_bound,
            target_abs_error=self.target_abs_error,
        )

    def as_dict(self) -> dict:
        return {
            "prime_bound": self.prime_bound,
            "power_bound": self.power_bound,
            "target_abs_error": self.target_abs_error,
            "segment_size": self.segment_size,
            "threads": self.threads,
        }


def format_complex(z: complex) -> str:
    """Fixed two-decimal form, sign of the imaginary part absorbed into the
    term, matching the tables this tool reproduces: '-98423.00 + 55650.79 i'."""
    sign = "+" if z.imag >= 0 else "-"
    return f"{z.real:.2f} {sign} {abs(z.imag):.2f} i"


def parse_count(text: str) -> int:
    """Integer flag that also accepts scientific notation like 1e7."""
    try:
        return int(text)
    except ValueError:
        pass
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if value != int(value):
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(value)


def _default_threads() -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def emit_json(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True)


def emit_csv(header: list[str], rows: list[list]) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(str(v) for v in row))
    return "\n".join(lines)


def _base_payload(command: str, inputs: dict, run: RunConfig, t0: float) -> dict:
    return {
        "command": command,
        "inputs": inputs,
        "config": run.as_dict(),
        "runtime_ms": round(1000.0 * (time.perf_counter() - t0), 3),
    }


def cmd_expsum(args, run: RunConfig) -> int:
    t0 = time.perf_counter()
    counts = residue_counts(
        args.x,
        args.q,
        segment_size=run.segment_size,
        threads=run.threads,
        checkpoint_path=args.checkpoint,
    )
    result = exp_sum_from_counts(counts, args.h)
    z = result.value
    if run.format == "json":
        payload = _base_payload("expsum", {"x": args.x, "h": args.h, "q": args.q}, run, t0)
        payload.update({"value_re": z.real, "value_im": z.imag, "tail_bound": 0.0})
        print(emit_json(payload))
    elif run.format == "csv":
        print(
            emit_csv(
                ["x", "h", "q", "value_re", "value_im"],
                [[args.x, args.h, args.q, repr(z.real), repr(z.imag)]],
            )
        )
    else:
        print(format_complex(z))
    return EXIT_OK


def cmd_counts(args, run: RunConfig) -> int:
    t0 = time.perf_counter()
    counts = residue_counts(
        args.x,
        args.q,
        segment_size=run.segment_size,
        threads=run.threads,
        checkpoint_path=args.checkpoint,
    )
    if run.format == "json":
        payload = _base_payload("counts", {"x": args.x, "q": args.q}, run, t0)
        payload.update(
            {
                "counts": list(counts.counts),
                "value_re": float(counts.x),
                "value_im": 0.0,
                "tail_bound": 0.0,
            }
        )
        print(emit_json(payload))
    elif run.format == "csv":
        print(emit_csv(["a", "count"], [[a, c] for a, c in enumerate(counts.counts)]))
    else:
        for a, c in enumerate(counts.counts):
            print(f"N_{a}({args.x}) = {c}")
    return EXIT_OK


def cmd_predict(args, run: RunConfig) -> int:
    t0 = time.perf_counter()
    method = "closed_form" if args.method == "closed" else "slit_quadrature"
    if mobius(args.q) == 0:
        method = "closed_form"
    report = predict_main(args.x, args.h, args.q, run.truncation(), method=method)
    z = report.prediction
    if run.format == "json":
        payload = _base_payload(
            "predict", {"x": args.x, "h": args.h, "q": args.q, "method": report.method}, run, t0
        )
        payload.update(
            {
                "value_re": z.real,
                "value_im": z.imag,
                "main_term_re": report.main_term.real,
                "main_term_im": report.main_term.imag,
                "quadrature_re": None if report.quadrature_term is None else report.quadrature_term.real,
                "quadrature_im": None if report.quadrature_term is None else report.quadrature_term.imag,
                "error_class": report.error_class,
                "tail_bound": None,
            }
        )
        print(emit_json(payload))
    elif run.format == "csv":
        print(
            emit_csv(
                ["x", "h", "q", "method", "value_re", "value_im", "error_class"],
                [[args.x, args.h, args.q, report.method, repr(z.real), repr(z.imag), report.error_class]],
            )
        )
    else:
        print(format_complex(z))
        print(f"error class: {report.error_class}")
    return EXIT_OK


def cmd_constants(args, run: RunConfig) -> int:
    t0 = time.perf_counter()
    c = leading_coefficient(args.h, args.q, run.truncation())
    if run.format == "json":
        payload = _base_payload("constants", {"h": args.h, "q": args.q}, run, t0)
        payload.update(
            {
                "value_re": c.value.real,
                "value_im": c.value.imag,
                "tail_bound": c.tail_bound,
                "no_main_term": c.no_main_term,
            }
        )
        print(emit_json(payload))
    elif run.format == "csv":
        print(
            emit_csv(
                ["h", "q", "value_re", "value_im", "tail_bound", "no_main_term"],
                [[args.h, args.q, repr(c.value.real), repr(c.value.imag), repr(c.tail_bound), c.no_main_term]],
            )
        )
    else:
        if c.no_main_term:
            print(f"mu({args.q}) = 0: the exponential sum has no main term")
        else:
            print(f"C = {c.value.real:.6f} {'+' if c.value.imag >= 0 else '-'} {abs(c.value.imag):.6f} i")
            print(f"tail bound: {c.tail_bound:.3e}")
    return EXIT_OK


def cmd_report(args, run: RunConfig) -> int:
    t0 = time.perf_counter()
    rep = compare(
        args.x,
        args.h,
        args.q,
        run.truncation(),
        segment_size=run.segment_size,
        threads=run.threads,
    )
    if run.format == "json":
        payload = _base_payload("report", {"x": args.x, "h": args.h, "q": args.q}, run, t0)
        payload.update(
            {
                "value_re": rep.empirical.value.real,
                "value_im": rep.empirical.value.imag,
                "predicted_re": rep.predicted.prediction.real,
                "predicted_im": rep.predicted.prediction.imag,
                "abs_gap": rep.abs_gap,
                "rel_gap": rep.rel_gap,
                "log_x": rep.log_x,
                "tail_bound": None,
                "per_class": [[a, n, p] for a, n, p in rep.per_class],
            }
        )
        print(emit_json(payload))
    elif run.format == "csv":
        print(
            emit_csv(
                ["x", "h", "q", "empirical_re", "empirical_im", "predicted_re", "predicted_im", "abs_gap", "rel_gap"],
                [
                    [
                        args.x,
                        args.h,
                        args.q,
                        repr(rep.empirical.value.real),
                        repr(rep.empirical.value.imag),
                        repr(rep.predicted.prediction.real),
                        repr(rep.predicted.prediction.imag),
                        repr(rep.abs_gap),
                        repr(rep.rel_gap),
                    ]
                ],
            )
        )
    else:
        print(f"empirical S({args.x}; {args.h}, {args.q}) = {format_complex(rep.empirical.value)}")
        print(f"predicted                  = {format_complex(rep.predicted.prediction)}")
        print(f"abs gap = {rep.abs_gap:.2f}, rel gap = {rep.rel_gap:.4f}, log x = {rep.log_x:.4f}")
        print("class  count  second-order prediction")
        for a, n, p in rep.per_class:
            print(f"{a:5d}  {n}  {p:.1f}")
    return EXIT_OK


def cmd_verify(args, run: RunConfig) -> int:
    t0 = time.perf_counter()
    kwargs = {}
    if args.qmax is not None:
        kwargs["qmax"] = args.qmax
    if args.s is not None:
        kwargs["s"] = args.s
    if args.N is not None:
        kwargs["N"] = args.N
    results = run_verify(args.suite, run.truncation(), **kwargs)
    ok = all(r.passed for r in results)
    if run.format == "json":
        payload = _base_payload("verify", {"suite": args.suite, **kwargs}, run, t0)
        payload.update(
            {
                "passed": ok,
                "value_re": None,
                "value_im": None,
                "tail_bound": None,
                "checks": [
                    {"name": r.name, "passed": r.passed, "residual": r.residual, "bound": r.bound, "detail": r.detail}
                    for r in results
                ],
            }
        )
        print(emit_json(payload))
    elif run.format == "csv":
        print(
            emit_csv(
                ["name", "passed", "residual", "bound", "detail"],
                [[r.name, r.passed, repr(r.residual), repr(r.bound), r.detail] for r in results],
            )
        )
    else:
        for r in results:
            print(r.line())
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sopfr",
        description="Residue-class distribution of the additive prime-divisor function",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--P", type=parse_count, default=10**7, help="prime truncation bound")
    common.add_argument("--K", type=int, default=64, help="prime-power truncation bound")
    common.add_argument("--target", type=float, default=1e-6, help="tail-bound target")
    common.add_argument("--segment-size", type=parse_count, default=DEFAULT_SEGMENT_SIZE)
    common.add_argument("--threads", type=int, default=None, help=f"default from ${THREADS_ENV} or CPU count")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expsum", parents=[common], help="exact exponential sum")
    p.add_argument("--x", type=parse_count, required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--checkpoint", default=None)
    p.set_defaults(func=cmd_expsum)

    p = sub.add_parser("counts", parents=[common], help="exact residue-class counts")
    p.add_argument("--x", type=parse_count, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--checkpoint", default=None)
    p.set_defaults(func=cmd_counts)

    p = sub.add_parser("predict", parents=[common], help="theoretical prediction")
    p.add_argument("--x", type=parse_count, required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--method", choices=("closed", "quadrature"), default="quadrature")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("constants", parents=[common], help="main-term constant with tail bound")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("report", parents=[common], help="empirical vs predicted")
    p.add_argument("--x", type=parse_count, required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("verify", parents=[common], help="numerical verification suites")
    p.add_argument("suite", choices=("phase", "mod2", "identity", "all"))
    p.add_argument("--qmax", type=int, default=None)
    p.add_argument("--s", type=float, default=None)
    p.add_argument("--N", type=parse_count, default=None)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    threads = args.threads if args.threads is not None else _default_threads()
    try:
        run = RunConfig(
            prime_bound=args.P,
            power_bound=args.K,
            target_abs_error=args.target,
            segment_size=args.segment_size,
            threads=max(1, threads),
            format=args.format,
        )
    except ValueError as exc:
        parser.error(str(exc))  # exits with code 2
    try:
        return args.func(args, run)
    except CheckpointMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECKPOINT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
