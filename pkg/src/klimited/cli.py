"""Command-line front end: bounds, construct, verify, bench."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .bounds import bound_report, log2_exact
from .cover import SearchLimitExceeded, SearchLimits, dump_scheme, load_scheme
from .gf2 import BitMatrix, MatrixFormatError
from .harness import Family, records_to_csv, run_sweep, sweep_filename
from .schemes import brute_force_optimal, branch, scheme1_adapted, scheme1_full, scr, search
from .verify import verify_cover, verify_full_space

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_LIMIT = 3
EXIT_VERIFY = 4

SCHEMES = ("scheme1", "scheme1-adapted", "scr", "bs", "brute")


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {value}")
    return value


def _int_list(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        part = part.strip()
        if ":" in part:
            fields = [int(x) for x in part.split(":")]
            if len(fields) not in (2, 3):
                raise argparse.ArgumentTypeError(f"bad range {part!r}; use start:stop[:step]")
            start, stop = fields[0], fields[1]
            step = fields[2] if len(fields) == 3 else 1
            out.extend(range(start, stop + 1, step))
        elif part:
            out.append(int(part))
    if not out or min(out) < 1:
        raise argparse.ArgumentTypeError(f"need positive integers: {text!r}")
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="klimited", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true", help="log diagnostics to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="closed-form bounds for (n, t, k)")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--t", type=_positive, required=True)
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--q", type=_positive, help="SCR rounds (default log2 k)")
    p.add_argument("--csv", action="store_true", help="emit a CSV row instead of aligned text")

    p = sub.add_parser("construct", help="build a cover scheme")
    p.add_argument("scheme", choices=SCHEMES)
    p.add_argument("input", nargs="?", help="target matrix file ('-' for stdin)")
    p.add_argument("--t", type=_positive, help="dimension, for scheme1 only")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--k", type=_positive)
    group.add_argument("--q", type=_positive, help="SCR rounds; k = 2^q")
    p.add_argument("--trials", type=_positive, default=10, help="circuit-finder trials for SCR")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-subsets", type=_positive, default=SearchLimits.max_subsets_examined)
    p.add_argument("--time-limit", type=float, default=SearchLimits.wall_clock_seconds)
    p.add_argument("-o", "--output", help="write the scheme here instead of stdout")

    p = sub.add_parser("verify", help="verify a scheme file")
    p.add_argument("scheme_file")
    p.add_argument("matrix_file", nargs="?")
    p.add_argument("--full-space", type=_positive, metavar="T", help="verify against all nonzero vectors of F_2^T")
    p.add_argument("--sample", type=_positive, help="check this many random full-space targets")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", action="store_true", help="list failures as CSV")

    p = sub.add_parser("bench", help="run a benchmark sweep and write CSV")
    p.add_argument("--t", type=_positive, required=True)
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--n", type=_int_list, required=True, help="comma list and/or start:stop:step ranges")
    p.add_argument("--trials", type=_positive, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--family", choices=[f.value for f in Family], default=Family.UNIFORM.value)
    p.add_argument("--circuit-size", type=_positive, default=3)
    p.add_argument("--scr-trials", type=_positive, default=10)
    p.add_argument("--max-subsets", type=_positive, default=SearchLimits.max_subsets_examined)
    p.add_argument("--time-limit", type=float, default=SearchLimits.wall_clock_seconds)
    p.add_argument("--no-timing", action="store_true", help="write elapsed_ms as 0 for reproducible output")
    p.add_argument("--jobs", type=_positive, default=1)
    p.add_argument("--out", help="output file or directory (default ./sweep_T<t>_k<k>.csv)")
    return parser


def _read_matrix(path: str) -> BitMatrix:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    try:
        return BitMatrix.parse(text)
    except MatrixFormatError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _cmd_bounds(args) -> int:
    try:
        report = bound_report(args.n, args.t, args.k, args.q)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = report.rows()
    fmt = lambda v: "" if v is None else (f"{v:.6f}" if isinstance(v, float) else str(v))  # noqa: E731
    if args.csv:
        print(",".join(name for name, _ in rows))
        print(",".join(fmt(v) for _, v in rows))
    else:
        width = max(len(name) for name, _ in rows)
        for name, value in rows:
            print(f"{name:<{width}} = {fmt(value) or '-'}")
    return EXIT_OK


def _cmd_construct(args) -> int:
    limits = SearchLimits(args.max_subsets, args.time_limit)
    k = args.k
    if args.scheme == "scheme1":
        if args.t is None or k is None:
            raise UsageError("scheme1 needs --t and --k")
        try:
            scheme = scheme1_full(args.t, k)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    else:
        if args.input is None:
            raise UsageError(f"{args.scheme} needs an input matrix file")
        g = _read_matrix(args.input)
        if args.scheme == "scr":
            if args.q is not None:
                q = args.q
            elif k is not None:
                q = log2_exact(k)
                if q is None or q < 1:
                    raise UsageError(f"SCR works for k = 2^q only (q >= 1); got k={k}")
            else:
                raise UsageError("scr needs --k or --q")
        elif k is None:
            raise UsageError(f"{args.scheme} needs --k")
        try:
            if args.scheme == "scheme1-adapted":
                scheme = scheme1_adapted(g, k)
            elif args.scheme == "scr":
                scheme = scr(g, q, args.trials, args.seed)
            elif args.scheme == "bs":
                _, pool = branch(g, k)
                scheme = search(pool, g, k, limits)
            else:
                scheme = brute_force_optimal(g, k, limits)
        except SearchLimitExceeded as exc:
            print(f"limit exhausted: {exc}", file=sys.stderr)
            return EXIT_LIMIT
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    text = dump_scheme(scheme)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    print(f"{args.scheme}: T_k={scheme.size} k={scheme.k} T={scheme.dim}", file=sys.stderr)
    return EXIT_OK


def _cmd_verify(args) -> int:
    try:
        scheme = load_scheme(Path(args.scheme_file).read_text())
    except MatrixFormatError as exc:
        raise UsageError(f"{args.scheme_file}: {exc}") from None
    if (args.full_space is None) == (args.matrix_file is None):
        raise UsageError("give exactly one of a matrix file or --full-space T")
    try:
        if args.full_space is not None:
            report = verify_full_space(scheme, args.full_space, args.sample, args.seed)
        else:
            report = verify_cover(scheme, _read_matrix(args.matrix_file))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(report.summary())
    if report.failures:
        if args.csv:
            sys.stdout.write(report.failures_csv())
        else:
            for target, reason in report.failures:
                print(f"target {target + 1}: {reason}")
    return EXIT_OK if report.ok else EXIT_VERIFY


def _cmd_bench(args) -> int:
    limits = SearchLimits(args.max_subsets, args.time_limit)
    for n in args.n:
        if not args.t <= n <= 2**args.t - 1:
            raise UsageError(f"n={n} outside [t, 2^t - 1] = [{args.t}, {2**args.t - 1}]")
    if args.k > args.t:
        raise UsageError("k must not exceed t")
    try:
        records = run_sweep(
            args.t,
            args.k,
            args.n,
            args.trials,
            args.seed,
            family=args.family,
            circuit_size=args.circuit_size,
            scr_trials=args.scr_trials,
            limits=limits,
            timing=not args.no_timing,
            jobs=args.jobs,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    text = records_to_csv(records)
    if args.out is None:
        out = Path(sweep_filename(args.t, args.k))
    else:
        out = Path(args.out)
        if out.is_dir():
            out = out / sweep_filename(args.t, args.k)
    out.write_text(text)
    exhausted = sum(r.status != "ok" for r in records)
    print(str(out))
    print(f"{len(records)} records, {exhausted} limit_exhausted", file=sys.stderr)
    return EXIT_OK


COMMANDS = {
    "bounds": _cmd_bounds,
    "construct": _cmd_construct,
    "verify": _cmd_verify,
    "bench": _cmd_bench,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"klimited {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"klimited {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
