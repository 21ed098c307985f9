"""Command-line surface: trace reduction, benchmarks, Ising sweep, generators.

Batch-oriented: every command reads flags, writes files or CSV, and exits.
Exit codes: 0 success; 2 malformed input files, unknown methods, or bad
flag values; 3 dimension mismatches, bad subsystem indices, or chain-size
limits; 4 a Hermitian-only path given a non-Hermitian input; 5 unwritable
output locations.  Subsystem indices are 1-based on the command line;
the library itself is 0-based and the boundary converts exactly once.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import tempfile
from typing import Optional, Sequence

import numpy as np

from .bench import BENCH_CSV_HEADER, resolve_bench_method, run_bench
from .bloch import gellmann_basis
from .ising import IsingParams, nlqc_sweep, nlqc_time_compare
from .linalg import is_hermitian
from .multipartite import partial_trace, partial_trace_direct
from .qmat import QmatFormatError, read_qmat, write_qmat

__all__ = ["main", "build_parser", "CliError"]

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DIMENSION = 3
EXIT_HERMITIAN = 4
EXIT_WRITE = 5

HERMITIAN_CLI_TOL = 1e-10


class CliError(Exception):
    """Command failure carrying its process exit code."""

    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


def _parse_positive_ints(text: str, what: str) -> list[int]:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise CliError(EXIT_INPUT, f"{what} list is empty")
    values = []
    for part in parts:
        try:
            value = int(part)
        except ValueError:
            raise CliError(EXIT_INPUT, f"bad {what} entry {part!r}") from None
        if value < 1:
            raise CliError(EXIT_INPUT, f"{what} entries must be >= 1, got {value}")
        values.append(value)
    return values


def _parse_da_range(text: str) -> list[int]:
    """Accept 'a:b' (inclusive) or a comma list like '2,4,8'."""
    if ":" in text:
        lo_txt, _, hi_txt = text.partition(":")
        try:
            lo, hi = int(lo_txt), int(hi_txt)
        except ValueError:
            raise CliError(EXIT_INPUT, f"bad --da-range {text!r}") from None
        if lo < 1 or hi < lo:
            raise CliError(EXIT_INPUT, f"bad --da-range {text!r}")
        return list(range(lo, hi + 1))
    return _parse_positive_ints(text, "--da-range")


def _write_text_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".csv-", dir=directory)
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def cmd_ptrace(args) -> int:
    try:
        op = read_qmat(args.infile)
    except QmatFormatError as exc:
        raise CliError(EXIT_INPUT, f"malformed input file: {exc}") from None
    except OSError as exc:
        raise CliError(EXIT_INPUT, f"cannot read {args.infile}: {exc}") from None
    dims = _parse_positive_ints(args.dims, "--dims")
    traced = _parse_positive_ints(args.trace, "--trace")
    n = len(dims)
    seen = set()
    for index in traced:
        if not 1 <= index <= n:
            raise CliError(
                EXIT_DIMENSION,
                f"trace index {index} out of range for {n} subsystems",
            )
        if index in seen:
            raise CliError(EXIT_DIMENSION, f"trace index {index} repeated")
        seen.add(index)
    if len(seen) == n:
        raise CliError(EXIT_DIMENSION, "cannot trace out every subsystem")
    if op.shape[0] != op.shape[1]:
        raise CliError(
            EXIT_DIMENSION,
            f"input matrix is {op.shape[0]}x{op.shape[1]}, not square",
        )
    if math.prod(dims) != op.shape[0]:
        raise CliError(
            EXIT_DIMENSION,
            f"dims {dims} imply size {math.prod(dims)} but matrix has size {op.shape[0]}",
        )
    if args.hermitian and not is_hermitian(op, HERMITIAN_CLI_TOL):
        raise CliError(EXIT_HERMITIAN, "--hermitian given but the input is not Hermitian")
    mask = [0 if (i + 1) in seen else 1 for i in range(n)]
    if args.method == "direct":
        reduced = partial_trace_direct(op, dims, mask)
    else:
        reduced = partial_trace(op, dims, mask, hermitian=args.hermitian)
    try:
        write_qmat(args.out, reduced)
    except OSError as exc:
        raise CliError(EXIT_WRITE, f"cannot write {args.out}: {exc}") from None
    return EXIT_OK


def cmd_bench(args) -> int:
    try:
        methods = [
            resolve_bench_method(name)
            for name in args.methods.split(",")
            if name.strip()
        ]
    except ValueError as exc:
        raise CliError(EXIT_INPUT, str(exc)) from None
    if not methods:
        raise CliError(EXIT_INPUT, "--methods list is empty")
    da_values = _parse_da_range(args.da_range)
    if args.equal_dims and args.db is not None:
        raise CliError(EXIT_INPUT, "--equal-dims and --db are mutually exclusive")
    if not args.equal_dims and args.db is None:
        raise CliError(EXIT_INPUT, "pass --equal-dims or an explicit --db")
    if args.db is not None and args.db < 1:
        raise CliError(EXIT_INPUT, f"--db must be >= 1, got {args.db}")
    db_values = None if args.equal_dims else [args.db] * len(da_values)
    if args.reps < 1:
        raise CliError(EXIT_INPUT, f"--reps must be >= 1, got {args.reps}")
    records = run_bench(methods, da_values, db_values, reps=args.reps)
    print(BENCH_CSV_HEADER)
    for record in records:
        print(record.csv_row())
    return EXIT_OK


def cmd_ising(args) -> int:
    if args.steps < 3:
        raise CliError(EXIT_INPUT, f"--steps must be >= 3, got {args.steps}")
    if not args.h_max > args.h_min:
        raise CliError(EXIT_INPUT, "--h-max must exceed --h-min")
    try:
        params = IsingParams(n=args.n, h=args.h_min)
    except (TypeError, ValueError) as exc:
        raise CliError(EXIT_DIMENSION, str(exc)) from None
    grid = np.linspace(args.h_min, args.h_max, args.steps)
    rows = nlqc_sweep(params.n, grid)
    lines = ["h,nlqc,dnlqc_dh"]
    lines.extend(f"{h!r},{v!r},{g!r}" for h, v, g in rows)
    try:
        _write_text_atomic(args.out, "\n".join(lines) + "\n")
    except OSError as exc:
        raise CliError(EXIT_WRITE, f"cannot write {args.out}: {exc}") from None
    if args.time_compare:
        timing = nlqc_time_compare([params.n], h=0.5)
        t_lines = ["n,t_direct,t_opt"]
        t_lines.extend(f"{n},{td!r},{to!r}" for n, td, to in timing)
        t_path = os.path.splitext(args.out)[0] + ".timing.csv"
        try:
            _write_text_atomic(t_path, "\n".join(t_lines) + "\n")
        except OSError as exc:
            raise CliError(EXIT_WRITE, f"cannot write {t_path}: {exc}") from None
    return EXIT_OK


def cmd_generators(args) -> int:
    if args.d < 2:
        raise CliError(EXIT_INPUT, f"--d must be >= 2, got {args.d}")
    basis = gellmann_basis(args.d)
    try:
        os.makedirs(args.out_dir, exist_ok=True)
    except OSError as exc:
        raise CliError(EXIT_WRITE, f"cannot create {args.out_dir}: {exc}") from None
    names = [f"g1_{j}.qmat" for j in range(1, args.d)]
    names.extend(f"g2_{k}_{l}.qmat" for k, l in basis.pairs)
    names.extend(f"g3_{k}_{l}.qmat" for k, l in basis.pairs)
    try:
        for name, mat in zip(names, basis.all()):
            write_qmat(os.path.join(args.out_dir, name), mat)
        _write_text_atomic(
            os.path.join(args.out_dir, "manifest.txt"),
            "\n".join(names) + "\n",
        )
    except OSError as exc:
        raise CliError(EXIT_WRITE, f"cannot write into {args.out_dir}: {exc}") from None
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qtrace",
        description="Partial traces, reduced density matrices, and cost benchmarks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_tr = sub.add_parser("ptrace", help="reduce a matrix over chosen subsystems")
    p_tr.add_argument("--in", dest="infile", required=True, help="input QMAT file")
    p_tr.add_argument(
        "--dims", required=True, help="comma list of subsystem dimensions, e.g. 2,3,2"
    )
    p_tr.add_argument(
        "--trace",
        required=True,
        help="comma list of 1-based subsystem indices to trace out",
    )
    p_tr.add_argument("--out", required=True, help="output QMAT file")
    p_tr.add_argument(
        "--method",
        choices=("direct", "fast"),
        default="fast",
        help="definition-based reference path or the optimized one (default)",
    )
    p_tr.add_argument(
        "--hermitian",
        action="store_true",
        help="assert Hermitian input and allow the half-work variant",
    )
    p_tr.set_defaults(func=cmd_ptrace)

    p_be = sub.add_parser("bench", help="time methods on maximally mixed input")
    p_be.add_argument(
        "--methods",
        required=True,
        help="comma list: direct, semi, fast, hermitian, or full method names",
    )
    p_be.add_argument(
        "--da-range",
        required=True,
        help="subsystem-a dimensions: inclusive a:b or comma list",
    )
    p_be.add_argument(
        "--equal-dims", action="store_true", help="use db = da at every point"
    )
    p_be.add_argument(
        "--db", type=int, default=None, help="fixed db when not using --equal-dims"
    )
    p_be.add_argument("--reps", type=int, default=5, help="repetitions (min is kept)")
    p_be.add_argument(
        "--seed",
        type=int,
        default=None,
        help="reserved; inputs are analytic so no randomness is consumed",
    )
    p_be.set_defaults(func=cmd_bench)

    p_is = sub.add_parser("ising", help="edge-coherence sweep of the Ising chain")
    p_is.add_argument("--n", type=int, required=True, help="number of spins (>= 2)")
    p_is.add_argument("--h-min", type=float, required=True, dest="h_min")
    p_is.add_argument("--h-max", type=float, required=True, dest="h_max")
    p_is.add_argument("--steps", type=int, required=True, help="grid points (>= 3)")
    p_is.add_argument("--out", required=True, help="output CSV file")
    p_is.add_argument(
        "--time-compare",
        action="store_true",
        help="also write <out stem>.timing.csv timing direct vs optimized traces at h=0.5",
    )
    p_is.set_defaults(func=cmd_ising)

    p_ge = sub.add_parser("generators", help="dump the generator matrices as QMAT files")
    p_ge.add_argument("--d", type=int, required=True, help="dimension (>= 2)")
    p_ge.add_argument("--out-dir", required=True, dest="out_dir")
    p_ge.set_defaults(func=cmd_generators)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"qtrace: {exc.message}", file=sys.stderr)
        return exc.code
    except ValueError as exc:
        print(f"qtrace: {exc}", file=sys.stderr)
        return EXIT_INPUT
