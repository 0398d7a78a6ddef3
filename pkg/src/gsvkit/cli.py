"""Batch front-end: file ingestion, subcommand dispatch, machine-readable reports.

Subcommands: ``gsvkit solve|coil|rank|density``, each writing deterministic
result files into ``--out`` and emitting a JSON run report on stdout.

Exit codes: 0 success, 2 input error, 3 solver failure, 4 not-SPD resistance,
5 constant column, 6 invalid probabilities.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import matrix_io
from .density_model import build_density, check_positivity_chain, density_norm, density_trace
from .errors import (
    AllZero,
    ColumnNormMismatch,
    ConstantVector,
    ConvergenceFailure,
    DimensionTooLarge,
    EmptyStack,
    GsvError,
    LengthMismatch,
    MassExceedsOne,
    NegativeProbability,
    NonFiniteInput,
    NotSPD,
    NotStandardized,
    NotSymmetric,
    ParseError,
    ShapeMismatch,
    TooShort,
    WrongShape,
    ZeroVector,
)
from .gsv_solver import OperatorStack, WeightedProblem, brute_force_max, gsv_solve, weighted_gsv_solve
from .stat_norm import StatMatrix, score_rows

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_SOLVER = 3
EXIT_NOT_SPD = 4
EXIT_CONSTANT_COLUMN = 5
EXIT_BAD_PROBABILITIES = 6

_INPUT_ERRORS = (
    ParseError,
    ShapeMismatch,
    WrongShape,
    EmptyStack,
    NonFiniteInput,
    ColumnNormMismatch,
    LengthMismatch,
    TooShort,
    NotStandardized,
    NotSymmetric,
    DimensionTooLarge,
    ZeroVector,
)


@dataclass
class RunReport:
    """Per-invocation run summary; serialized as a versioned JSON object."""

    subcommand: str
    inputs: dict
    outputs: list = field(default_factory=list)
    lambda_max: float = None
    multiplicity: int = None
    residual: float = None
    psi_r_psi: float = None
    seed: int = None
    wall_time_ms: int = 0

    def to_dict(self):
        out = {
            "schema": SCHEMA_VERSION,
            "subcommand": self.subcommand,
            "inputs": self.inputs,
        }
        for key in ("lambda_max", "multiplicity", "residual", "psi_r_psi", "seed"):
            value = getattr(self, key)
            if value is not None:
                out[key] = value
        out["outputs"] = self.outputs
        out["wall_time_ms"] = self.wall_time_ms
        return out


def _digest(path):
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _digests(paths):
    return {str(p): _digest(p) for p in paths}


def _out_dir(out):
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _write_json(path, obj):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")


def cmd_solve(matrix_files, gap_rtol=1e-10, oracle_samples=0, seed=42, out=".") -> RunReport:
    """Solve the stacked maximization for matrices read from headerless CSVs.

    Writes ``solution.json``; with ``oracle_samples > 0`` the sampled
    lower bound and its gap to lambda_max are included.
    """
    start = time.perf_counter()
    mats = []
    ncols = None
    for path in matrix_files:
        a = matrix_io.read_matrix_csv(path)
        if ncols is None:
            ncols = a.shape[1]
        elif a.shape[1] != ncols:
            raise ParseError(path, 1, f"matrix has {a.shape[1]} columns, expected {ncols}")
        mats.append(a)
    stack = OperatorStack(tuple(mats))
    solution = gsv_solve(stack, gap_rtol=gap_rtol)
    payload = {
        "lambda_max": solution.lambda_max,
        "basis": [list(row) for row in solution.basis],
        "multiplicity": solution.multiplicity,
        "residual": solution.residual,
    }
    sampling = int(oracle_samples) > 0
    if sampling:
        lower = brute_force_max(stack, int(oracle_samples), seed)
        payload["oracle_lower_bound"] = lower
        payload["oracle_gap"] = solution.lambda_max - lower
    out_path = _out_dir(out) / "solution.json"
    _write_json(out_path, payload)
    return RunReport(
        subcommand="solve",
        inputs=_digests(matrix_files),
        outputs=[str(out_path)],
        lambda_max=solution.lambda_max,
        multiplicity=solution.multiplicity,
        residual=solution.residual,
        seed=int(seed) if sampling else None,
        wall_time_ms=int((time.perf_counter() - start) * 1000),
    )


def cmd_coil(ex, ey, ez, r, gap_rtol=1e-10, out=".") -> RunReport:
    """Energy-constrained solve for field matrices E_x, E_y, E_z and resistance R.

    Writes ``psi.csv`` (one nodal value per row) and ``psi_normalized.csv``
    (psi scaled by its entry of largest magnitude, the colormap quantity).
    """
    start = time.perf_counter()
    fields = []
    shape = None
    for path in (ex, ey, ez):
        a = matrix_io.read_matrix_csv(path)
        if shape is None:
            shape = a.shape
        elif a.shape != shape:
            raise ParseError(path, 1, f"field matrix is {a.shape}, expected {shape}")
        fields.append(a)
    resistance = matrix_io.read_matrix_csv(r)
    if resistance.shape != (shape[1], shape[1]):
        raise ParseError(
            r, 1, f"resistance is {resistance.shape}, expected {(shape[1], shape[1])}"
        )
    prob = WeightedProblem(tuple(fields), resistance)
    psi, solution = weighted_gsv_solve(prob, gap_rtol=gap_rtol)
    energy = float(psi @ (prob.resistance @ psi))
    out_base = _out_dir(out)
    psi_path = out_base / "psi.csv"
    norm_path = out_base / "psi_normalized.csv"
    matrix_io.write_vector_csv(psi_path, psi)
    psi_max = psi[np.argmax(np.abs(psi))]
    matrix_io.write_vector_csv(norm_path, psi / psi_max)
    return RunReport(
        subcommand="coil",
        inputs=_digests([ex, ey, ez, r]),
        outputs=[str(psi_path), str(norm_path)],
        lambda_max=solution.lambda_max,
        multiplicity=solution.multiplicity,
        residual=solution.residual,
        psi_r_psi=energy,
        wall_time_ms=int((time.perf_counter() - start) * 1000),
    )


def cmd_rank(data, standardize_flag=True, gap_rtol=1e-10, out=".") -> RunReport:
    """Rank table rows by their supporting-vector scores.

    Writes ``ranking.csv`` (rank, id, score; descending score) and
    ``scores_plot.csv`` (id, score in input order, bar-chart ready).
    """
    start = time.perf_counter()
    ids, names, raw = matrix_io.read_table_csv(data)
    if standardize_flag:
        m = StatMatrix.from_raw(raw, columns=names)
    else:
        m = StatMatrix.from_standardized(raw)
    scores, solution = score_rows(m, gap_rtol=gap_rtol)
    order = np.argsort(-scores, kind="stable")
    out_base = _out_dir(out)
    rank_path = out_base / "ranking.csv"
    plot_path = out_base / "scores_plot.csv"
    with open(rank_path, "w", newline="", encoding="utf-8") as fh:
        fh.write("rank,id,score\n")
        for pos, i in enumerate(order, start=1):
            fh.write(f"{pos},{ids[i]},{matrix_io.format_float(scores[i])}\n")
    with open(plot_path, "w", newline="", encoding="utf-8") as fh:
        fh.write("id,score\n")
        for i, row_id in enumerate(ids):
            fh.write(f"{row_id},{matrix_io.format_float(scores[i])}\n")
    return RunReport(
        subcommand="rank",
        inputs=_digests([data]),
        outputs=[str(rank_path), str(plot_path)],
        lambda_max=solution.lambda_max,
        multiplicity=solution.multiplicity,
        residual=solution.residual,
        wall_time_ms=int((time.perf_counter() - start) * 1000),
    )


def cmd_density(rho, trials=10000, seed=42, out=".") -> RunReport:
    """Evaluate a truncated probability density model read from a rho CSV.

    Writes ``density.json`` with the operator norm, supporting state index,
    trace, tail mass, and the sampled positivity-chain verdict.
    """
    start = time.perf_counter()
    probs = matrix_io.read_probability_csv(rho)
    model = build_density(probs)
    norm, support_index = density_norm(model)
    payload = {
        "norm": norm,
        "support_index": support_index,
        "trace": density_trace(model),
        "tail": model.tail,
        "positivity_chain_ok": check_positivity_chain(model, int(trials), seed),
    }
    out_path = _out_dir(out) / "density.json"
    _write_json(out_path, payload)
    return RunReport(
        subcommand="density",
        inputs=_digests([rho]),
        outputs=[str(out_path)],
        seed=int(seed),
        wall_time_ms=int((time.perf_counter() - start) * 1000),
    )


def build_parser():
    parser = argparse.ArgumentParser(
        prog="gsvkit",
        description="Compute generalized supporting vectors and run the application pipelines.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--gap-rtol", type=float, default=1e-10,
                        help="eigenvalue merge tolerance (default 1e-10)")
    common.add_argument("--oracle-samples", type=int, default=0,
                        help="sphere samples for the lower-bound oracle (default 0 = off)")
    common.add_argument("--seed", type=int, default=42,
                        help="seed for any sampling (default 42)")
    common.add_argument("--out", default=".", help="output directory (default .)")

    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_solve = sub.add_parser("solve", parents=[common],
                             help="maximize the stacked objective for CSV matrices")
    p_solve.add_argument("matrices", nargs="+", help="headerless CSV matrix files")

    p_coil = sub.add_parser("coil", parents=[common],
                            help="energy-constrained solve for field matrices")
    p_coil.add_argument("ex", help="E_x field matrix CSV (H x N)")
    p_coil.add_argument("ey", help="E_y field matrix CSV (H x N)")
    p_coil.add_argument("ez", help="E_z field matrix CSV (H x N)")
    p_coil.add_argument("r", help="SPD resistance matrix CSV (N x N)")

    p_rank = sub.add_parser("rank", parents=[common],
                            help="rank table rows by supporting-vector score")
    p_rank.add_argument("data", help="CSV with an 'id' column plus numeric columns")
    p_rank.add_argument("--no-standardize", action="store_true",
                        help="treat the columns as already standardized")

    p_density = sub.add_parser("density", parents=[common],
                               help="evaluate a truncated probability density model")
    p_density.add_argument("rho", help="single-column CSV with header 'rho'")
    p_density.add_argument("--trials", type=int, default=10000,
                           help="unit-vector samples for the positivity chain (default 10000)")

    return parser


def _dispatch(args):
    if args.subcommand == "solve":
        return cmd_solve(args.matrices, gap_rtol=args.gap_rtol,
                         oracle_samples=args.oracle_samples, seed=args.seed, out=args.out)
    if args.subcommand == "coil":
        return cmd_coil(args.ex, args.ey, args.ez, args.r,
                        gap_rtol=args.gap_rtol, out=args.out)
    if args.subcommand == "rank":
        return cmd_rank(args.data, standardize_flag=not args.no_standardize,
                        gap_rtol=args.gap_rtol, out=args.out)
    if args.subcommand == "density":
        return cmd_density(args.rho, trials=args.trials, seed=args.seed, out=args.out)
    raise ValueError(f"unknown subcommand {args.subcommand!r}")


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        report = _dispatch(args)
    except _INPUT_ERRORS as exc:
        print(f"gsvkit {args.subcommand}: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (AllZero, ConvergenceFailure) as exc:
        print(f"gsvkit {args.subcommand}: solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except NotSPD as exc:
        print(f"gsvkit {args.subcommand}: {exc}", file=sys.stderr)
        return EXIT_NOT_SPD
    except ConstantVector as exc:
        print(f"gsvkit {args.subcommand}: {exc}", file=sys.stderr)
        return EXIT_CONSTANT_COLUMN
    except (NegativeProbability, MassExceedsOne) as exc:
        print(f"gsvkit {args.subcommand}: {exc}", file=sys.stderr)
        return EXIT_BAD_PROBABILITIES
    except OSError as exc:
        print(f"gsvkit {args.subcommand}: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(json.dumps(report.to_dict(), indent=2))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
