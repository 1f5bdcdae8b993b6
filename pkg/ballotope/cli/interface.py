"""CLI interface (argparse commands).

Command entrypoint is `ballotope.cli.interface:main`.
It is called from main.py for Poetry script `ballotope`.

Exit codes: 0 success, 1 failed check or domain error, 2 usage/parse error.
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import Any

from ballotope.cli.output import FORMATS, envelope, render
from ballotope.core.exceptions import BallotError, ParseError
from ballotope.core.models import GapVector
from ballotope.core.usecases import (
    CommandResult,
    GeometryUsecase,
    PlotUsecase,
    SequencesUsecase,
    VerificationUsecase,
    VerticesUsecase,
)
from ballotope.core.utils import parse_vector
from ballotope.infra.settings import settings
from ballotope.infra.storage import storage
from ballotope.logging_config import setup_logging

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="json")
    common.add_argument("--threads", type=int, default=None, help="worker count")
    common.add_argument(
        "--deterministic", action="store_true", help="report timing_ms as 0"
    )
    return common


def _build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="ballotope", description="Bidirectional ballot sequences and polytopes"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], help=help_text)

    p_count = add("count", "Count bidirectional ballot sequences of length N")
    p_count.add_argument("--n", type=int, required=True)
    p_count.add_argument("--method", choices=["dp", "brute", "both"], default="dp")
    p_count.add_argument("--cap", type=int, default=None)

    p_check = add("check", "Test a bit string")
    p_check.add_argument("--bits", required=True)

    p_sumset = add("sumset", "Sumset / difference set fullness of a bit string")
    p_sumset.add_argument("--bits", required=True)

    p_ratio = add("ratio", "n * B_n / 2^n")
    p_ratio.add_argument("--n", type=int, required=True)
    p_ratio.add_argument("--to", dest="n_max", type=int, default=None)

    p_member = add("member", "Cone / polytope membership of a gap vector")
    p_member.add_argument("--vector", required=True)

    p_cut = add("cut", "Cut a necklace into a ballot-cone rotation")
    p_cut.add_argument("--necklace", required=True)

    p_classify = add("classify", "Rotation regions of a point of the unit cube")
    p_classify.add_argument("--vector", required=True)

    p_volume = add("volume", "Monte-Carlo volume of P_n")
    p_volume.add_argument("--n", type=int, required=True)
    p_volume.add_argument("--samples", type=int, default=1_000_000)
    p_volume.add_argument("--seed", type=int, default=None)

    p_vertices = add("vertices", "Vertices of P_n")
    p_vertices.add_argument("--n", type=int, required=True)
    p_vertices.add_argument("--interior", action="store_true")
    p_vertices.add_argument("--bbs", action="store_true")
    p_vertices.add_argument("--cap", type=int, default=None)

    p_bounds = add("bounds", "Check the counting bounds for odd l")
    p_bounds.add_argument("--max-l", dest="max_l", type=int, required=True)
    p_bounds.add_argument("--min-l", dest="min_l", type=int, default=5)

    p_bfs = add("bfs", "Vertices of P_n as basic feasible solutions")
    p_bfs.add_argument("--n", type=int, required=True)
    p_bfs.add_argument("--cap", type=int, default=None)

    p_uni = add("unimodular", "Flat elimination over every m-row subsystem")
    p_uni.add_argument("--n", type=int, required=True)
    p_uni.add_argument("--cap", type=int, default=None)

    p_verify = add("verify", "Run the verification suites")
    p_verify.add_argument("--level", choices=["quick", "full"], default="quick")
    p_verify.add_argument("--report", default=None, help="also write the envelope here")
    p_verify.add_argument("--fixtures", default=None)
    p_verify.add_argument("--suite", action="append", default=None)

    p_plot = add("plot", "Write an SVG of a height path or slope path")
    src = p_plot.add_mutually_exclusive_group(required=True)
    src.add_argument("--bbs")
    src.add_argument("--vector")
    p_plot.add_argument("--out", required=True)
    p_plot.add_argument("--padded", action="store_true")

    return parser


def _vector(raw: str) -> GapVector:
    return GapVector(parse_vector(raw))


def _dispatch(args: argparse.Namespace, threads: int) -> CommandResult:
    seqs = SequencesUsecase()
    geom = GeometryUsecase()
    verts = VerticesUsecase()

    match args.command:
        case "count":
            return seqs.count(args.n, args.method, cap=args.cap, threads=threads)
        case "check":
            return seqs.check(args.bits)
        case "sumset":
            return seqs.sumset(args.bits)
        case "ratio":
            return seqs.ratio(args.n, args.n_max)
        case "bounds":
            return seqs.bounds(args.min_l, args.max_l)
        case "member":
            return geom.member(_vector(args.vector))
        case "cut":
            return geom.cut(_vector(args.necklace))
        case "classify":
            return geom.classify(_vector(args.vector))
        case "volume":
            return geom.volume(args.n, args.samples, args.seed, threads=threads)
        case "vertices":
            return verts.vertices(
                args.n, interior=args.interior, with_bbs=args.bbs, cap=args.cap
            )
        case "bfs":
            return verts.bfs(args.n, cap=args.cap)
        case "unimodular":
            return verts.unimodular(args.n, cap=args.cap, threads=threads)
        case "verify":
            report = VerificationUsecase(args.fixtures, threads=threads).run(
                args.level, only=args.suite, timed=not args.deterministic
            )
            rows = [
                {
                    "suite": s.name,
                    "passed": s.passed,
                    "duration_ms": s.duration_ms,
                    "invariant": s.detail.get("invariant"),
                    "error": s.detail.get("error"),
                }
                for s in report.suites
            ]
            return CommandResult(report.to_payload(), rows=rows, ok=report.passed)
        case "plot":
            return PlotUsecase().plot(
                args.out,
                bits=args.bbs,
                vector=_vector(args.vector) if args.vector else None,
                padded=args.padded,
            )
        case _:
            raise ParseError(f"unknown command {args.command!r}")


def main(argv: list[str] | None = None) -> int:
    """CLI main; returns the process exit code."""
    setup_logging()

    parser = _build_parser()
    args = parser.parse_args(argv)
    params: dict[str, Any] = {
        k: v
        for k, v in sorted(vars(args).items())
        if k not in {"command", "format", "deterministic"}
    }

    started = time.perf_counter()
    try:
        threads = args.threads if args.threads is not None else settings.get_int("threads")
        params["threads"] = threads
        outcome = _dispatch(args, threads)
    except ParseError as e:
        print(f"ERROR: {e}", file=sys.stderr)
        return EXIT_USAGE
    except BallotError as e:
        print(f"ERROR: {e}", file=sys.stderr)
        return EXIT_FAILED

    timing = 0 if args.deterministic else int((time.perf_counter() - started) * 1000)
    env = envelope(args.command, params, outcome.result, timing)
    if args.command == "verify" and args.report:
        try:
            storage.write_obj(args.report, env)
        except BallotError as e:
            print(f"ERROR: {e}", file=sys.stderr)
            return EXIT_FAILED
    print(render(args.format, env, outcome.rows))
    return EXIT_OK if outcome.ok else EXIT_FAILED
