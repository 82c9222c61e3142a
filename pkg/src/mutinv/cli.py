"""Command-line front end.

Exit codes: 0 success / valid / SameClass, 1 ProvablyDifferent,
2 invalid input (matrix, index, budget, dimension, coprimality),
3 unreadable or malformed input, 4 Unknown, 5 self-test or internal
consistency failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import ExitStack
from dataclasses import dataclass

from . import config, selftest
from .errors import (
    DimensionTooLarge,
    IndexOutOfRange,
    InternalDisagreement,
    InvariantViolation,
    MutinvError,
    NotPairwiseCoprime,
    ParseError,
    SymmetrizerMismatch,
    ValidationError,
)
from .explorer import VerdictKind, binary_evidence, distinguish, explore
from .invariants import delta, delta_prime
from .io import dumps_json, dumps_text, read_matrix
from .mutation import mutate_sequence, parse_sequence

EXIT_OK, EXIT_DIFFERENT, EXIT_INVALID, EXIT_PARSE, EXIT_UNKNOWN, EXIT_FAIL = 0, 1, 2, 3, 4, 5


@dataclass(frozen=True)
class CliConfig:
    input_format: str = "auto"
    output_format: str = "plain"
    canon_cap: int = config.DEFAULT_CANON_CAP
    oracle_checks: bool = False
    max_depth: int = 6
    max_nodes: int = 100_000
    seed: int = 7

    def __post_init__(self):
        if self.canon_cap <= 0 or self.max_depth < 0 or self.max_nodes <= 0:
            raise ValueError("caps and budgets must be positive")


class _Fail(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _load(path: str, cfg: CliConfig):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise _Fail(EXIT_PARSE, f"cannot read {path}: {exc.strerror}") from exc
    try:
        return read_matrix(text, cfg.input_format)
    except ParseError as exc:
        raise _Fail(EXIT_PARSE, f"{path}: {exc}") from exc
    except (ValidationError, SymmetrizerMismatch) as exc:
        raise _Fail(EXIT_INVALID, f"{path}: {exc}") from exc


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _emit(cfg: CliConfig, plain: str, obj) -> None:
    if cfg.output_format == "json":
        print(json.dumps(obj))
    else:
        print(plain)


def cmd_check(args, cfg: CliConfig) -> int:
    B, d = _load(args.file, cfg)
    lines = ["valid", "symmetrizer: " + " ".join(map(str, B.symmetrizer))]
    if d is not None:
        lines.append("supplied symmetrizer: " + " ".join(map(str, d)))
    _emit(cfg, "\n".join(lines), {"valid": True, "n": B.n, "symmetrizer": list(B.symmetrizer)})
    return EXIT_OK


def cmd_mutate(args, cfg: CliConfig) -> int:
    B, d = _load(args.file, cfg)
    try:
        seq = parse_sequence(args.sequence)
        out = mutate_sequence(B, seq)
    except ParseError as exc:
        raise _Fail(EXIT_PARSE, str(exc)) from exc
    except IndexOutOfRange as exc:
        raise _Fail(EXIT_INVALID, str(exc)) from exc
    if cfg.output_format == "json":
        print(dumps_json(out, d))
    else:
        sys.stdout.write(dumps_text(out))
    return EXIT_OK


def cmd_delta(args, cfg: CliConfig) -> int:
    B, d = _load(args.file, cfg)
    if args.symmetrizer is not None:
        d = tuple(args.symmetrizer)
    try:
        if args.prime:
            value = delta_prime(B, d)
            label = "delta'"
        else:
            value = delta(B)
            label = "delta"
    except (NotPairwiseCoprime, SymmetrizerMismatch) as exc:
        raise _Fail(EXIT_INVALID, str(exc)) from exc
    plain = f"{label} = {value.residue} (mod {value.modulus}), det = {value.raw_det}"
    _emit(cfg, plain, value.to_json())
    return EXIT_OK


def cmd_explore(args, cfg: CliConfig) -> int:
    if args.file is None and args.resume is None:
        raise _Fail(EXIT_INVALID, "explore needs a matrix file or --resume")
    B = _load(args.file, cfg)[0] if args.file is not None else None
    with ExitStack() as stack:
        resume = None
        if args.resume is not None:
            try:
                resume = stack.enter_context(open(args.resume, encoding="utf-8")).read().splitlines()
            except OSError as exc:
                raise _Fail(EXIT_PARSE, f"cannot read {args.resume}: {exc.strerror}") from exc
        dump = stack.enter_context(open(args.out, "w", encoding="utf-8")) if args.out else None
        report = explore(
            B,
            cfg.max_depth,
            cfg.max_nodes,
            cap=cfg.canon_cap,
            jobs=args.jobs,
            dump=dump,
            resume=resume,
        )
    plain = "\n".join([
        f"members: {report.members}",
        f"delta values: {sorted(report.delta_values)}",
        f"delta' values: {sorted(report.delta_prime_values)}",
        f"complete: {str(report.complete).lower()}",
        f"depth reached: {report.depth_reached}",
        f"max entry: {report.max_entry_seen}",
    ])
    _emit(cfg, plain, report.to_json())
    return EXIT_OK


def cmd_distinguish(args, cfg: CliConfig) -> int:
    B1, d1 = _load(args.file1, cfg)
    B2, d2 = _load(args.file2, cfg)
    verdict = distinguish(B1, B2, cfg.max_depth, cfg.max_nodes, d1=d1, d2=d2, cap=cfg.canon_cap)
    _emit(cfg, verdict.describe(), verdict.to_json())
    return {
        VerdictKind.SAME_CLASS: EXIT_OK,
        VerdictKind.PROVABLY_DIFFERENT: EXIT_DIFFERENT,
        VerdictKind.UNKNOWN: EXIT_UNKNOWN,
    }[verdict.kind]


def cmd_evidence(args, cfg: CliConfig) -> int:
    d = args.d if args.d is not None else [1] * args.n
    try:
        values = binary_evidence(args.n, d, args.samples, args.bound, cfg.seed)
    except ValueError as exc:
        raise _Fail(EXIT_INVALID, str(exc)) from exc
    plain = "delta values: {" + ", ".join(map(str, sorted(values))) + "}"
    _emit(cfg, plain, {"n": args.n, "symmetrizer": list(d), "delta_values": sorted(values)})
    return EXIT_OK


def cmd_selftest(args, cfg: CliConfig) -> int:
    failures = selftest.run(args.samples, cfg.seed)
    if failures:
        for f in failures[:10]:
            print(f"FAIL {f.check}: {f.matrix!r}: {f.detail}", file=sys.stderr)
        print(f"{len(failures)} check(s) failed", file=sys.stderr)
        return EXIT_FAIL
    _emit(cfg, f"selftest passed ({args.samples} samples)", {"passed": True, "samples": args.samples})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input-format", choices=["auto", "text", "json"], default=argparse.SUPPRESS)
    common.add_argument("--output", choices=["plain", "json"], default=argparse.SUPPRESS,
                        help="output format")
    common.add_argument("--canon-cap", type=int, default=argparse.SUPPRESS,
                        help="largest n for canonical forms (env MUTINV_CANON_CAP; default 8)")
    common.add_argument("--check", action="store_true", default=argparse.SUPPRESS,
                        help="cross-check mutation and determinants against independent oracles")

    budgets = argparse.ArgumentParser(add_help=False)
    budgets.add_argument("--depth", type=int, default=6)
    budgets.add_argument("--nodes", type=int, default=100_000)

    parser = argparse.ArgumentParser(
        prog="mutinv",
        description="Mutation of skew-symmetrizable matrices and determinant invariants.",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="validate a matrix and print its symmetrizer")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("mutate", parents=[common], help="apply a mutation sequence like 1,3,2")
    p.add_argument("file")
    p.add_argument("sequence")
    p.set_defaults(func=cmd_mutate)

    p = sub.add_parser("delta", parents=[common], help="delta (or delta' with --prime)")
    p.add_argument("file")
    p.add_argument("--prime", action="store_true")
    p.add_argument("--symmetrizer", type=_ints, help="symmetrizer for --prime, e.g. 1,2,3")
    p.set_defaults(func=cmd_delta)

    p = sub.add_parser("explore", parents=[common, budgets], help="bounded mutation-class search")
    p.add_argument("file", nargs="?")
    p.add_argument("--out", help="write a JSON Lines class dump")
    p.add_argument("--resume", help="continue from a class dump")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_explore)

    p = sub.add_parser("distinguish", parents=[common, budgets], help="try to separate or connect two matrices")
    p.add_argument("file1")
    p.add_argument("file2")
    p.set_defaults(func=cmd_distinguish)

    p = sub.add_parser("evidence", parents=[common], help="delta values on random matrices")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=_ints, help="symmetrizer, e.g. 1,2,3 (default all ones)")
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--bound", type=int, default=5)
    p.add_argument("--seed", type=int, default=7)
    p.set_defaults(func=cmd_evidence)

    p = sub.add_parser("selftest", parents=[common], help="randomized oracle-equivalence checks")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=20240611)
    p.set_defaults(func=cmd_selftest)
    return parser


def _config(args) -> CliConfig:
    cap = getattr(args, "canon_cap", None)
    if cap is None:
        cap = config.canon_cap()
    return CliConfig(
        input_format=getattr(args, "input_format", "auto"),
        output_format=getattr(args, "output", "plain"),
        canon_cap=cap,
        oracle_checks=getattr(args, "check", False),
        max_depth=getattr(args, "depth", 6),
        max_nodes=getattr(args, "nodes", 100_000),
        seed=getattr(args, "seed", 7),
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
    except ValueError as exc:
        print(f"mutinv: {exc}", file=sys.stderr)
        return EXIT_INVALID
    try:
        with config.checking(mutation=cfg.oracle_checks, delta=cfg.oracle_checks):
            return args.func(args, cfg)
    except _Fail as exc:
        print(f"mutinv: {exc}", file=sys.stderr)
        return exc.code
    except ParseError as exc:
        print(f"mutinv: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (InternalDisagreement, InvariantViolation) as exc:
        print(f"mutinv: internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (DimensionTooLarge, ValueError, MutinvError) as exc:
        print(f"mutinv: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
