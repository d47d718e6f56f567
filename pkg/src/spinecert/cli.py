"""Command-line front end.

Graph files are line oriented::

    n 5            # required first directive
    a 0 1          # one arc per line
    x 1 2 3 4      # optional spine path
    y 0            # optional stable set (defaults to the rest when x is given)

Exit codes: 0 success, 1 violation / counterexample, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .certificates import Certificate, verify_certificate
from .constructions import certify
from .digraph import Digraph, make_digraph
from .errors import BudgetExceeded, ParseError, SpineCertError
from .harness import CHECKS, KINDS, GenParams, fuzz_run, gen_instance
from .oracles import alpha_k_oracle, chi_k_oracle, lambda_k_oracle, lambda_oracle, pi_k_oracle
from .recognition import (
    SpinePartition,
    check_spine_partition,
    find_spine_partition,
    find_split_partition,
)

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


def _ints(tokens: Sequence[str], lineno: int) -> list[int]:
    try:
        return [int(t, 10) for t in tokens]
    except ValueError:
        raise ParseError(f"expected decimal vertex ids, got {' '.join(tokens)!r}", lineno) from None


def parse_graph(text: str) -> tuple[Digraph, SpinePartition | None]:
    n: int | None = None
    arcs: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    x: list[int] | None = None
    y: list[int] | None = None
    spine_line = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        head, args = tokens[0], tokens[1:]
        if n is None:
            if head != "n":
                raise ParseError("first directive must be 'n <N>'", lineno)
            if len(args) != 1:
                raise ParseError("'n' takes exactly one value", lineno)
            (n,) = _ints(args, lineno)
            if n < 0:
                raise ParseError("vertex count must be nonnegative", lineno)
            continue
        if head == "n":
            raise ParseError("'n' given twice", lineno)
        if head == "a":
            if len(args) != 2:
                raise ParseError("'a' takes exactly two vertex ids", lineno)
            u, v = _ints(args, lineno)
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(f"arc ({u}, {v}) has an endpoint outside 0..{n - 1}", lineno)
            if u == v:
                raise ParseError(f"loop arc ({u}, {u})", lineno)
            if (u, v) in seen:
                raise ParseError(f"duplicate arc ({u}, {v})", lineno)
            seen.add((u, v))
            arcs.append((u, v))
        elif head in ("x", "y"):
            if (x if head == "x" else y) is not None:
                raise ParseError(f"'{head}' given twice", lineno)
            values = _ints(args, lineno)
            if head == "x":
                x = values
            else:
                y = values
            spine_line = lineno
        else:
            raise ParseError(f"unknown directive {head!r}", lineno)
    if n is None:
        raise ParseError("missing 'n <N>' directive")
    D = make_digraph(n, arcs)
    if x is None and y is None:
        return D, None
    if x is None:
        x = []
        if set(y) != set(range(n)):
            raise ParseError("'y' without 'x' must list every vertex", spine_line)
    if y is None:
        y = sorted(set(range(n)) - set(x))
    problems = check_spine_partition(D, x, y)
    if problems:
        raise ParseError("invalid spine: " + "; ".join(problems), spine_line)
    return D, SpinePartition.of(x, y)


def render_graph(D: Digraph, spine: SpinePartition | None = None) -> str:
    lines = [f"n {D.n}"] + [f"a {u} {v}" for u, v in D.sorted_arcs()]
    if spine is not None:
        lines.append(" ".join(["x"] + [str(v) for v in spine.x_order]))
        lines.append(" ".join(["y"] + [str(v) for v in sorted(spine.y_set)]))
    return "\n".join(lines) + "\n"


def _read_graph(path: str) -> tuple[Digraph, SpinePartition | None]:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _cmd_certify(args: argparse.Namespace) -> int:
    D, spine = _read_graph(args.input)
    source = "given"
    if spine is None:
        source = "found"
        try:
            spine = find_spine_partition(D)
        except BudgetExceeded:
            spine = find_split_partition(D)
        if spine is None:
            print("error: no spine partition found", file=sys.stderr)
            return EXIT_USAGE
    cert = certify(D, spine, args.k)
    data = cert.to_dict()
    data["spine_source"] = source
    _emit(json.dumps(data) + "\n", args.output)
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    D, _ = _read_graph(args.input)
    try:
        with open(args.cert, encoding="utf-8") as fh:
            cert = Certificate.from_json(fh.read())
    except (KeyError, TypeError, ValueError) as exc:
        print(f"error: malformed certificate: {exc}", file=sys.stderr)
        return EXIT_USAGE
    problems = verify_certificate(D, cert)
    if problems:
        for p in problems:
            print(f"violation: {p}")
        return EXIT_VIOLATION
    print("ok")
    return EXIT_OK


def _cmd_oracle(args: argparse.Namespace) -> int:
    D, _ = _read_graph(args.input)
    if args.quantity != "lambda" and args.k is None:
        print(f"error: -k is required for {args.quantity}", file=sys.stderr)
        return EXIT_USAGE
    funcs = {
        "pi": pi_k_oracle,
        "alpha": alpha_k_oracle,
        "lambda-k": lambda_k_oracle,
        "chi": chi_k_oracle,
    }
    value = lambda_oracle(D) if args.quantity == "lambda" else funcs[args.quantity](D, args.k)
    print(value)
    return EXIT_OK


def _cmd_recognize(args: argparse.Namespace) -> int:
    D, _ = _read_graph(args.input)
    spine = find_split_partition(D) if args.split_only else find_spine_partition(D)
    if spine is None:
        print("none")
    else:
        print(" ".join(["x"] + [str(v) for v in spine.x_order]))
        print(" ".join(["y"] + [str(v) for v in sorted(spine.y_set)]))
    return EXIT_OK


def _params(args: argparse.Namespace) -> GenParams:
    densities = tuple(float(d) for d in args.density.split(","))
    return GenParams(
        kind=args.kind,
        n=args.n,
        max_x=args.max_x,
        max_y=args.max_y,
        density=densities if len(densities) > 1 else densities[0],
        seed=args.seed,
        min_n=args.min_n,
    )


def _cmd_fuzz(args: argparse.Namespace) -> int:
    checks = args.check or ["constructive"]
    k_policy = "all" if args.k is None else args.k
    report = fuzz_run(_params(args), args.count, k_policy, checks, log_path=args.log, jobs=args.jobs)
    cases = ", ".join(f"{c}={report.case_counts[c]}" for c in sorted(report.case_counts))
    print(f"instances={report.instances_run} checks={len(report.records)} violations={len(report.violations)}"
          + (f" cases: {cases}" if cases else ""))
    for v in report.violations:
        print(f"violation seed={v['seed']} k={v['k']}: {v['check']}")
    return EXIT_VIOLATION if report.violations else EXIT_OK


def _cmd_gen(args: argparse.Namespace) -> int:
    inst = gen_instance(_params(args))
    _emit(render_graph(inst.digraph, inst.spine), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spinecert", description="Certify pi_k <= alpha_k on spine digraphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("certify", help="emit a certificate for one k")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("verify", help="re-check a certificate")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-c", "--cert", required=True)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("oracle", help="exact value of one quantity")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-k", type=int)
    p.add_argument("-q", "--quantity", required=True, choices=["pi", "alpha", "lambda", "lambda-k", "chi"])
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("recognize", help="find a spine (or split) partition")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--split-only", action="store_true")
    p.set_defaults(func=_cmd_recognize)

    for name, func in (("fuzz", _cmd_fuzz), ("gen", _cmd_gen)):
        p = sub.add_parser(name)
        p.add_argument("--kind", required=True, choices=KINDS)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--max-x", type=int)
        p.add_argument("--max-y", type=int)
        p.add_argument("--n", type=int)
        p.add_argument("--min-n", type=int)
        p.add_argument("--density", default="0.5", help="probability, or comma-separated list cycled per instance")
        if name == "fuzz":
            p.add_argument("--count", type=int, required=True)
            p.add_argument("--check", action="append", choices=CHECKS)
            p.add_argument("-k", type=int, help="fixed k (default: every k in 1..n)")
            p.add_argument("--log")
            p.add_argument("--jobs", type=int, default=1)
        else:
            p.add_argument("-o", "--output")
        p.set_defaults(func=func)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (SpineCertError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
