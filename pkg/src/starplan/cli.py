"""Command-line interface: ``starplan <command>``.

Exit codes: 0 planar / valid / success, 1 nonplanar / invalid, 2 usage or
input error.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import random
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import core
from .certificates import EmbeddedK33, VassilievObstruction
from .core import StarGraph, StarGraphError, is_even
from .criterion import classify_nonplanar, extract_obstruction, star_is_planar
from .documents import (
    DocumentError,
    IdMismatch,
    certificate_problems,
    certificate_to_json,
    dumps,
    graph_to_json,
    parse_graph,
)
from .generators import (
    from_gauss_word,
    random_even_star_graph,
    random_planar_star_graph,
)
from .oracle import CapacityError, find_obstruction_bruteforce
from .webgraph import build_web_graph

OK, NO, ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _load_graph(path: str) -> StarGraph:
    return parse_graph(_read(path))


def _degrees(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _decide(g: StarGraph):
    """Embedding if planar, else a nonplanarity witness (Vassiliev pair for even graphs)."""
    verdict = star_is_planar(g)
    if verdict.planar:
        return verdict.embedding
    if is_even(g):
        return extract_obstruction(g, verdict)
    return classify_nonplanar(g, verdict)


def _summary(g: StarGraph, cert) -> str:
    size = f"{len(g.rotations)} vertices, {len(g.edges)} edges"
    if isinstance(cert, VassilievObstruction):
        return (f"nonplanar ({size}): two cycles meeting transversally once at vertex "
                f"{cert.crossing.vertex} [{cert.case}]")
    if isinstance(cert, EmbeddedK33):
        return f"nonplanar ({size}): embedded K3,3 on {', '.join(map(str, cert.sides[0] + cert.sides[1]))}"
    return f"planar ({size})"


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_check(args) -> int:
    g = _load_graph(args.input)
    cert = _decide(g)
    if args.certificate:
        _write(args.certificate, dumps(certificate_to_json(g, cert)))
    print(_summary(g, cert))
    return NO if isinstance(cert, (VassilievObstruction, EmbeddedK33)) else OK


def cmd_verify(args) -> int:
    g = _load_graph(args.input)
    try:
        doc = json.loads(_read(args.certificate))
    except json.JSONDecodeError as exc:
        raise DocumentError(f"certificate: invalid JSON ({exc})") from None
    problems = certificate_problems(g, doc)
    if problems:
        for p in problems:
            print(f"invalid: {p}")
        return NO
    print("valid")
    return OK


def cmd_obstruct(args) -> int:
    g = _load_graph(args.input)
    verdict = star_is_planar(g)
    if verdict.planar:
        print("graph is planar")
        return NO
    cert = extract_obstruction(g, verdict) if is_even(g) else classify_nonplanar(g, verdict)
    _write(args.output, dumps(certificate_to_json(g, cert)))
    return OK


def cmd_embed(args) -> int:
    g = _load_graph(args.input)
    verdict = star_is_planar(g)
    if not verdict.planar:
        print("graph is not planar")
        return NO
    _write(args.output, dumps(certificate_to_json(g, verdict.embedding)))
    return OK


def _dot_id(x) -> str:
    return json.dumps(str(x) if isinstance(x, str) else ":".join(map(str, x)))


def web_dot(g: StarGraph) -> str:
    """DOT text of the web graph; circle edges are dashed and grey."""
    w = build_web_graph(g)
    lines = ["graph web {"]
    for v in w.graph.vertices:
        shape = "box" if v[0] == "c" else "circle"
        lines.append(f"  {_dot_id(v)} [shape={shape}];")
    for e, (a, b) in w.graph.edges.items():
        kind = e[0]
        style = {"r": ' [style=dashed, color="gray"]', "s": ' [color="black"]'}.get(kind, ' [penwidth=2]')
        lines.append(f"  {_dot_id(a)} -- {_dot_id(b)}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_web(args) -> int:
    g = _load_graph(args.input)
    _write(args.output, web_dot(g))
    return OK


def cmd_gauss(args) -> int:
    g = from_gauss_word(args.word)
    _write(args.output, dumps(graph_to_json(g)))
    return OK


def cmd_gen(args) -> int:
    if args.planar:
        g = random_planar_star_graph(args.budget or args.vertices, args.seed)
    else:
        g = random_even_star_graph(args.vertices, args.degrees, args.seed)
    _write(args.output, dumps(graph_to_json(g)))
    return OK


@dataclass
class TrialRow:
    trial: int
    seed: int
    vertices: int
    edges: int
    web_verdict: str
    oracle: str
    extraction: str
    agree: bool


def run_trial(trial: int, seed: int, max_vertices: int, degrees: list[int], planar_only: bool) -> TrialRow:
    rng = random.Random(seed)
    if planar_only:
        g = random_planar_star_graph(rng.randint(1, 3 * max_vertices), rng.getrandbits(32))
    else:
        g = random_even_star_graph(rng.randint(1, max_vertices), degrees, rng.getrandbits(32))
    verdict = star_is_planar(g)
    web = "planar" if verdict.planar else "nonplanar"
    try:
        found = find_obstruction_bruteforce(g)
        oracle = "none" if found is None else "pair"
    except CapacityError:
        oracle = "capacity"
    extraction = "-"
    if not verdict.planar:
        try:
            cert = extract_obstruction(g, verdict) if is_even(g) else classify_nonplanar(g, verdict)
            doc = json.loads(dumps(certificate_to_json(g, cert)))
            extraction = "verified" if not certificate_problems(g, doc) else "rejected"
        except Exception as exc:  # reported as a failed trial, never swallowed silently
            extraction = f"error:{type(exc).__name__}"
    agree = oracle == "capacity" or (verdict.planar == (oracle == "none"))
    return TrialRow(trial, seed, len(g.rotations), len(g.edges), web, oracle, extraction, agree)


def crossval(trials: int, max_vertices: int, seed: int, degrees: list[int], planar_only: bool = False) -> list[TrialRow]:
    master = random.Random(seed)
    seeds = [master.getrandbits(64) for _ in range(trials)]
    return [run_trial(t, s, max_vertices, degrees, planar_only) for t, s in enumerate(seeds)]


def crossval_summary(rows: list[TrialRow]) -> dict:
    return {
        "trials": len(rows),
        "planar": sum(r.web_verdict == "planar" for r in rows),
        "nonplanar": sum(r.web_verdict == "nonplanar" for r in rows),
        "disagreements": sum(not r.agree for r in rows),
        "extraction_failures": sum(r.extraction not in ("-", "verified") for r in rows),
        "capacity_errors": sum(r.oracle == "capacity" for r in rows),
    }


def cmd_crossval(args) -> int:
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    fault = core.injected_fault() if args.inject_fault else contextlib.nullcontext()
    with fault:
        rows = crossval(args.trials, args.max_vertices, args.seed, args.degrees, args.planar)
    if args.csv:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["trial", "seed", "vertices", "edges", "web_verdict", "oracle", "extraction", "agree"])
        for r in rows:
            writer.writerow([r.trial, r.seed, r.vertices, r.edges, r.web_verdict, r.oracle,
                             r.extraction, int(r.agree)])
        _write(args.csv, buf.getvalue())
    summary = crossval_summary(rows)
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["metric", "value"])
    for k, v in summary.items():
        writer.writerow([k, v])
    sys.stdout.write(out.getvalue())
    bad = summary["disagreements"] + summary["extraction_failures"]
    return OK if bad == 0 else NO


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="starplan", description="Planarity of star-graphs with certificates")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide planarity; exit 0 planar, 1 nonplanar")
    p.add_argument("input", help="star-graph JSON document, or - for stdin")
    p.add_argument("--certificate", metavar="PATH", help="write the certificate here")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify", help="check a certificate against a graph")
    p.add_argument("input")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("obstruct", help="print a nonplanarity witness")
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_obstruct)

    p = sub.add_parser("embed", help="print a planar embedding certificate")
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("web", help="web graph as DOT")
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_web)

    p = sub.add_parser("gauss", help="star-graph of a double-occurrence word")
    p.add_argument("word")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gauss)

    p = sub.add_parser("gen", help="random star-graph")
    p.add_argument("--vertices", type=int, default=4)
    p.add_argument("--degrees", type=_degrees, default=[2, 4, 6], help="comma-separated even degrees")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--planar", action="store_true", help="grow a planar graph instead")
    p.add_argument("--budget", type=int, help="edge budget for --planar (default: --vertices)")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("crossval", help="compare the criterion with the brute-force oracle")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--max-vertices", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--degrees", type=_degrees, default=[2, 4, 6])
    p.add_argument("--planar", action="store_true", help="only planar samples")
    p.add_argument("--csv", metavar="PATH", help="per-trial rows")
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_crossval)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return ERROR if exc.code else OK
    try:
        return args.func(args)
    except IdMismatch as exc:
        print(f"error: id mismatch: {exc}", file=sys.stderr)
        return ERROR
    except (DocumentError, StarGraphError, UsageError, CapacityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
