"""Command line front end.

Subcommands: classify (decide the level and emit a certificate), minor
(search for a named minor), reduce (move sequence down to the two-vertex
mixed pair), witness (re-check a previously emitted certificate), selftest
(run the acceptance checks), and fuzz (random cross-validation of the two
deciders).

Exit codes: 0 decided, 1 bad input or failed certificate, 2 capacity
exceeded, 3 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .core import SignedGraph
from .errors import CapacityError, InputError, InternalInconsistencyError
from . import graphio

JSON_KW = {"sort_keys": True, "separators": (",", ":")}


def _read_graph(path: str, fmt: str) -> SignedGraph:
    if path == "-":
        return graphio.parse_any(sys.stdin.read(), fmt)
    return graphio.load_graph(path, fmt)


def _read_json(path: str):
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"not valid JSON: {exc}")


def _emit(obj, out: str) -> None:
    text = json.dumps(obj, **JSON_KW) + "\n"
    if out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _add_graph_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("graph", help="input graph file, or - for stdin")
    p.add_argument("--format", default="auto",
                   choices=("auto", "text", "records"),
                   help="input format (default: sniff)")
    p.add_argument("--out", default="-",
                   help="write the JSON result here instead of stdout")


def cmd_classify(args) -> int:
    from .pipeline import decide_nu
    g = _read_graph(args.graph, args.format)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(graphio.graph_to_dot(g))
    verdict = decide_nu(g)
    _emit(verdict.to_records(), args.out)
    return 0


def cmd_minor(args) -> int:
    from .pipeline import brute_force_minor
    g = _read_graph(args.graph, args.format)
    w = brute_force_minor(g, args.target)
    if w is None:
        _emit({"found": False, "target": args.target}, args.out)
    else:
        _emit({"found": True, "witness": w.to_records()}, args.out)
    return 0


def cmd_reduce(args) -> int:
    from .deltawye import reduce_to_k2eq, trace_to_records
    g = _read_graph(args.graph, args.format)
    trace = reduce_to_k2eq(g, invariant=args.invariant)
    _emit(trace_to_records(trace), args.out)
    return 0


def cmd_witness(args) -> int:
    g = _read_graph(args.graph, args.format)
    obj = _read_json(args.certificate)
    if args.kind == "verdict":
        from .pipeline import Verdict, validate_verdict
        ok = validate_verdict(g, Verdict.from_records(obj))
    elif args.kind == "trace":
        from .deltawye import check_trace, trace_from_records
        trace = trace_from_records(obj)
        ok = trace.initial == g and check_trace(trace)
    else:
        from .pipeline import MinorWitness, verify_minor_witness
        ok = verify_minor_witness(g, MinorWitness.from_records(obj))
    _emit({"valid": ok}, args.out)
    return 0 if ok else 1


def cmd_selftest(args) -> int:
    from .acceptance import run_all
    ok = run_all(sys.stdout, only=args.only)
    return 0 if ok else 3


def cmd_fuzz(args) -> int:
    from .pipeline import brute_force_minor, decide_nu, validate_verdict
    rng = random.Random(args.seed)
    for trial in range(args.count):
        n = rng.randint(1, 6)
        edges = []
        for _ in range(rng.randint(0, 10)):
            u, v = rng.randint(1, n), rng.randint(1, n)
            if u != v:
                edges.append((min(u, v), max(u, v), rng.random() < 0.5))
        g = SignedGraph.from_pairs(n, edges)
        verdict = decide_nu(g)
        bad = (brute_force_minor(g, "k4o") is not None
               or brute_force_minor(g, "k3eq") is not None)
        if bad != (verdict.answer == "nu_ge_3"):
            _emit({"trial": trial, "graph": graphio.graph_to_raw(g),
                   "verdict": verdict.answer, "oracle_minor": bad}, "-")
            raise InternalInconsistencyError(
                f"deciders disagree on fuzz trial {trial} (seed {args.seed})")
        if not validate_verdict(g, verdict):
            _emit({"trial": trial, "graph": graphio.graph_to_raw(g),
                   "verdict": verdict.answer}, "-")
            raise InternalInconsistencyError(
                f"certificate failed on fuzz trial {trial} (seed {args.seed})")
    print(f"fuzz: {args.count} trials agree (seed {args.seed})")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="signednu",
        description="decide whether a signed graph's level stays at or "
                    "below two, with checkable certificates")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="decide the level of a graph")
    _add_graph_args(p)
    p.add_argument("--dot", help="also write a dot drawing here")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("minor", help="search for a named minor")
    _add_graph_args(p)
    p.add_argument("--target", default="k4o",
                   choices=("k2eq", "k3eq", "k4o"))
    p.set_defaults(fn=cmd_minor)

    p = sub.add_parser("reduce",
                       help="reduce to the two-vertex mixed pair")
    _add_graph_args(p)
    p.add_argument("--invariant", default="faces",
                   choices=("faces", "block"),
                   help="structural invariant kept by every move")
    p.set_defaults(fn=cmd_reduce)

    p = sub.add_parser("witness", help="re-check an emitted certificate")
    _add_graph_args(p)
    p.add_argument("--certificate", required=True,
                   help="certificate JSON file, or - for stdin")
    p.add_argument("--kind", default="verdict",
                   choices=("verdict", "trace", "minor"))
    p.set_defaults(fn=cmd_witness)

    p = sub.add_parser("selftest", help="run the acceptance checks")
    p.add_argument("--only", type=int, default=None,
                   help="run a single numbered check")
    p.set_defaults(fn=cmd_selftest)

    p = sub.add_parser("fuzz",
                       help="cross-validate the two deciders on random "
                            "graphs")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_fuzz)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except CapacityError as exc:
        print(f"capacity: {exc}", file=sys.stderr)
        return 2
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InternalInconsistencyError as exc:
        print(f"internal: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
