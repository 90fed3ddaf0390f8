"""Command line: ``measiso check|measure|experiment|apply``.

Exit codes: 0 equivalent / realizable / suite passed, 1 not equivalent /
infeasible / suite failed, 2 unknown (caps hit), 3 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Sequence

import numpy as np

from .cycles import CycleCapExceeded, cycle_isomorphic
from .generators import complete_graph
from .graph import Graph, GraphError, edge_map_from_vertex_map, graph_isomorphic, load_graph
from .measurement import (
    EdgeAxisMap,
    MeasurementPoint,
    NoCommonWitness,
    SolverOptions,
    distinguish_witness,
    is_member,
    project_point,
    sample_measurement_set,
    verify_witness,
)
from .whitney import (
    InvalidOperation,
    apply_ops,
    one_isomorphic,
    split_into_blocks,
    two_isomorphic,
    two_isomorphic_search,
)
from . import experiments

EXIT_YES, EXIT_NO, EXIT_UNKNOWN, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits with 2 by default
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(args, payload: dict) -> None:
    if args.json:
        print(json.dumps(payload, indent=2 if args.pretty else None, sort_keys=False))
    else:
        for key, value in payload.items():
            print(f"{key}: {value}")


def _opts(args) -> SolverOptions:
    return SolverOptions(tol=args.tol, restarts=args.restarts, seed=args.seed)


def _floats(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated numbers, got {text!r}") from None


def _ids(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def _graph_arg(spec: str) -> Graph:
    m = re.fullmatch(r"[kK](\d+)", spec)
    if m:
        return complete_graph(int(m.group(1)))
    return load_graph(spec)


# --- check ------------------------------------------------------------------


def cmd_check(args) -> int:
    g, h = load_graph(args.file_a), load_graph(args.file_b)
    out: dict = {"kind": args.kind, "a": args.file_a, "b": args.file_b}
    if args.kind == "iso":
        rho = graph_isomorphic(g, h)
        out["equivalent"] = rho is not None
        if rho is not None:
            out["rho"] = rho
            out["sigma"] = edge_map_from_vertex_map(g, h, rho)
    elif args.kind == "1iso":
        ok = one_isomorphic(g, h)
        out["equivalent"] = ok
        if ok:
            gs, g_ops = split_into_blocks(g)
            hs, h_ops = split_into_blocks(h)
            out["ops_a"], out["ops_b"] = g_ops, h_ops
            out["rho"] = graph_isomorphic(gs.without_isolated(), hs.without_isolated())
    elif args.kind == "2iso" and args.search:
        res = two_isomorphic_search(g, h, max_depth=args.max_depth, simple_only=args.simple_only)
        out["route"] = "orbit-search"
        out.update(res.to_dict())
        _emit(args, out)
        return {"true": EXIT_YES, "false": EXIT_NO}.get(res.status, EXIT_UNKNOWN)
    else:
        sigma = two_isomorphic(g, h) if args.kind == "2iso" else cycle_isomorphic(g, h)
        out["equivalent"] = sigma is not None
        if args.kind == "2iso":
            out["route"] = "cycle"
        if sigma is not None:
            out["sigma"] = sigma
    _emit(args, out)
    return EXIT_YES if out["equivalent"] else EXIT_NO


# --- measure ----------------------------------------------------------------


def _target(g: Graph, args) -> MeasurementPoint:
    coords = _floats(args.target)
    axes = _ids(args.axes) if args.axes else list(g.edge_ids)
    if len(coords) != len(axes):
        raise UsageError(f"target has {len(coords)} entries for {len(axes)} axes")
    try:
        return MeasurementPoint(tuple(axes), np.array(coords))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_measure(args) -> int:
    if args.sub == "sample":
        g = load_graph(args.graph)
        pts = sample_measurement_set(g, args.d, args.n, seed=args.seed, spread=args.spread)
        _emit(args, {"d": args.d, "n": args.n, "seed": args.seed, "points": [p.to_dict() for p in pts]})
        return EXIT_YES
    if args.sub == "member":
        g = load_graph(args.graph)
        target = _target(g, args)
        verdict = is_member(g, target, args.d, EdgeAxisMap.of(g), opts=_opts(args))
        _emit(args, {"d": args.d, "target": target.to_dict(), **verdict.to_dict()})
        return {"realizable": EXIT_YES, "infeasible": EXIT_NO}.get(verdict.kind, EXIT_UNKNOWN)
    if args.sub == "project":
        if args.point:
            with open(args.point, encoding="utf-8") as fh:
                pt = MeasurementPoint.from_dict(json.load(fh))
        else:
            g = load_graph(args.graph) if args.graph else None
            if g is None:
                raise UsageError("project needs --point FILE or a graph with --target")
            pt = _target(g, args)
        _emit(args, project_point(pt, _ids(args.keep)).to_dict())
        return EXIT_YES
    # witness
    g, h = load_graph(args.graph), load_graph(args.graph_b)
    if g.n_edges != h.n_edges:
        raise UsageError("graphs need the same number of edges")
    sigma = None
    if args.sigma:
        with open(args.sigma, encoding="utf-8") as fh:
            data = json.load(fh)
        sigma = data.get("sigma", data)
    try:
        w = distinguish_witness(g, h, None if sigma is None else [sigma])
    except NoCommonWitness as exc:
        _emit(args, {"witness": None, "reason": str(exc)})
        return EXIT_UNKNOWN
    if w is None:
        _emit(args, {"witness": None, "reason": "graphs are cycle isomorphic"})
        return EXIT_NO
    own, other = verify_witness(g, h, w, args.d, sigma=sigma, opts=_opts(args))
    _emit(args, {"witness": w.to_dict(), "d": args.d, "cycle_side": own.to_dict(), "image_side": other.to_dict()})
    return EXIT_YES


# --- experiment -------------------------------------------------------------


def cmd_experiment(args) -> int:
    suite = args.suite
    reports = []
    if suite == "whitney-crosscheck":
        reports.append(
            experiments.whitney_crosscheck(
                max_edges=args.max_edges,
                n_random=args.n_random,
                random_max_edges=args.random_max_edges,
                seed=args.seed,
                max_depth=args.max_depth,
            )
        )
    elif suite == "main-theorem":
        if args.direction in ("both", "forward"):
            reports.append(
                experiments.main_theorem_forward(
                    n_pairs=args.n_pairs, n_points=args.n_points, tol=args.tol, seed=args.seed, restarts=args.restarts
                )
            )
        if args.direction in ("both", "reverse"):
            reports.append(experiments.main_theorem_reverse(n_pairs=args.n_pairs, tol=args.tol, seed=args.seed))
    elif suite == "nesting":
        reports.append(experiments.nesting(dims=(args.d,), n=args.n, tol=args.tol, seed=args.seed, restarts=args.restarts))
    elif suite == "three-connected":
        graphs = [_graph_arg(s) for s in _ids(args.graphs)] if args.graphs else None
        reports.append(experiments.three_connected(graphs, n_random=args.n_random, seed=args.seed))
    elif suite == "lemma":
        reports.append(experiments.lemma_cycles(seed=args.seed, tol=args.tol))
    elif suite == "forest-octant":
        reports.append(experiments.forest_octant(n=args.n, tol=args.tol, seed=args.seed))
    elif suite == "hygiene":
        reports.append(experiments.gradient_check(n=args.n, seed=args.seed))
        reports.append(experiments.involution_check(n=args.n, seed=args.seed))
    dicts = [r.to_dict() for r in reports]
    if args.summary_only:
        for d in dicts:
            d.pop("cases")
    payload = dicts[0] if len(dicts) == 1 else {"suite": suite, "reports": dicts, "ok": all(r.ok for r in reports)}
    _emit(args, payload)
    return EXIT_YES if all(r.ok for r in reports) else EXIT_NO


def cmd_apply(args) -> int:
    g = load_graph(args.graph)
    with open(args.ops, encoding="utf-8") as fh:
        ops = json.load(fh)
    if isinstance(ops, dict):
        ops = ops.get("ops", [])
    _emit(args, apply_ops(g, ops).to_dict())
    return EXIT_YES


# --- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--d", type=int, default=2, help="embedding dimension")
    common.add_argument("--tol", type=float, default=1e-8, help="max-norm residual tolerance")
    common.add_argument("--restarts", type=int, default=32)
    common.add_argument("--simple-only", action="store_true", help="forbid reversals that create parallel edges")
    common.add_argument("--max-depth", type=int, default=8, help="orbit search depth (0 = unlimited)")
    common.add_argument("--json", dest="json", action="store_true", default=True)
    common.add_argument("--text", dest="json", action="store_false", help="plain key: value output")
    common.add_argument("--pretty", action="store_true", help="indent JSON")

    parser = _Parser(prog="measiso", description="Graph measurement-set isomorphism toolkit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", parents=[common], help="decide an equivalence between two graphs")
    p.add_argument("kind", choices=["iso", "1iso", "2iso", "cycleiso"])
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--search", action="store_true", help="2iso via reversal-orbit search instead of cycles")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("measure", parents=[common], help="measurement-set operations")
    p.add_argument("sub", choices=["sample", "member", "project", "witness"])
    p.add_argument("graph", nargs="?")
    p.add_argument("graph_b", nargs="?")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--spread", type=float, default=1.0)
    p.add_argument("--target", help="comma-separated squared lengths")
    p.add_argument("--axes", help="comma-separated edge ids (default: file order)")
    p.add_argument("--point", help="MeasurementPoint JSON file (project)")
    p.add_argument("--keep", default="", help="comma-separated edge ids to keep (project)")
    p.add_argument("--sigma", help="JSON file with an edge bijection (witness)")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("experiment", parents=[common], help="run a validation suite")
    p.add_argument(
        "suite",
        choices=["whitney-crosscheck", "main-theorem", "nesting", "three-connected", "lemma", "forest-octant", "hygiene"],
    )
    p.add_argument("--max-edges", type=int, default=7)
    p.add_argument("--n-random", type=int, default=None)
    p.add_argument("--random-max-edges", type=int, default=10)
    p.add_argument("--n-pairs", type=int, default=200)
    p.add_argument("--n-points", type=int, default=20)
    p.add_argument("--direction", choices=["both", "forward", "reverse"], default="both")
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--graphs", help="comma-separated graph files or kN names")
    p.add_argument("--summary-only", action="store_true")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("apply", parents=[common], help="replay a JSON operation sequence on a graph")
    p.add_argument("graph")
    p.add_argument("ops")
    p.set_defaults(func=cmd_apply)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "max_depth", None) == 0:
        args.max_depth = None
    if args.command == "experiment" and args.n_random is None:
        args.n_random = 10 if args.suite == "three-connected" else 200
    if args.command == "measure":
        needs = {"sample": 1, "member": 1, "witness": 2}.get(args.sub, 0)
        if needs >= 1 and not args.graph or needs == 2 and not args.graph_b:
            parser.error(f"measure {args.sub} needs {needs} graph file(s)")
        if args.sub == "member" and not args.target:
            parser.error("measure member needs --target")
    try:
        return args.func(args)
    except (GraphError, InvalidOperation, UsageError, OSError, ValueError, KeyError) as exc:
        print(f"measiso: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CycleCapExceeded as exc:
        print(f"measiso: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN


if __name__ == "__main__":
    sys.exit(main())
