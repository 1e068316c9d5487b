"""Command line interface: deterministic JSON reports on .sgr graphs."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .graph_core import GraphFormatError, SeparatedGraph, parse
from .admissibility import parse_path, path_literal
from .condition_n import (
    FailureWitness,
    LocalOrientation,
    check_condition_n,
)
from .decomposition import decompose, stratify_branch_free
from .orientation import (
    classify_edges,
    parse_orientation,
    synthesize_orientation,
    verify_orientation,
)
from .dynamics import (
    act,
    folner_mean_check,
    folner_ratio,
    folner_set,
    pattern_containing,
    pattern_dump,
    stabilizer_witness,
)
from .monoid import CHECKS, presentation, render_element

VERSION = "0.1.0"


def _digest(g: SeparatedGraph) -> dict:
    return {
        "vertices": len(g.vertices),
        "edges": len(g.edges),
        "groups": len(g.all_groups()),
    }


def _load(path: str) -> SeparatedGraph:
    return parse(Path(path).read_text())


def _witness_json(g: SeparatedGraph, fw: FailureWitness) -> dict:
    return {
        "kind": "witness",
        "vertex": fw.vertex,
        "alpha": path_literal(fw.alpha),
        "beta": path_literal(fw.beta),
        "gamma": path_literal(fw.gamma),
        "delta": path_literal(fw.delta),
        "epsilon": path_literal(fw.epsilon),
    }


def _resolution_json(
    g: SeparatedGraph, res: LocalOrientation | FailureWitness
) -> dict:
    if isinstance(res, LocalOrientation):
        if res.kind == "type1":
            return {"kind": "type1", "group": res.group.label}
        return {"kind": "type2", "edge": res.edge}
    return _witness_json(g, res)


def _cmd_validate(g: SeparatedGraph, args) -> tuple[dict, int]:
    return {"verdict": True}, 0


def _cmd_analyze(g: SeparatedGraph, args) -> tuple[dict, int]:
    report = check_condition_n(g)
    table = {}
    for v in g.sorted_vertices():
        entry: dict = {
            "return_count": report.return_counts[v],
            "branching": v in report.branching,
        }
        if v in report.branching:
            entry["resolution"] = _resolution_json(
                g, report.branching[v][1]
            )
        table[v] = entry
    return {"verdict": report.verdict, "branching": table}, 0


def _cmd_check_n(g: SeparatedGraph, args) -> tuple[dict, int]:
    report = check_condition_n(g)
    payload: dict = {"verdict": report.verdict}
    if not report.verdict and args.witness:
        for v in sorted(report.branching):
            _, res = report.branching[v]
            if isinstance(res, FailureWitness):
                payload["witness"] = _witness_json(g, res)
                break
    return payload, 0 if report.verdict else 1


def _cmd_decompose(g: SeparatedGraph, args) -> tuple[dict, int]:
    dec = decompose(g)
    types = classify_edges(dec.branching_subgraph) if (
        dec.e_br0.members
    ) else {}
    strata = stratify_branch_free(dec.branch_free_subgraph)
    payload = {
        "subgraphs": {
            "branching": sorted(dec.e_br0.members),
            "branch_free": sorted(dec.e_bf0.members),
            "acyclic": sorted(dec.e_ac0.members),
            "weakly_branching": sorted(dec.weakly_branching),
            "critical_edges": sorted(dec.critical_edges),
            "edge_types": types,
        },
        "strata": [sorted(s) for s in strata.strata],
    }
    return payload, 0


def _cmd_orient(g: SeparatedGraph, args) -> tuple[dict, int]:
    if args.synthesize:
        o = synthesize_orientation(g)
        payload = {
            "orientation": {"kind": o.kind, "signs": o.signs}
        }
        return payload, 0
    signs = parse_orientation(g, Path(args.verify).read_text())
    report = verify_orientation(g, signs)
    payload = {
        "orientation": {
            "kind": report.kind,
            "cases": report.vertex_cases,
            "signs": signs,
        }
    }
    return payload, 0


def _pattern_json(g: SeparatedGraph, p) -> dict:
    return {
        "base": p.base,
        "depth": p.depth,
        "member_count": len(p.members),
        "dump": pattern_dump(g, p),
    }


def _cmd_dynamics(g: SeparatedGraph, args) -> tuple[dict, int]:
    p = pattern_containing(g, args.at, [], args.depth)
    patterns = {"canonical": _pattern_json(g, p)}
    payload: dict = {"patterns": patterns}
    w = None
    if args.act is not None:
        w = parse_path(g, args.act, base=args.at)
        patterns["acted"] = _pattern_json(g, act(g, p, w))
        patterns["acted"]["word"] = path_literal(w)
    if args.folner is not None:
        if args.orientation is None:
            raise ValueError("--folner requires --orientation")
        signs = parse_orientation(
            g, Path(args.orientation).read_text()
        )
        f = folner_set(g, signs, p, args.folner)
        folner: dict = {
            "n": args.folner,
            "members": [path_literal(x) for x in f],
        }
        if w is not None:
            folner["ratio"] = str(
                folner_ratio(g, signs, p, args.folner, w)
            )
            lhs, rhs = folner_mean_check(
                g, signs, p, args.folner, w
            )
            folner["mean_distance"] = str(lhs)
            folner["mean_bound"] = str(rhs)
        payload["folner"] = folner
    if args.stabilizer_witness:
        report = check_condition_n(g)
        fw = None
        for v in sorted(report.branching):
            _, res = report.branching[v]
            if isinstance(res, FailureWitness):
                fw = res
                break
        if fw is None:
            raise ValueError(
                "graph satisfies Condition (N); no witness exists"
            )
        pat, ok = stabilizer_witness(g, fw, args.depth)
        patterns["stabilizer"] = {
            "vertex": fw.vertex,
            "alpha": path_literal(fw.alpha),
            "beta": path_literal(fw.beta),
            "verified": ok,
            "member_count": len(pat.members),
        }
    return payload, 0


def _cmd_monoid(g: SeparatedGraph, args) -> tuple[dict, int]:
    pres = presentation(g)
    info: dict = {
        "generators": list(pres.generators),
        "relations": [
            f"{render_element(pres, l)} = {render_element(pres, r)}"
            for l, r in pres.relations
        ],
    }
    if args.check is not None:
        verdict, cex = CHECKS[args.check](pres, args.bound)
        info["check"] = args.check
        info["verdict"] = verdict.value
        info["bound"] = args.bound
        if cex is None:
            info["counterexample"] = None
        elif args.check in ("unperforation", "almost-unperforation"):
            n, a, b = cex
            info["counterexample"] = {
                "n": n,
                "a": render_element(pres, a),
                "b": render_element(pres, b),
            }
        elif args.check == "pseudo-cancellation":
            a, b, c = cex
            info["counterexample"] = {
                "a": render_element(pres, a),
                "b": render_element(pres, b),
                "c": render_element(pres, c),
            }
        else:
            a, b = cex
            info["counterexample"] = {
                "a": render_element(pres, a),
                "b": render_element(pres, b),
            }
    return {"monoid": info}, 0


_COMMANDS = {
    "validate": _cmd_validate,
    "analyze": _cmd_analyze,
    "check-n": _cmd_check_n,
    "decompose": _cmd_decompose,
    "orient": _cmd_orient,
    "dynamics": _cmd_dynamics,
    "monoid": _cmd_monoid,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sepgraph",
        description="Analyze finitely separated graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def with_graph(name: str, help_text: str):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("graph", help="graph description (.sgr file)")
        return sp

    with_graph("validate", "parse a graph file and report success")
    with_graph("analyze", "report branching vertices and resolutions")
    sp = with_graph("check-n", "decide Condition (N)")
    sp.add_argument(
        "--witness",
        action="store_true",
        help="include a failure witness when the verdict is false",
    )
    with_graph(
        "decompose",
        "branching/branch-free/acyclic split and strata",
    )
    sp = with_graph("orient", "synthesize or verify an orientation")
    mode = sp.add_mutually_exclusive_group(required=True)
    mode.add_argument(
        "--synthesize",
        action="store_true",
        help="construct a proper orientation",
    )
    mode.add_argument(
        "--verify", metavar="FILE", help="check a sign file"
    )
    sp = with_graph("dynamics", "simulate the partial action")
    sp.add_argument("--at", required=True, help="base vertex")
    sp.add_argument(
        "--depth", type=int, required=True, help="pattern depth"
    )
    sp.add_argument(
        "--act", metavar="WORD", help="translate by a path literal"
    )
    sp.add_argument(
        "--folner",
        type=int,
        metavar="N",
        help="emit the Folner set of the given index",
    )
    sp.add_argument(
        "--orientation",
        metavar="FILE",
        help="proper orientation for Folner sets",
    )
    sp.add_argument(
        "--stabilizer-witness",
        action="store_true",
        help="build the stabilized pattern of a Condition (N) failure",
    )
    sp = with_graph("monoid", "graph monoid presentation and checks")
    sp.add_argument(
        "--check",
        choices=sorted(CHECKS),
        help="property to test",
    )
    sp.add_argument(
        "--bound",
        type=int,
        default=12,
        help="total-coefficient search bound (default 12)",
    )
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    command = args.command
    try:
        g = _load(args.graph)
    except (OSError, GraphFormatError, ValueError) as exc:
        print(
            json.dumps(
                {"command": command, "error": str(exc)},
                indent=2,
                sort_keys=True,
            )
        )
        return 2
    try:
        payload, code = _COMMANDS[command](g, args)
    except (GraphFormatError, ValueError, OSError) as exc:
        print(
            json.dumps(
                {"command": command, "error": str(exc)},
                indent=2,
                sort_keys=True,
            )
        )
        return 2
    out = {"command": command, "graph": _digest(g), **payload}
    out["version"] = VERSION
    print(json.dumps(out, indent=2, sort_keys=True))
    return code


def main() -> None:
    sys.exit(run())
