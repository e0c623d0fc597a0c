"""Command-line front end: build groups, inspect and export their power graphs, run the theorem suite."""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import algorithms as alg
from . import graphs as gr
from . import groups as grp
from . import theorems as th

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
MAX_ORDER_ENV = "POWERGRAPH_MAX_ORDER"
DEFAULT_MAX_ORDER = 60

FAMILIES = ("cyclic", "elemab", "genq", "dihedral", "heisenberg", "sym", "alt", "perm", "product", "table")
PROPERTIES = ("connected", "bipartite", "planar", "eulerian", "srg", "bridges", "complete", "tree", "eppo")


class UsageError(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _ints(params: Sequence[str], count: int, family: str) -> list[int]:
    if len(params) != count:
        raise UsageError(f"{family} takes {count} integer parameter(s), got {len(params)}")
    try:
        return [int(p) for p in params]
    except ValueError:
        raise UsageError(f"{family} parameters must be integers: {' '.join(params)}") from None


def build_group(family: str, params: Sequence[str], degree: int | None = None) -> grp.Group:
    """Construct a group from a family name and its command-line parameters."""
    simple = {
        "cyclic": (1, grp.build_cyclic),
        "elemab": (2, grp.build_elementary_abelian),
        "genq": (1, grp.build_generalized_quaternion),
        "dihedral": (1, grp.build_dihedral),
        "heisenberg": (1, grp.build_heisenberg),
        "sym": (1, grp.build_symmetric),
        "alt": (1, grp.build_alternating),
    }
    if family in simple:
        count, factory = simple[family]
        return factory(*_ints(params, count, family))
    if family == "perm":
        if not params:
            raise UsageError("perm needs at least one generator in cycle notation")
        perms = [grp.parse_cycles(text, degree) for text in params]
        top = max(len(p) for p in perms)
        return grp.build_from_permutations(perms, degree=max(top, degree or 0))
    if family == "product":
        if len(params) != 2:
            raise UsageError("product takes two group files")
        return grp.direct_product(grp.read_group_file(params[0]), grp.read_group_file(params[1]))
    if family == "table":
        if len(params) != 1:
            raise UsageError("table takes one group file")
        return grp.read_group_file(params[0])
    raise UsageError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")


def _graph(g: grp.Group, full: bool) -> gr.UndirectedGraph:
    return gr.build_undirected(g) if full else gr.punctured_power_graph(g)


def check_property(g: grp.Group, prop: str, full: bool = False) -> dict:
    """Evaluate one graph property; the result is the JSON verdict the CLI prints."""
    graph = _graph(g, full)
    verdict: object
    witness: object = None
    if prop == "connected":
        comps = alg.connected_components(graph)
        verdict, witness = len(comps) <= 1, {"components": len(comps)}
    elif prop == "bipartite":
        res = alg.is_bipartite(graph)
        verdict = res.bipartite
        witness = {"odd_cycle": list(res.odd_cycle)} if not res.bipartite else None
    elif prop == "planar":
        res = alg.is_planar(graph)
        verdict = res.planar
        witness = {"faces": res.faces} if res.planar else res.kuratowski.to_json()
    elif prop == "eulerian":
        verdict = alg.is_eulerian(graph)
    elif prop == "srg":
        try:
            params = alg.srg_parameters(graph)
            verdict, witness = True, {"parameters": list(params.as_tuple()), "srg": str(params)}
        except alg.NotStronglyRegular as exc:
            verdict, witness = False, {"reason": exc.reason, "pair": list(exc.pair) if exc.pair else None}
    elif prop == "bridges":
        bridges = alg.find_bridges(graph)
        verdict, witness = len(bridges), {"bridges": [list(e) for e in bridges]}
    elif prop == "complete":
        verdict = alg.is_complete(graph)
    elif prop == "tree":
        verdict = alg.is_tree(graph)
    elif prop == "eppo":
        verdict = grp.is_eppo(g)
        witness = {"spectrum": list(grp.spectrum(g).pi_e)}
    else:
        raise UsageError(f"unknown property {prop!r}; choose from {', '.join(PROPERTIES)}")
    return {
        "property": prop,
        "group": g.label,
        "graph": "P" if full else "P*",
        "verdict": verdict,
        "witness": th._plain(witness),
    }


def graph_summary(g: grp.Group, full: bool = False) -> dict:
    graph = _graph(g, full)
    info = grp.spectrum(g)
    return {
        "group": g.label,
        "order": g.order,
        "graph": "P" if full else "P*",
        "vertices": graph.n,
        "edges": graph.edge_count,
        "components": len(alg.connected_components(graph)),
        "degree_sequence": sorted(graph.degrees.tolist(), reverse=True),
        "spectrum": {"pi_e": list(info.pi_e), "mu": list(info.mu), "s": {str(k): v for k, v in info.s.items()}},
    }


def export_graph(g: grp.Group, fmt: str, directed: bool = False, punctured: bool = False) -> str:
    graph = gr.build_directed(g) if directed else gr.build_undirected(g)
    if punctured:
        graph = gr.puncture(graph)
    if fmt == "dot":
        return gr.to_dot(graph, g.label)
    if fmt == "edges":
        return gr.to_edge_list(graph)
    raise UsageError(f"unknown format {fmt!r}; choose dot or edges")


def _default_max_order() -> int:
    raw = os.environ.get(MAX_ORDER_ENV)
    if raw is None:
        return DEFAULT_MAX_ORDER
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{MAX_ORDER_ENV} must be an integer, got {raw!r}") from None


def run_verify(ids: Sequence[str], max_order: int) -> th.TheoremReport:
    if max_order < 2:
        raise UsageError("--max-order must be at least 2")
    if list(ids) == ["all"]:
        return th.run_all(max_order)
    unknown = [i for i in ids if i not in th.REGISTRY]
    if unknown:
        raise UsageError(f"unknown theorem id(s): {', '.join(unknown)}; known: {', '.join(sorted(th.REGISTRY))}")
    return th.run_all(max_order, theorem_ids=sorted(set(ids)))


# ----------------------------------------------------------------------
# argument handling


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="powergraph", description=__doc__)
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("build", help="write a Cayley-table file for a group")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("params", nargs="*", help="family parameters, cycle strings, or group files")
    p.add_argument("--degree", type=int, help="permutation degree for the perm family")
    p.add_argument("--label", help="override the group label")
    p.add_argument("--out", help="output path (default: standard output)")

    p = sub.add_parser("graph", help="summarize the power graph of a group file")
    p.add_argument("group_file")
    p.add_argument("--full", action="store_true", help="use P(G) instead of P*(G)")

    p = sub.add_parser("check", help="test one property of the power graph")
    p.add_argument("property", choices=PROPERTIES)
    p.add_argument("group_file")
    scope = p.add_mutually_exclusive_group()
    scope.add_argument("--full", action="store_true", help="use P(G)")
    scope.add_argument("--punctured", action="store_true", help="use P*(G) (the default)")

    p = sub.add_parser("verify", help="run theorem checks over the group catalog")
    p.add_argument("ids", nargs="+", help="theorem ids, or 'all'")
    p.add_argument("--max-order", type=int, default=None, help=f"catalog bound (default: ${MAX_ORDER_ENV} or {DEFAULT_MAX_ORDER})")
    p.add_argument("--report", help="write the JSON report here instead of standard output")

    p = sub.add_parser("export", help="write the power graph as DOT or an edge list")
    p.add_argument("group_file")
    p.add_argument("--format", default="edges", choices=("dot", "edges"))
    p.add_argument("--directed", action="store_true")
    p.add_argument("--punctured", action="store_true")
    p.add_argument("--out", help="output path (default: standard output)")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    except (grp.GroupError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def _dispatch(args: argparse.Namespace) -> int:
    if args.verb == "build":
        g = build_group(args.family, args.params, args.degree)
        if args.label:
            g = grp.Group(g.table, args.label, g.names)
        _emit(grp.dump_cayley_table(g), args.out)
        print(f"built {g.label} of order {g.order}", file=sys.stderr)
        return EXIT_OK

    if args.verb == "graph":
        g = grp.read_group_file(args.group_file)
        print(json.dumps(graph_summary(g, args.full), sort_keys=True))
        return EXIT_OK

    if args.verb == "check":
        g = grp.read_group_file(args.group_file)
        print(json.dumps(check_property(g, args.property, args.full), sort_keys=True))
        return EXIT_OK

    if args.verb == "verify":
        max_order = args.max_order if args.max_order is not None else _default_max_order()
        report = run_verify(args.ids, max_order)
        _emit(report.dumps(), args.report)
        for inst in report.failures():
            print(f"FAIL {inst.theorem_id} {inst.group}: predicted {inst.predicted!r}, observed {inst.observed!r}",
                  file=sys.stderr)
        s = report.summary
        print(f"{s['pass']} passed, {s['fail']} failed over {len(report.catalog)} groups", file=sys.stderr)
        return EXIT_OK if report.ok else EXIT_FAIL

    if args.verb == "export":
        g = grp.read_group_file(args.group_file)
        _emit(export_graph(g, args.format, args.directed, args.punctured), args.out)
        return EXIT_OK

    raise UsageError(f"unknown verb {args.verb!r}")


if __name__ == "__main__":
    sys.exit(main())
