"""Command-line interface.

    clusterfold roots X
    clusterfold clusters X [--count]
    clusterfold graph X [--format dot|json] [-o FILE]
    clusterfold fold X --sigma "(1 3)" [--format dot|json] [-o FILE]
    clusterfold verify X --sigma "(1 3)"

Exit status: 0 success / all checks pass, 1 verification findings,
2 usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Sequence

from .cartan import bipartite_orientation, bipartition, cartan_from_label, format_cycles, identify_type
from .clusters import ExchangeGraph, clusters_bruteforce, exchange_graph
from .errors import ClusterFoldError, IoFailure, UsageError
from .folding import fold_seed, folding_context, seed_automorphism, sigma_initial_seed, stable_graph, verify_all
from .roots import compatibility_table, fold_root, format_root, root_system, sigma_on_roots


def format_cluster(cluster) -> str:
    return "{" + ", ".join(format_root(r) for r in cluster) + "}"


def export_graph(graph: ExchangeGraph, fmt: str, label: str = "",
                 direction_label: Callable[[int, int], int] | None = None) -> bytes:
    """Serialize an exchange graph as JSON or DOT; output is byte-stable."""
    label = label or graph.label
    direction_label = direction_label or (lambda u, k: k + 1)
    if fmt == "json":
        nodes = [json.dumps({"id": i, "cluster": [list(r) for r in s.cluster],
                             "matrix": [list(row) for row in s.matrix.entries]})
                 for i, s in enumerate(graph.nodes)]
        edges = [json.dumps({"from": u, "to": v, "k": direction_label(u, k)}) for u, v, k in graph.edges]
        # one node or edge per line keeps large documents diffable
        text = ('{\n  "type": ' + json.dumps(label) + ',\n'
                '  "nodes": [\n    ' + ',\n    '.join(nodes) + '\n  ],\n'
                '  "edges": [\n    ' + ',\n    '.join(edges) + '\n  ]\n}\n')
        return text.encode()
    if fmt == "dot":
        lines = [f"graph {json.dumps(label)} {{"]
        for i, s in enumerate(graph.nodes):
            lines.append(f"  {i} [label={json.dumps(format_cluster(s.cluster))}];")
        for u, v, k in graph.edges:
            lines.append(f'  {u} -- {v} [label="{direction_label(u, k)}"];')
        lines.append("}")
        return ("\n".join(lines) + "\n").encode()
    raise UsageError(f"unknown format {fmt!r}")


def _write(data: bytes, path: str | None, out) -> None:
    if path is None:
        out.write(data.decode())
        return
    try:
        with open(path, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc


def _graph_for(label: str) -> ExchangeGraph:
    c = cartan_from_label(label)
    rs = root_system(c)
    parts = bipartition(c)
    return exchange_graph(rs, bipartite_orientation(c, parts), compatibility_table(rs, parts), label)


def cmd_roots(args, out) -> int:
    rs = root_system(cartan_from_label(args.type))
    for r in rs.positives:
        print(format_root(r), file=out)
    print(f"count: {len(rs.positives)}", file=out)
    return 0


def cmd_clusters(args, out) -> int:
    c = cartan_from_label(args.type)
    rs = root_system(c)
    found = clusters_bruteforce(rs, compatibility_table(rs, bipartition(c)))
    if args.count:
        print(len(found), file=out)
    else:
        for cl in found:
            print(format_cluster(cl), file=out)
    return 0


def cmd_graph(args, out) -> int:
    _write(export_graph(_graph_for(args.type), args.format or "json", args.type), args.output, out)
    return 0


def cmd_fold(args, out) -> int:
    ctx = folding_context(args.type, args.sigma)
    if args.format:
        graph = stable_graph(ctx)

        def orbit_label(u, k):
            pos = seed_automorphism(graph.nodes[u], ctx.sigma)
            return pos.orbits[k][0] + 1

        _write(export_graph(graph, args.format, ctx.name, orbit_label), args.output, out)
        return 0
    folded = ctx.folded_cartan
    p = lambda *a: print(*a, file=out)
    p(f"type {ctx.label}, sigma {format_cycles(ctx.sigma.perm)}")
    p(f"folded Cartan matrix (orbit labels {', '.join(map(str, folded.labels))}), "
      f"type {identify_type(folded) or 'unknown'}:")
    for row in folded.entries:
        p("  [" + ", ".join(f"{x:2d}" for x in row) + "]")
    p("folded roots (orbit representative, period -> folded root):")
    count = 0
    for alpha in ctx.source.almost_positives:
        orbit = sigma_on_roots(ctx.sigma, alpha)
        if min(orbit.orbit) != alpha:
            continue
        count += 1
        p(f"  {format_root(alpha)} d={orbit.period} -> {format_root(fold_root(ctx.sigma, alpha, ctx.target))}")
    p(f"  {count} orbits -> {len(ctx.target)} almost positive roots")
    seed = fold_seed(sigma_initial_seed(ctx), ctx)
    p("folded initial seed:")
    p(f"  cluster {format_cluster(seed.cluster)}")
    p(f"  matrix  {[list(r) for r in seed.matrix.entries]}")
    return 0


def cmd_verify(args, out) -> int:
    ctx = folding_context(args.type, args.sigma)
    ok = True
    for report in verify_all(ctx):
        print(report.summary(), file=out)
        for finding in report.findings:
            print(f"  - {finding}", file=out)
        ok = ok and report.ok
    print("all checks passed" if ok else "verification FAILED", file=out)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="clusterfold",
                                     description="Finite-type cluster combinatorics and folding.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("roots", help="list positive roots")
    p.add_argument("type")
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("clusters", help="list clusters")
    p.add_argument("type")
    p.add_argument("--count", action="store_true", help="print only the number of clusters")
    p.set_defaults(func=cmd_clusters)

    for name, func, helptext in (("graph", cmd_graph, "export the exchange graph"),
                                 ("fold", cmd_fold, "fold along a diagram automorphism")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("type")
        if name == "fold":
            p.add_argument("--sigma", required=True, help='cycle notation, e.g. "(1 3)(5 6)"')
        p.add_argument("--format", choices=("dot", "json"))
        p.add_argument("-o", "--output", help="write to FILE instead of stdout")
        p.set_defaults(func=func)

    p = sub.add_parser("verify", help="verify the folding theorems for one automorphism")
    p.add_argument("type")
    p.add_argument("--sigma", required=True, help='cycle notation, e.g. "(1 3)"')
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args, out)
    except ClusterFoldError as exc:
        print(f"error: {exc.name}: {exc}", file=err)
        return 2


def main() -> None:
    sys.exit(run())
