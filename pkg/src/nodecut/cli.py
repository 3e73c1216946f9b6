"""Command-line interface.

Subcommands: detect, oracle, verify, hierarchy, linegraph.

Exit codes:
    0  success
    1  oracle --compare found communities outside the exact-minima set
    2  usage, input, or report errors (includes weighted graphs where a
       unit-weight graph is required)
    3  disconnected input without --allow-disconnected
    4  graph exceeds the oracle enumeration cap and --force was not given
    5  a community in the report fails the local-minimum certificate
    6  a community exceeds the line-graph equivalence residual tolerance

Every error path prints a single line "nodecut: error[<kind>]: <message>"
on standard error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import re
import sys
import time

from .datasets import DATASETS, builtin_graph
from .errors import (
    DisconnectedGraph,
    EdgeListError,
    NodeCutError,
    ReportError,
    TooLarge,
    WeightedUnsupported,
)
from .graph import (
    Graph,
    connected_components,
    induced_links,
    is_connected,
    label_sort_key,
    load_edge_list,
)
from .greedy import Community, TieBreakPolicy, merge_trajectories, run_all_seeds, run_from_seed
from .hierarchy import build_polyhierarchy, classify_overlap, dag_to_dot
from .landscape import DEFAULT_MAX_NODES, exact_local_minima, verify_local_minimum
from .linegraph import build_line_graph, check_equivalence
from .psi import psi
from .report import (
    build_report,
    communities_from_report,
    dumps_report,
    load_report,
    trajectory_rows,
)

EQUIVALENCE_TOL = 1e-10


class CliError(Exception):
    def __init__(self, code: int, kind: str, message: str):
        super().__init__(message)
        self.code = code
        self.kind = kind


def _fail(code: int, kind: str, message: str):
    raise CliError(code, kind, message)


def _add_graph_args(sub):
    sub.add_argument("input", nargs="?", help="edge-list file (whitespace-delimited)")
    sub.add_argument("--dataset", choices=DATASETS, help="use a bundled graph instead of a file")
    sub.add_argument("--weighted", action="store_true", help="read a third column as link weight")


def _load_graph(args) -> tuple[Graph, str]:
    if args.dataset and args.input:
        _fail(2, "usage", "give either an input file or --dataset, not both")
    if args.dataset:
        return builtin_graph(args.dataset), args.dataset
    if not args.input:
        _fail(2, "usage", "an input file or --dataset is required")
    try:
        with open(args.input, encoding="utf-8") as fh:
            g = load_edge_list(fh, weighted=getattr(args, "weighted", False))
    except OSError as exc:
        _fail(2, "input", str(exc))
    except EdgeListError as exc:
        _fail(2, "edge-list", str(exc))
    if g.m == 0:
        _fail(2, "empty-graph", "input contains no links")
    return g, args.input


def _policy(args) -> TieBreakPolicy:
    mode = "deterministic" if args.tie_break == "det" else "random"
    return TieBreakPolicy(mode=mode, rng_seed=args.rng_seed)


def _write_text(path: str | None, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _safe_token(label: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]", "_", label)


def _write_trajectories(g: Graph, trajectories, directory: str) -> dict[int, str]:
    os.makedirs(directory, exist_ok=True)
    files = {}
    for traj in trajectories:
        u, v = traj.seed
        name = f"seed-{traj.link_id:04d}-{_safe_token(g.labels[u])}-{_safe_token(g.labels[v])}.csv"
        with open(os.path.join(directory, name), "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["step", "action", "node", "psi", "size"])
            writer.writerows(trajectory_rows(g, traj))
        files[traj.link_id] = name
    return files


def cmd_detect(args) -> int:
    g, source = _load_graph(args)
    policy = _policy(args)
    if len(connected_components(g)) > 1 and not args.allow_disconnected:
        _fail(3, "disconnected-graph", "input graph is disconnected; pass --allow-disconnected to proceed")
    started = time.perf_counter()
    seed_link = None
    if args.seed:
        try:
            u_label, v_label = args.seed.split(",")
            seed_link = g.find_link(u_label.strip(), v_label.strip())
        except (ValueError, KeyError):
            _fail(2, "seed", f"--seed {args.seed!r} is not a link of the graph")
        result = merge_trajectories(g, [run_from_seed(g, seed_link, policy)])
    else:
        result = run_all_seeds(g, policy, jobs=args.jobs, allow_disconnected=True)
    elapsed = time.perf_counter() - started
    files = None
    if args.trajectories:
        files = _write_trajectories(g, result.trajectories, args.trajectories)
    report = build_report(
        g,
        result,
        policy,
        source,
        include_ground_state=args.include_ground_state,
        trajectory_files=files,
        trajectory_dir=args.trajectories,
        seed_link=seed_link,
    )
    _write_text(args.out, dumps_report(report))
    print(
        f"detect: {len(result.trajectories)} seed run(s), "
        f"{len(result.communities)} communities, {elapsed:.3f}s",
        file=sys.stderr,
    )
    return 0


def cmd_oracle(args) -> int:
    g, source = _load_graph(args)
    try:
        minima = exact_local_minima(g, max_nodes=args.max_nodes, force=args.force)
    except TooLarge as exc:
        _fail(4, "too-large", f"{exc}; pass --force to override")
    entries = []
    for nodes in minima:
        entries.append(
            {
                "nodes": sorted((g.labels[i] for i in nodes), key=label_sort_key),
                "node_count": len(nodes),
                "link_count": len(induced_links(g, nodes)),
                "psi": float(f"{psi(g, nodes):.12g}"),
            }
        )
    doc = {
        "graph": {"n": g.n, "m": g.m, "source": source},
        "count": len(entries),
        "minima": entries,
    }
    code = 0
    if args.compare:
        report = _load_report_or_fail(args.compare)
        if report["graph"]["n"] != g.n or report["graph"]["m"] != g.m:
            _fail(2, "compare", "report graph size does not match the input graph")
        greedy_sets = {
            frozenset(entry["nodes"]): entry["name"]
            for entry in report["communities"]
            if entry["node_count"] < g.n
        }
        exact_sets = {frozenset(e["nodes"]) for e in entries}
        greedy_only = sorted(name for s, name in greedy_sets.items() if s not in exact_sets)
        oracle_only = [
            e["nodes"] for e in entries if frozenset(e["nodes"]) not in greedy_sets
        ]
        doc["compare"] = {
            "matched": len(greedy_sets) - len(greedy_only),
            "greedy_only": greedy_only,
            "oracle_only": oracle_only,
            "sound": not greedy_only,
        }
        if greedy_only:
            code = 1
    _write_text(args.out, json.dumps(doc, sort_keys=True, indent=2) + "\n")
    if code:
        print(
            f"nodecut: error[compare]: {len(doc['compare']['greedy_only'])} "
            "detected communities are not exact local minima",
            file=sys.stderr,
        )
    return code


def _load_report_or_fail(path: str) -> dict:
    try:
        return load_report(path)
    except ReportError as exc:
        _fail(2, "report", str(exc))


def cmd_verify(args) -> int:
    g, _ = _load_graph(args)
    report = _load_report_or_fail(args.report)
    try:
        communities, names = communities_from_report(g, report)
    except (ReportError, KeyError) as exc:
        _fail(2, "report", f"report does not match the graph: {exc}")
    run_equivalence = args.equivalence or g.unit_weighted
    if args.equivalence and not g.unit_weighted:
        _fail(2, "weighted-unsupported", "line-graph equivalence is defined for unit weights only")
    lg = build_line_graph(g) if run_equivalence else None
    checks = []
    certificate_ok = True
    max_residual = None
    for name, c in zip(names, communities):
        connected = is_connected(g, c.nodes)
        ok = connected and verify_local_minimum(g, c.nodes)
        certificate_ok = certificate_ok and ok
        residual = None
        if run_equivalence:
            residual = check_equivalence(g, c.nodes, lg)
            max_residual = residual if max_residual is None else max(max_residual, residual)
        checks.append(
            {
                "name": name,
                "node_count": len(c.nodes),
                "psi": float(f"{psi(g, c.nodes):.12g}"),
                "connected": connected,
                "local_minimum": ok,
                "equivalence_residual": None if residual is None else float(f"{residual:.6g}"),
            }
        )
    doc = {
        "checks": checks,
        "all_local_minima": certificate_ok,
        "equivalence_checked": run_equivalence,
        "equivalence_tolerance": EQUIVALENCE_TOL,
        "max_equivalence_residual": None if max_residual is None else float(f"{max_residual:.6g}"),
    }
    _write_text(None, json.dumps(doc, sort_keys=True, indent=2) + "\n")
    if not certificate_ok:
        bad = [c["name"] for c in checks if not c["local_minimum"]]
        print(
            f"nodecut: error[certificate]: not a local minimum: {', '.join(bad)}",
            file=sys.stderr,
        )
        return 5
    if run_equivalence and max_residual is not None and max_residual >= EQUIVALENCE_TOL:
        print(
            f"nodecut: error[equivalence]: max residual {max_residual:.3g} "
            f"exceeds {EQUIVALENCE_TOL:g}",
            file=sys.stderr,
        )
        return 6
    return 0


def _report_communities_by_label(report: dict) -> tuple[list[Community], list[str], int]:
    """Rebuild communities over synthetic indices taken from the report label list."""
    labels = report["graph"]["labels"]
    index = {lab: i for i, lab in enumerate(labels)}
    link_ids: dict[tuple[int, int], int] = {}

    def link_id(u: int, v: int) -> int:
        key = (min(u, v), max(u, v))
        return link_ids.setdefault(key, len(link_ids))

    out = []
    names = []
    for entry in report["communities"]:
        if entry["node_count"] >= len(labels):
            continue  # an included ground state duplicates the DAG root
        try:
            nodes = frozenset(index[lab] for lab in entry["nodes"])
            links = frozenset(link_id(index[u], index[v]) for u, v in entry["links"])
            boundary = frozenset(index[lab] for lab in entry["boundary"])
            names.append(str(entry["name"]))
            out.append(
                Community(
                    nodes=nodes,
                    links=links,
                    psi=float(entry["psi"]),
                    boundary=boundary,
                    seed_count=int(entry.get("seed_count", 0)),
                )
            )
        except (KeyError, TypeError, ValueError) as exc:
            _fail(2, "report", f"malformed community entry: {exc}")
    return out, names, len(labels)


def cmd_hierarchy(args) -> int:
    report = _load_report_or_fail(args.report)
    communities, names, n = _report_communities_by_label(report)
    labels = report["graph"]["labels"]
    dag = build_polyhierarchy(n, communities, names)
    by_name = dict(zip(names, communities))
    pairs = []
    for i, a in enumerate(names):
        for b in names[i + 1 :]:
            ca, cb = by_name[a], by_name[b]
            rel = classify_overlap(ca, cb)
            pairs.append(
                {
                    "a": a,
                    "b": b,
                    "kind": rel.kind,
                    "shared_nodes": sorted(
                        (labels[i2] for i2 in rel.shared_nodes), key=label_sort_key
                    ),
                    "shared_links": _shared_link_labels(report, a, b),
                    "covers_graph": len(ca.nodes | cb.nodes) == n,
                }
            )
    doc = {
        "names": dag.names,
        "edges": [[p, c] for p, c in dag.edges],
        "pairs": pairs,
    }
    dot_text = dag_to_dot(dag)
    if args.dot:
        _write_text(args.dot, dot_text)
    if args.json:
        _write_text(args.json, json.dumps(doc, sort_keys=True, indent=2) + "\n")
    if not args.dot:
        sys.stdout.write(dot_text)
    elif not args.json:
        sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    return 0


def _shared_link_labels(report: dict, a: str, b: str) -> list[list[str]]:
    entries = {e["name"]: e for e in report["communities"]}
    la = {tuple(p) for p in entries[a]["links"]}
    lb = {tuple(p) for p in entries[b]["links"]}
    return sorted(
        [list(p) for p in la & lb],
        key=lambda p: (label_sort_key(p[0]), label_sort_key(p[1])),
    )


def cmd_linegraph(args) -> int:
    g, source = _load_graph(args)
    try:
        lg = build_line_graph(g)
    except WeightedUnsupported as exc:
        _fail(2, "weighted-unsupported", str(exc))
    lines = []
    if args.format == "edges":
        lines.append(f"# weighted line graph of {source}: {g.m} vertices (one per link)")
        for lid in range(g.m):
            u, v = g.link_label_pair(lid)
            lines.append(f"# link {lid}: {u} {v}")
        for k, l, w in lg.entries():
            lines.append(f"{k} {l} {w:.12g}")
    else:
        lines.append("graph linegraph {")
        for lid in range(g.m):
            u, v = g.link_label_pair(lid)
            lines.append(f'  "{lid}" [label="{u}-{v}"];')
        for k, l, w in lg.entries():
            lines.append(f'  "{k}" -- "{l}" [weight={w:.12g}];')
        lines.append("}")
    _write_text(args.out, "\n".join(lines) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nodecut",
        description="Detect overlapping link communities as local minima of the normalised node cut.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("detect", help="run greedy detection from every seed link")
    _add_graph_args(p)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--seed", metavar="U,V", help="run a single seed link instead of all links")
    group.add_argument("--all-seeds", action="store_true", help="run every link (default)")
    p.add_argument("--tie-break", choices=["det", "rng"], default="det")
    p.add_argument("--rng-seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1, help="parallel worker processes")
    p.add_argument("--out", help="write the JSON report here (default: stdout)")
    p.add_argument("--trajectories", metavar="DIR", help="write one move-log CSV per seed")
    p.add_argument("--include-ground-state", action="store_true")
    p.add_argument("--allow-disconnected", action="store_true")
    p.set_defaults(func=cmd_detect)

    p = subs.add_parser("oracle", help="exhaustive landscape minima (small graphs)")
    _add_graph_args(p)
    p.add_argument("--max-nodes", type=int, default=DEFAULT_MAX_NODES)
    p.add_argument("--force", action="store_true", help="override the node cap")
    p.add_argument("--compare", metavar="REPORT", help="check a detect report against the exact minima")
    p.add_argument("--out", help="write JSON here (default: stdout)")
    p.set_defaults(func=cmd_oracle)

    p = subs.add_parser("verify", help="re-check a report's communities on the graph")
    _add_graph_args(p)
    p.add_argument("--report", required=True)
    p.add_argument(
        "--equivalence",
        action="store_true",
        help="require the line-graph equivalence check (refused on weighted graphs)",
    )
    p.set_defaults(func=cmd_verify)

    p = subs.add_parser("hierarchy", help="containment DAG and pairwise overlaps from a report")
    p.add_argument("--report", required=True)
    p.add_argument("--dot", help="write the DAG in DOT format here")
    p.add_argument("--json", help="write pairwise relations as JSON here")
    p.set_defaults(func=cmd_hierarchy)

    p = subs.add_parser("linegraph", help="dump the weighted line graph")
    _add_graph_args(p)
    p.add_argument("--out", help="write here (default: stdout)")
    p.add_argument("--format", choices=["edges", "dot"], default="edges")
    p.set_defaults(func=cmd_linegraph)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"nodecut: error[{exc.kind}]: {exc}", file=sys.stderr)
        return exc.code
    except DisconnectedGraph as exc:
        print(f"nodecut: error[disconnected-graph]: {exc}", file=sys.stderr)
        return 3
    except NodeCutError as exc:
        print(f"nodecut: error[{type(exc).__name__}]: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
