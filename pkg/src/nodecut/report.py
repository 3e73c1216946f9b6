"""Run-report assembly, canonical JSON output, and reload for downstream commands."""

from __future__ import annotations

import json

from .errors import ReportError
from .graph import Graph, connected_components, label_sort_key
from .greedy import Community, DetectionResult, TieBreakPolicy, Trajectory

__all__ = [
    "build_report",
    "dumps_report",
    "load_report",
    "communities_from_report",
    "trajectory_rows",
]

REPORT_VERSION = 1


def _round12(x: float) -> float:
    """Floats are reported with 12 significant digits."""
    return float(f"{x:.12g}")


def _sorted_labels(g: Graph, indices) -> list[str]:
    return sorted((g.labels[i] for i in indices), key=label_sort_key)


def _link_pairs(g: Graph, link_ids) -> list[list[str]]:
    pairs = []
    for lid in link_ids:
        u, v = g.link_label_pair(lid)
        pair = sorted((u, v), key=label_sort_key)
        pairs.append(pair)
    pairs.sort(key=lambda p: (label_sort_key(p[0]), label_sort_key(p[1])))
    return pairs


def community_entry(g: Graph, name: str, c: Community) -> dict:
    return {
        "name": name,
        "nodes": _sorted_labels(g, c.nodes),
        "node_count": len(c.nodes),
        "links": _link_pairs(g, c.links),
        "link_count": len(c.links),
        "psi": _round12(c.psi),
        "boundary": _sorted_labels(g, c.boundary),
        "seed_count": c.seed_count,
        "stability": None if c.stability is None else _round12(c.stability),
    }


def build_report(
    g: Graph,
    result: DetectionResult,
    policy: TieBreakPolicy,
    source: str,
    include_ground_state: bool = False,
    trajectory_files: dict[int, str] | None = None,
    trajectory_dir: str | None = None,
    seed_link: int | None = None,
) -> dict:
    """Assemble the JSON-ready report document for a detection run."""
    comps = connected_components(g)
    names = [f"C{i + 1}" for i in range(len(result.communities))]
    entries = [community_entry(g, n, c) for n, c in zip(names, result.communities)]
    covered = sum(1 for t in result.trajectories if t.covers_graph)
    if include_ground_state:
        whole = Community(
            nodes=frozenset(range(g.n)),
            links=frozenset(range(g.m)),
            psi=0.0,
            boundary=frozenset(),
            seed_count=covered,
            stability=None,
        )
        entries.insert(0, community_entry(g, "C0", whole))
    name_of = {c.nodes: n for n, c in zip(names, result.communities)}
    per_seed = []
    for t in result.trajectories:
        u, v = t.seed
        per_seed.append(
            {
                "seed": sorted((g.labels[u], g.labels[v]), key=label_sort_key),
                "minima": [name_of[nodes] for nodes in t.minima],
                "steps": len(t.steps),
                "final_psi": _round12(t.final_psi),
                "covers_graph": t.covers_graph,
            }
        )
    report = {
        "version": REPORT_VERSION,
        "graph": {
            "n": g.n,
            "m": g.m,
            "weighted": not g.unit_weighted,
            "connected": len(comps) == 1,
            "components": len(comps),
            "labels": sorted(g.labels, key=label_sort_key),
            "source": source,
        },
        "policy": {
            "tie_break": policy.mode,
            "rng_seed": policy.rng_seed if policy.mode == "random" else None,
        },
        "mode": "all-seeds" if seed_link is None else "single-seed",
        "communities": entries,
        "ground_state": {
            "psi": 0.0,
            "node_count": g.n,
            "included_as_community": include_ground_state,
            "runs_reaching_it": covered,
        },
        "seeds": {
            "total": len(result.trajectories) + len(result.failures),
            "histogram": {str(k): v for k, v in sorted(result.histogram.items())},
            "every_seed_recorded_a_minimum": all(
                len(t.minima) > 0 for t in result.trajectories
            ),
            "per_seed": per_seed,
            "failures": [
                {
                    "seed": sorted(
                        (g.labels[g.link_ends[lid][0]], g.labels[g.link_ends[lid][1]]),
                        key=label_sort_key,
                    ),
                    "error": message,
                }
                for lid, message in sorted(result.failures.items())
            ],
        },
        "trajectories": (
            None
            if trajectory_files is None
            else {
                "directory": trajectory_dir,
                "files": [trajectory_files[t.link_id] for t in result.trajectories],
            }
        ),
    }
    return report


def dumps_report(report: dict) -> str:
    """Canonical serialization: sorted keys, two-space indent, trailing newline."""
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def load_report(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            report = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ReportError(f"cannot read report {path}: {exc}") from exc
    if not isinstance(report, dict) or "communities" not in report or "graph" not in report:
        raise ReportError(f"report {path} lacks required keys")
    return report


def communities_from_report(g: Graph, report: dict) -> tuple[list[Community], list[str]]:
    """Reconstruct Community records (indices against g) from a report document."""
    out = []
    names = []
    try:
        for entry in report["communities"]:
            nodes = frozenset(g.index_of(lab) for lab in entry["nodes"])
            links = frozenset(g.find_link(u, v) for u, v in entry["links"])
            boundary = frozenset(g.index_of(lab) for lab in entry["boundary"])
            out.append(
                Community(
                    nodes=nodes,
                    links=links,
                    psi=float(entry["psi"]),
                    boundary=boundary,
                    seed_count=int(entry.get("seed_count", 0)),
                    stability=entry.get("stability"),
                )
            )
            names.append(str(entry["name"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ReportError(f"malformed community entry: {exc}") from exc
    return out, names


def trajectory_rows(g: Graph, traj: Trajectory) -> list[tuple[str, str, str, str, str]]:
    """CSV rows (step, action, node, psi, size) for one run."""
    rows = []
    for step, action, node, value, size in traj.steps:
        rows.append(
            (
                str(step),
                action,
                "" if node is None else g.labels[node],
                f"{value:.12g}",
                str(size),
            )
        )
    return rows
