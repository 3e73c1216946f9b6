"""Undirected weighted graph model, edge-list ingestion, and subgraph queries.

Nodes are referred to by dense internal indices 0..n-1 everywhere in the
library; the original edge-list labels are kept on the graph and used for
all user-facing output. Node sets and link sets are plain Python sets of
internal indices and link ids.
"""

from __future__ import annotations

import warnings

from .errors import EdgeListError

__all__ = [
    "Graph",
    "load_edge_list",
    "edge_list_text",
    "induced_links",
    "induced_nodes",
    "neighbors_of_set",
    "is_connected",
    "boundary_nodes",
    "connected_components",
    "label_sort_key",
]


def label_sort_key(label: str):
    """Sort key ordering numeric labels numerically, everything else lexically."""
    try:
        return (0, int(label), "")
    except ValueError:
        return (1, 0, label)


class Graph:
    """Immutable undirected weighted graph.

    Attributes:
        n: node count.
        m: link count.
        labels: original label per internal index.
        adj: per-node tuple of (neighbor, weight, link_id), sorted by neighbor.
        degrees: total incident weight per node.
        link_ends: (u, v) endpoint pair per link id, u < v.
        link_weights: weight per link id.
    """

    __slots__ = ("n", "m", "labels", "adj", "degrees", "link_ends", "link_weights", "_index")

    def __init__(self, labels, links):
        """Build from a label list and (u, v, weight) triples over internal indices.

        Endpoints must be distinct and already deduplicated; use load_edge_list
        for raw text with duplicate or comment handling.
        """
        n = len(labels)
        ends = []
        weights = []
        nbrs = [[] for _ in range(n)]
        for lid, (u, v, w) in enumerate(links):
            if u == v:
                raise EdgeListError(f"self-loop at node {labels[u]!r}")
            if not (w > 0.0):
                raise EdgeListError(f"non-positive weight on link ({labels[u]}, {labels[v]})")
            a, b = (u, v) if u < v else (v, u)
            ends.append((a, b))
            weights.append(float(w))
            nbrs[a].append((b, float(w), lid))
            nbrs[b].append((a, float(w), lid))
        self.n = n
        self.m = len(ends)
        self.labels = tuple(str(x) for x in labels)
        self.adj = tuple(tuple(sorted(lst)) for lst in nbrs)
        self.degrees = tuple(sum(w for _, w, _ in lst) for lst in self.adj)
        self.link_ends = tuple(ends)
        self.link_weights = tuple(weights)
        self._index = {lab: i for i, lab in enumerate(self.labels)}

    def index_of(self, label: str) -> int:
        """Internal index of a node label; KeyError if unknown."""
        return self._index[str(label)]

    def find_link(self, u_label: str, v_label: str) -> int:
        """Link id joining two labels; KeyError if the link does not exist."""
        u = self.index_of(u_label)
        v = self.index_of(v_label)
        for nbr, _, lid in self.adj[u]:
            if nbr == v:
                return lid
        raise KeyError(f"no link ({u_label}, {v_label})")

    @property
    def unit_weighted(self) -> bool:
        """True when every link weight is exactly 1."""
        return all(w == 1.0 for w in self.link_weights)

    def link_label_pair(self, lid: int) -> tuple[str, str]:
        u, v = self.link_ends[lid]
        return (self.labels[u], self.labels[v])


def load_edge_list(text, weighted: bool = False) -> Graph:
    """Parse whitespace-delimited edge-list text into a Graph.

    Each non-empty line is "u v" (or "u v w" when weighted=True); '#' starts
    a comment running to end of line; labels are arbitrary tokens. Duplicate
    links are merged by summing weights, with a warning. Self-loops,
    non-positive weights, and short lines are rejected with the line number.
    """
    if hasattr(text, "read"):
        text = text.read()
    labels: list[str] = []
    index: dict[str, int] = {}
    order: list[tuple[int, int]] = []
    weight_of: dict[tuple[int, int], float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) < 2:
            raise EdgeListError("fewer than 2 tokens", line=lineno)
        if not weighted and len(tokens) > 2:
            raise EdgeListError("unexpected extra tokens (weighted input needs weighted=True)", line=lineno)
        if weighted and len(tokens) > 3:
            raise EdgeListError("more than 3 tokens", line=lineno)
        if tokens[0] == tokens[1]:
            raise EdgeListError(f"self-loop {tokens[0]!r}", line=lineno)
        w = 1.0
        if weighted and len(tokens) == 3:
            try:
                w = float(tokens[2])
            except ValueError:
                raise EdgeListError(f"bad weight {tokens[2]!r}", line=lineno) from None
        if not (w > 0.0):
            raise EdgeListError(f"non-positive weight {w!r}", line=lineno)
        uv = []
        for tok in tokens[:2]:
            if tok not in index:
                index[tok] = len(labels)
                labels.append(tok)
            uv.append(index[tok])
        key = (min(uv), max(uv))
        if key in weight_of:
            warnings.warn(f"duplicate link {tokens[0]} {tokens[1]} at line {lineno}; weights merged")
            weight_of[key] += w
        else:
            weight_of[key] = w
            order.append(key)
    return Graph(labels, [(u, v, weight_of[(u, v)]) for u, v in order])


def edge_list_text(g: Graph) -> str:
    """Emit a graph as edge-list text that load_edge_list reads back."""
    lines = []
    unit = g.unit_weighted
    for lid, (u, v) in enumerate(g.link_ends):
        pair = f"{g.labels[u]} {g.labels[v]}"
        lines.append(pair if unit else f"{pair} {g.link_weights[lid]:.12g}")
    return "\n".join(lines) + "\n"


def induced_links(g: Graph, nodes) -> set[int]:
    """Ids of every link with both endpoints in the node set (the maximal link set)."""
    member = set(nodes)
    out = set()
    for i in member:
        for j, _, lid in g.adj[i]:
            if j > i and j in member:
                out.add(lid)
    return out


def induced_nodes(g: Graph, links) -> set[int]:
    """Union of endpoints of the given link ids."""
    out = set()
    for lid in links:
        u, v = g.link_ends[lid]
        out.add(u)
        out.add(v)
    return out


def neighbors_of_set(g: Graph, nodes) -> set[int]:
    """Nodes outside the set adjacent to at least one member."""
    member = set(nodes)
    out = set()
    for i in member:
        for j, _, _ in g.adj[i]:
            if j not in member:
                out.add(j)
    return out


def is_connected(g: Graph, nodes) -> bool:
    """True iff the induced subgraph is connected; empty sets count as not connected."""
    member = set(nodes)
    if not member:
        return False
    start = next(iter(member))
    seen = {start}
    stack = [start]
    while stack:
        i = stack.pop()
        for j, _, _ in g.adj[i]:
            if j in member and j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == len(member)


def boundary_nodes(g: Graph, nodes) -> set[int]:
    """Members with at least one link leaving the set."""
    member = set(nodes)
    out = set()
    for i in member:
        if any(j not in member for j, _, _ in g.adj[i]):
            out.add(i)
    return out


def connected_components(g: Graph) -> list[set[int]]:
    """Connected components as node-index sets, ordered by smallest member."""
    seen = [False] * g.n
    comps = []
    for start in range(g.n):
        if seen[start]:
            continue
        comp = {start}
        seen[start] = True
        stack = [start]
        while stack:
            i = stack.pop()
            for j, _, _ in g.adj[i]:
                if not seen[j]:
                    seen[j] = True
                    comp.add(j)
                    stack.append(j)
        comps.append(comp)
    return comps
