"""Greedy search for local minima of the normalised node cut.

Each run starts from one seed link and alternates three phases until the
seed's whole component is covered:

  descent  add the external neighbor giving the largest cut reduction, while
           any reduction exists;
  pruning  once no addition helps, repeatedly remove the member whose
           exclusion most reduces the cut, skipping removals that would
           disconnect the subgraph or leave it without links; if pruning
           freed up a downhill addition, descend again;
  escape   at a local minimum (recorded), add the neighbor with the smallest
           cut increase, repeating until some addition is downhill again.

Ties within MOVE_TOL are broken by smallest node label (deterministic policy)
or uniformly at random (random policy). Revisiting an already-recorded
minimum escalates the escape move to the next-ranked candidate, and a phase
budget of 10 * n aborts a run that cannot make progress.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

from .errors import (
    DisconnectedGraph,
    NodeCutError,
    NoFrontier,
    NoLowerCommunity,
    OscillationError,
)
from .graph import (
    Graph,
    boundary_nodes,
    connected_components,
    induced_links,
    is_connected,
    label_sort_key,
)
from .landscape import MOVE_TOL, stability
from .psi import SubgraphState, psi

__all__ = [
    "TieBreakPolicy",
    "Community",
    "Trajectory",
    "DetectionResult",
    "best_addition",
    "prune",
    "escape_step",
    "run_from_seed",
    "run_all_seeds",
    "merge_trajectories",
]


@dataclass(frozen=True)
class TieBreakPolicy:
    """How tied moves are resolved; deterministic mode ignores rng_seed."""

    mode: str = "deterministic"
    rng_seed: int = 0

    def __post_init__(self):
        if self.mode not in ("deterministic", "random"):
            raise ValueError(f"unknown tie-break mode {self.mode!r}")

    def rng_for(self, link_id: int) -> random.Random | None:
        """Per-seed-link generator, independent of run scheduling."""
        if self.mode == "deterministic":
            return None
        return random.Random(f"{self.rng_seed}:{link_id}")


@dataclass(frozen=True)
class Community:
    """A recorded local minimum: node set plus derived facts."""

    nodes: frozenset[int]
    links: frozenset[int]
    psi: float
    boundary: frozenset[int]
    seed_count: int = 0
    stability: float | None = None


@dataclass
class Trajectory:
    """Move log of one seed run.

    steps holds (step, action, node, psi, size) with action one of
    "add", "remove", "record-minimum"; node is None on record rows.
    minima lists recorded node sets in order of first discovery.
    """

    link_id: int
    seed: tuple[int, int]
    steps: list[tuple[int, str, int | None, float, int]]
    minima: list[frozenset[int]]
    final_nodes: frozenset[int]
    final_psi: float
    covers_graph: bool


@dataclass
class DetectionResult:
    """Aggregated outcome of running every seed link.

    failures maps link ids of aborted runs to their error message; the other
    seeds' results are unaffected.
    """

    communities: list[Community]
    trajectories: list[Trajectory]
    histogram: dict[int, int] = field(default_factory=dict)
    failures: dict[int, str] = field(default_factory=dict)


def _label_key(g: Graph, i: int):
    return label_sort_key(g.labels[i])


def _choose(g: Graph, cands: list[tuple[float, int]], rng: random.Random | None) -> tuple[float, int]:
    """Best (delta, node) candidate, ties within MOVE_TOL broken per policy."""
    best = min(d for d, _ in cands)
    tied = [c for c in cands if c[0] <= best + MOVE_TOL]
    if rng is not None and len(tied) > 1:
        return tied[rng.randrange(len(tied))]
    return min(tied, key=lambda c: _label_key(g, c[1]))


def _addition_candidates(state: SubgraphState) -> list[tuple[float, int]]:
    # sorted frontier: candidate order must not depend on set iteration order,
    # or random tie-breaking would not be reproducible
    value = state.psi
    return [(state.psi_after_add(x) - value, x) for x in sorted(state.frontier)]


def best_addition(
    state: SubgraphState, rng: random.Random | None = None
) -> tuple[int, float]:
    """External neighbor whose addition changes the cut the least (most downhill first)."""
    if not state.frontier:
        raise NoFrontier("subgraph already covers its component")
    d, x = _choose(state.g, _addition_candidates(state), rng)
    return x, d


def _removal_order(state: SubgraphState, rng: random.Random | None) -> list[tuple[float, int]]:
    """Removal candidates most-downhill first; ties shuffled or label-ordered."""
    value = state.psi
    cands = []
    for x in sorted(state.members):
        after = state.psi_after_remove(x)
        if after is not None:
            cands.append((after - value, x))
    if rng is None:
        cands.sort(key=lambda c: (c[0], _label_key(state.g, c[1])))
        return cands
    cands.sort(key=lambda c: c[0])  # stable: keeps index order inside tie groups
    ordered: list[tuple[float, int]] = []
    i = 0
    while i < len(cands):
        j = i
        while j < len(cands) and cands[j][0] <= cands[i][0] + MOVE_TOL:
            j += 1
        group = cands[i:j]
        rng.shuffle(group)
        ordered.extend(group)
        i = j
    return ordered


def prune(
    state: SubgraphState,
    rng: random.Random | None = None,
    on_move=None,
) -> list[int]:
    """Remove members while some connectivity-preserving removal is downhill.

    Call only when no addition is downhill. Returns removed nodes in order.
    """
    removed = []
    while True:
        choice = None
        for delta, x in _removal_order(state, rng):
            if delta >= -MOVE_TOL:
                break
            if is_connected(state.g, state.members - {x}):
                choice = x
                break
        if choice is None:
            return removed
        state.apply_remove(choice)
        removed.append(choice)
        if on_move is not None:
            on_move("remove", choice)


def escape_step(state: SubgraphState, rng: random.Random | None = None, rank: int = 0) -> int:
    """Add the neighbor with the smallest cut increase; rank picks worse ties on revisits."""
    if not state.frontier:
        raise NoFrontier("subgraph already covers its component")
    if rank == 0:
        x, _ = best_addition(state, rng)
    else:
        cands = sorted(
            _addition_candidates(state),
            key=lambda c: (c[0], _label_key(state.g, c[1])),
        )
        x = cands[min(rank, len(cands) - 1)][1]
    state.apply_add(x)
    return x


def _has_downhill_addition(state: SubgraphState) -> bool:
    return bool(state.frontier) and min(d for d, _ in _addition_candidates(state)) < -MOVE_TOL


def run_from_seed(g: Graph, link_id: int, policy: TieBreakPolicy | None = None) -> Trajectory:
    """Run the full descent/prune/escape search from one seed link."""
    policy = policy or TieBreakPolicy()
    rng = policy.rng_for(link_id)
    u, v = g.link_ends[link_id]
    state = SubgraphState(g, {u, v})
    steps: list[tuple[int, str, int | None, float, int]] = []
    minima: list[frozenset[int]] = []
    visits: dict[frozenset[int], int] = {}
    step_no = 0
    phases = 0
    max_phases = max(10 * g.n, 100)

    def log(action, node):
        nonlocal step_no
        step_no += 1
        steps.append((step_no, action, node, state.psi, len(state.members)))

    while True:
        # settle into a local minimum: descend, prune, re-descend
        while True:
            while _has_downhill_addition(state):
                x, _ = best_addition(state, rng)
                state.apply_add(x)
                log("add", x)
            if not prune(state, rng, on_move=log):
                break
            if not _has_downhill_addition(state):
                break
        exact = state.recompute()  # recorded values never carry incremental drift
        key = state.nodes()
        seen = visits.get(key, 0)
        visits[key] = seen + 1
        if seen == 0 and exact > 0.0:
            minima.append(key)
            log("record-minimum", None)
        if not state.frontier:
            return Trajectory(
                link_id=link_id,
                seed=(u, v),
                steps=steps,
                minima=minima,
                final_nodes=key,
                final_psi=exact,
                covers_graph=len(key) == g.n,
            )
        # climb out of the hollow, then fall into the next one
        log("add", escape_step(state, rng, rank=seen))
        while state.frontier and not _has_downhill_addition(state):
            log("add", escape_step(state, rng))
        phases += 1
        if phases > max_phases:
            raise OscillationError(
                f"seed {g.link_label_pair(link_id)}: no progress after {phases} phases"
            )


_WORKER: dict = {}


def _init_worker(g: Graph, policy: TieBreakPolicy):
    _WORKER["g"] = g
    _WORKER["policy"] = policy


def _run_link(link_id: int) -> Trajectory | tuple[int, str]:
    # a failed seed must not abort the sweep; report it alongside the rest
    try:
        return run_from_seed(_WORKER["g"], link_id, _WORKER["policy"])
    except NodeCutError as exc:
        return (link_id, str(exc))


def _community_sort_key(g: Graph, c: Community):
    return (c.psi, -len(c.nodes), sorted(label_sort_key(g.labels[i]) for i in c.nodes))


def run_all_seeds(
    g: Graph,
    policy: TieBreakPolicy | None = None,
    jobs: int = 1,
    allow_disconnected: bool = False,
) -> DetectionResult:
    """Run every link as a seed and merge the recorded minima.

    Minima are deduplicated by exact node set; seed_count is the number of
    runs that recorded each one. The whole-graph ground state is never a
    community. Result order and content do not depend on jobs.
    """
    policy = policy or TieBreakPolicy()
    if g.n and len(connected_components(g)) > 1 and not allow_disconnected:
        raise DisconnectedGraph(
            "input graph is disconnected; runs would be confined to seed components"
        )
    if jobs > 1 and g.m > 1:
        with ProcessPoolExecutor(
            max_workers=jobs, initializer=_init_worker, initargs=(g, policy)
        ) as pool:
            outcomes = list(
                pool.map(_run_link, range(g.m), chunksize=max(1, g.m // (4 * jobs)))
            )
    else:
        _init_worker(g, policy)
        outcomes = [_run_link(lid) for lid in range(g.m)]
    trajectories = [o for o in outcomes if isinstance(o, Trajectory)]
    failures = dict(o for o in outcomes if not isinstance(o, Trajectory))
    result = merge_trajectories(g, trajectories)
    result.failures = failures
    return result


def merge_trajectories(g: Graph, trajectories: list[Trajectory]) -> DetectionResult:
    """Deduplicate recorded minima by node set and derive community records."""
    counts: dict[frozenset[int], int] = {}
    for traj in trajectories:
        for nodes in traj.minima:
            counts[nodes] = counts.get(nodes, 0) + 1

    communities = []
    for nodes, count in counts.items():
        communities.append(
            Community(
                nodes=nodes,
                links=frozenset(induced_links(g, nodes)),
                psi=psi(g, nodes),
                boundary=frozenset(boundary_nodes(g, nodes)),
                seed_count=count,
            )
        )
    communities.sort(key=lambda c: _community_sort_key(g, c))
    pool_pairs = [(c.nodes, c.psi) for c in communities]
    with_stability = []
    for c in communities:
        try:
            s = stability(c.nodes, c.psi, pool_pairs)
        except NoLowerCommunity:
            s = None
        with_stability.append(replace(c, stability=s))

    histogram: dict[int, int] = {}
    for traj in trajectories:
        histogram[len(traj.minima)] = histogram.get(len(traj.minima), 0) + 1
    return DetectionResult(
        communities=with_stability, trajectories=trajectories, histogram=histogram
    )
