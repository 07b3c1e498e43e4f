"""The colored interaction graph and its analytics.

Targets are nodes; each unordered pair of targets is an edge that experts
color with a score on the 7-point scale from -3 (cancelling) to +3
(indivisible). On top of an immutable :class:`GraphSnapshot` this module
provides pair enumeration, score classification, summary statistics,
extraction of "ugly" (negatively interacting) and "beautiful" (exclusively
positive) targets, ranking by negative interactions, acyclic orientation,
topological sort, and a linear-time longest positive path.

All operations are pure functions over the snapshot; snapshots can be
shared freely across threads.
"""

from __future__ import annotations

import enum
import heapq
import random
from dataclasses import dataclass, field
from datetime import datetime
from typing import Iterable, Mapping, Sequence

from .catalog import Target, TargetCode

SCORE_MIN = -3
SCORE_MAX = 3

SCORE_LABELS = {
    -3: "cancelling",
    -2: "counteracting",
    -1: "constraining",
    0: "consistent",
    1: "enabling",
    2: "reinforcing",
    3: "indivisible",
}


class GraphError(ValueError):
    """Raised for malformed graph inputs."""


class CycleError(GraphError):
    """Raised when a supposed DAG turns out to contain a cycle."""


def validate_score(value: int) -> int:
    """Check a 7-point scale value, returning it unchanged."""
    if isinstance(value, bool) or not isinstance(value, int):
        raise GraphError(f"score must be an integer, got {value!r}")
    if not SCORE_MIN <= value <= SCORE_MAX:
        raise GraphError(f"score must be in [{SCORE_MIN}, {SCORE_MAX}], got {value}")
    return value


def score_label(value: int) -> str:
    """Scale label for a score, e.g. -3 -> "cancelling"."""
    return SCORE_LABELS[validate_score(value)]


class EdgeClass(enum.Enum):
    """Classification of one interaction by its score."""

    POSITIVE = "positive"
    NEGATIVE = "negative"
    NEUTRAL = "neutral"
    UNCOLORED = "uncolored"


class BeautifulPolicy(enum.Enum):
    """Which colored incident edges a beautiful target may have.

    STRICT_POSITIVE requires every colored incident edge to score >= +1;
    NON_NEGATIVE also admits score-0 edges.
    """

    STRICT_POSITIVE = "strict"
    NON_NEGATIVE = "nonnegative"

    @property
    def threshold(self) -> int:
        return 1 if self is BeautifulPolicy.STRICT_POSITIVE else 0

    @classmethod
    def parse(cls, text: str) -> "BeautifulPolicy":
        for policy in cls:
            if policy.value == text:
                return policy
        raise GraphError(f"unknown policy {text!r}; expected one of "
                         f"{[p.value for p in cls]}")


@dataclass(frozen=True, order=True)
class PairKey:
    """An unordered pair of distinct targets in canonical (lo < hi) form."""

    lo: TargetCode
    hi: TargetCode

    def __post_init__(self) -> None:
        if self.lo == self.hi:
            raise GraphError(f"self-loop pair {self.lo}")
        if not self.lo < self.hi:
            raise GraphError(f"pair ({self.lo}, {self.hi}) is not in canonical order")

    @classmethod
    def of(cls, a: TargetCode, b: TargetCode) -> "PairKey":
        """Build the canonical key for {a, b} regardless of argument order."""
        if a == b:
            raise GraphError(f"self-loop pair {a}")
        return cls(a, b) if a < b else cls(b, a)

    def __str__(self) -> str:
        return f"{self.lo}|{self.hi}"

    def __contains__(self, code: TargetCode) -> bool:
        return code == self.lo or code == self.hi

    def other(self, code: TargetCode) -> TargetCode:
        if code == self.lo:
            return self.hi
        if code == self.hi:
            return self.lo
        raise GraphError(f"{code} is not an endpoint of {self}")


@dataclass(frozen=True)
class Interaction:
    """One edge. Uncolored until scored; immutable once colored.

    A negative score requires both a non-empty explanation and a non-empty
    mitigation. Uncolored interactions carry no score, scorer or timestamp.
    """

    key: PairKey
    score: int | None = None
    explanation: str | None = None
    mitigation: str | None = None
    scorer: str | None = None
    scored_at: datetime | None = None

    def __post_init__(self) -> None:
        if self.score is None:
            if self.scorer is not None or self.scored_at is not None:
                raise GraphError(f"uncolored interaction {self.key} cannot carry scorer or timestamp")
            return
        validate_score(self.score)
        if self.score < 0:
            if not (self.explanation or "").strip() or not (self.mitigation or "").strip():
                raise GraphError(
                    f"negative interaction {self.key} requires a non-empty "
                    "explanation and mitigation"
                )

    @property
    def colored(self) -> bool:
        return self.score is not None


def classify_score(score: int | None) -> EdgeClass:
    """Classify a raw score (None meaning uncolored)."""
    if score is None:
        return EdgeClass.UNCOLORED
    validate_score(score)
    if score > 0:
        return EdgeClass.POSITIVE
    if score < 0:
        return EdgeClass.NEGATIVE
    return EdgeClass.NEUTRAL


def classify(interaction: Interaction) -> EdgeClass:
    """Classify an interaction as positive, negative, neutral or uncolored."""
    return classify_score(interaction.score)


@dataclass(frozen=True)
class GraphSnapshot:
    """Immutable view of the interaction graph.

    ``interactions`` holds at most one entry per pair; pairs without an
    entry (or with an uncolored entry) count as uncolored. Every endpoint
    must be a catalog target of the snapshot.
    """

    targets: tuple[Target, ...]
    interactions: Mapping[PairKey, Interaction]

    def __post_init__(self) -> None:
        codes = set()
        for target in self.targets:
            if target.code in codes:
                raise GraphError(f"duplicate target {target.code} in snapshot")
            codes.add(target.code)
        for key, interaction in self.interactions.items():
            if interaction.key != key:
                raise GraphError(f"interaction stored under wrong key: {key} != {interaction.key}")
            if key.lo not in codes or key.hi not in codes:
                raise GraphError(f"interaction {key} references a target outside the snapshot")

    @classmethod
    def build(cls, targets: Iterable[Target], interactions: Iterable[Interaction] = ()) -> "GraphSnapshot":
        mapping: dict[PairKey, Interaction] = {}
        for interaction in interactions:
            if interaction.key in mapping:
                raise GraphError(f"duplicate interaction for pair {interaction.key}")
            mapping[interaction.key] = interaction
        return cls(targets=tuple(targets), interactions=mapping)

    @property
    def codes(self) -> tuple[TargetCode, ...]:
        return tuple(t.code for t in self.targets)

    def colored(self) -> list[Interaction]:
        """All colored interactions, in canonical pair order."""
        return sorted((i for i in self.interactions.values() if i.colored), key=lambda i: i.key)


def all_pairs(targets: Sequence[Target] | Sequence[TargetCode]) -> set[PairKey]:
    """Every unordered pair of distinct targets, exactly once.

    For n targets this yields n*(n-1)/2 pairs; the full catalog of 169
    targets yields 14,196.
    """
    codes: list[TargetCode] = [t.code if isinstance(t, Target) else t for t in targets]
    if len(set(codes)) != len(codes):
        raise GraphError("duplicate target codes in input")
    ordered = sorted(codes)
    return {PairKey(a, b) for i, a in enumerate(ordered) for b in ordered[i + 1:]}


@dataclass(frozen=True)
class SummaryStats:
    """Edge counts over a snapshot, partitioned by classification."""

    total_pairs: int
    colored: int
    positive: int
    negative: int
    neutral: int
    uncolored: int
    negative_share: float

    @property
    def negative_percent(self) -> float:
        """Negative share of colored edges, in percent, rounded to 2 dp."""
        return round(self.negative_share * 100, 2)


def summarize(graph: GraphSnapshot) -> SummaryStats:
    """Count edges per class; the partition identities hold by construction."""
    n = len(graph.targets)
    total = n * (n - 1) // 2
    positive = negative = neutral = 0
    for interaction in graph.interactions.values():
        edge_class = classify(interaction)
        if edge_class is EdgeClass.POSITIVE:
            positive += 1
        elif edge_class is EdgeClass.NEGATIVE:
            negative += 1
        elif edge_class is EdgeClass.NEUTRAL:
            neutral += 1
    colored = positive + negative + neutral
    return SummaryStats(
        total_pairs=total,
        colored=colored,
        positive=positive,
        negative=negative,
        neutral=neutral,
        uncolored=total - colored,
        negative_share=(negative / colored) if colored else 0.0,
    )


def ugly_edges(graph: GraphSnapshot) -> list[Interaction]:
    """All negative interactions, most negative first, ties in pair order."""
    rows = [i for i in graph.interactions.values() if classify(i) is EdgeClass.NEGATIVE]
    rows.sort(key=lambda i: (i.score, i.key))
    return rows


def ugly_targets(graph: GraphSnapshot) -> set[TargetCode]:
    """Targets incident to at least one negative interaction."""
    out: set[TargetCode] = set()
    for interaction in ugly_edges(graph):
        out.add(interaction.key.lo)
        out.add(interaction.key.hi)
    return out


def _incident_scores(graph: GraphSnapshot) -> dict[TargetCode, list[int]]:
    scores: dict[TargetCode, list[int]] = {}
    for interaction in graph.interactions.values():
        if not interaction.colored:
            continue
        assert interaction.score is not None
        scores.setdefault(interaction.key.lo, []).append(interaction.score)
        scores.setdefault(interaction.key.hi, []).append(interaction.score)
    return scores


def beautiful_targets(
    graph: GraphSnapshot,
    policy: BeautifulPolicy = BeautifulPolicy.STRICT_POSITIVE,
) -> set[TargetCode]:
    """Targets whose colored incident edges all pass the policy threshold.

    A beautiful target needs at least one colored incident edge; uncolored
    incident edges are ignored.
    """
    return {
        code
        for code, scores in _incident_scores(graph).items()
        if scores and min(scores) >= policy.threshold
    }


def beautiful_subgraph(
    graph: GraphSnapshot,
    policy: BeautifulPolicy = BeautifulPolicy.STRICT_POSITIVE,
) -> GraphSnapshot:
    """Induced subgraph on the beautiful targets.

    Keeps only colored edges passing the policy threshold; beautiful
    targets whose neighbors were excluded stay as isolated nodes.
    """
    keep = beautiful_targets(graph, policy)
    targets = tuple(t for t in graph.targets if t.code in keep)
    kept = {
        key: interaction
        for key, interaction in graph.interactions.items()
        if interaction.colored
        and interaction.score is not None
        and interaction.score >= policy.threshold
        and key.lo in keep
        and key.hi in keep
    }
    return GraphSnapshot(targets=targets, interactions=kept)


def rank_by_negative(graph: GraphSnapshot) -> list[tuple[TargetCode, int]]:
    """Targets ranked by number of negative interactions, descending.

    Only targets with at least one negative interaction appear; ties are
    broken by canonical code order.
    """
    counts: dict[TargetCode, int] = {}
    for interaction in ugly_edges(graph):
        counts[interaction.key.lo] = counts.get(interaction.key.lo, 0) + 1
        counts[interaction.key.hi] = counts.get(interaction.key.hi, 0) + 1
    return sorted(counts.items(), key=lambda item: (-item[1], item[0]))


@dataclass(frozen=True)
class OrientedEdge:
    """One directed edge of a Dag, carrying its originating interaction."""

    src: TargetCode
    dst: TargetCode
    interaction: Interaction


@dataclass(frozen=True)
class Dag:
    """Acyclic orientation of a snapshot's edge set."""

    nodes: tuple[TargetCode, ...]
    edges: tuple[OrientedEdge, ...]

    def successors(self) -> dict[TargetCode, list[TargetCode]]:
        adjacency: dict[TargetCode, list[TargetCode]] = {node: [] for node in self.nodes}
        for edge in self.edges:
            adjacency[edge.src].append(edge.dst)
        return adjacency


def orient_acyclic(graph: GraphSnapshot, order: Sequence[TargetCode] | None = None) -> Dag:
    """Orient every undirected edge along a total node order.

    Each edge {u, v} becomes u -> v iff u precedes v in ``order`` (default:
    canonical code order), so the result is acyclic by construction.

    Raises:
        GraphError: the order is missing a node of the graph.
    """
    codes = graph.codes
    if order is None:
        order = sorted(codes)
    position = {code: i for i, code in enumerate(order)}
    missing = [code for code in codes if code not in position]
    if missing:
        raise GraphError(f"order is missing nodes: {[str(c) for c in sorted(missing)]}")
    edges = []
    for key in sorted(graph.interactions):
        interaction = graph.interactions[key]
        if position[key.lo] < position[key.hi]:
            edges.append(OrientedEdge(key.lo, key.hi, interaction))
        else:
            edges.append(OrientedEdge(key.hi, key.lo, interaction))
    return Dag(nodes=tuple(sorted(codes)), edges=tuple(edges))


def topological_sort(dag: Dag) -> list[TargetCode]:
    """Kahn's algorithm with deterministic ties (canonical code order).

    Raises:
        CycleError: the Dag invariant is broken and a cycle exists.
    """
    adjacency = dag.successors()
    indegree = {node: 0 for node in dag.nodes}
    for edge in dag.edges:
        indegree[edge.dst] += 1
    ready = [node for node in dag.nodes if indegree[node] == 0]
    heapq.heapify(ready)
    result: list[TargetCode] = []
    while ready:
        node = heapq.heappop(ready)
        result.append(node)
        for succ in adjacency[node]:
            indegree[succ] -= 1
            if indegree[succ] == 0:
                heapq.heappush(ready, succ)
    if len(result) != len(dag.nodes):
        stuck = sorted(node for node, deg in indegree.items() if deg > 0)
        raise CycleError(f"cycle detected among {[str(n) for n in stuck]}")
    return result


@dataclass(frozen=True)
class PathResult:
    """A simple path, measured in edge count (nodes - 1, or 0 when empty)."""

    nodes: tuple[TargetCode, ...] = ()
    edge_count: int = field(default=0)

    def __post_init__(self) -> None:
        if len(set(self.nodes)) != len(self.nodes):
            raise GraphError("path nodes must be distinct")
        expected = max(len(self.nodes) - 1, 0)
        if self.edge_count != expected:
            raise GraphError(f"edge_count {self.edge_count} does not match {len(self.nodes)} nodes")


def _longest_path_in_dag(dag: Dag) -> PathResult:
    """Single-pass DP over the topological order, maximizing edge count."""
    order = topological_sort(dag)
    adjacency = dag.successors()
    length: dict[TargetCode, int] = {node: 0 for node in order}
    predecessor: dict[TargetCode, TargetCode | None] = {node: None for node in order}
    for node in order:
        for succ in adjacency[node]:
            if length[node] + 1 > length[succ]:
                length[succ] = length[node] + 1
                predecessor[succ] = node
    if not order:
        return PathResult()
    # Best end node; ties resolved toward the canonically smallest code.
    end = min(length, key=lambda node: (-length[node], node))
    path = [end]
    while predecessor[path[-1]] is not None:
        path.append(predecessor[path[-1]])  # type: ignore[arg-type]
    path.reverse()
    return PathResult(nodes=tuple(path), edge_count=length[end])


def longest_positive_path(
    graph: GraphSnapshot,
    policy: BeautifulPolicy = BeautifulPolicy.STRICT_POSITIVE,
    restarts: int = 1,
    seed: int = 0,
) -> PathResult:
    """Longest path through exclusively positive interactions.

    Builds the beautiful subgraph, orients it acyclically along the
    canonical code order, and runs the linear longest-path DP over the
    topological order. One orientation's optimum is only a lower bound for
    the undirected longest path, so ``restarts`` > 1 re-runs with that many
    total orders (the first always canonical, the rest seeded shuffles)
    and keeps the best result. Runs in O(V + E) per restart.
    """
    if restarts < 1:
        raise GraphError(f"restarts must be >= 1, got {restarts}")
    subgraph = beautiful_subgraph(graph, policy)
    if not subgraph.targets:
        return PathResult()
    best = _longest_path_in_dag(orient_acyclic(subgraph))
    rng = random.Random(seed)
    for _ in range(restarts - 1):
        order = sorted(subgraph.codes)
        rng.shuffle(order)
        candidate = _longest_path_in_dag(orient_acyclic(subgraph, order))
        if candidate.edge_count > best.edge_count:
            best = candidate
    return best


def export_graph(graph: GraphSnapshot, include_unscored_pairs: bool = False) -> dict:
    """JSON-ready export: {nodes: [{code, goal, label}], edges: [...]}.

    Edges carry the raw score (null when uncolored) and the class name.
    With ``include_unscored_pairs`` every pair of snapshot targets is
    emitted, unscored ones as uncolored edges (the public progress view).
    """
    nodes = [
        {"code": str(t.code), "goal": t.code.goal, "label": t.description}
        for t in sorted(graph.targets, key=lambda t: t.code.sort_key)
    ]
    keys: Iterable[PairKey]
    if include_unscored_pairs:
        keys = sorted(all_pairs(graph.targets))
    else:
        keys = sorted(graph.interactions)
    edges = []
    for key in keys:
        interaction = graph.interactions.get(key)
        score = interaction.score if interaction is not None else None
        edges.append(
            {
                "source": str(key.lo),
                "target": str(key.hi),
                "score": score,
                "class": classify_score(score).value,
            }
        )
    return {"nodes": nodes, "edges": edges}
