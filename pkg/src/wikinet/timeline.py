"""Temporal rebuilds: the filtered topic graph as of any timestamp, and
ordered snapshot series for animation.

Collection is two-step: gather records for the seeds plus their outlink
frontier as of the target time, then reduce with the map filter. Snapshots at
historical timestamps use historical link data wherever stored revisions
permit; assessment ratings are not versioned upstream, so the current rating
is reused and noted as a fidelity limit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime

from .centrality import FilterOrder, wikimap_filter
from .errors import ArticleNotFound, NoRevisionBefore, SeedMismatch, SeedNotFound, SnapshotBuildError
from .graph import Edge, GraphScope, NodeId, SemanticGraph, build_graph, export_graph
from .records import ArticleRecord, format_timestamp
from .source import Source
from .wikitext import normalize_title

SERIES_SCHEMA = "wikinet.series/1"


@dataclass(frozen=True)
class SnapshotConfig:
    max_nodes: int = 50
    frontier_depth: int = 1
    include_web: bool = False
    order: FilterOrder = FilterOrder.DISTANCE_FIRST

    def __post_init__(self):
        if self.max_nodes < 1:
            raise ValueError("max_nodes must be positive")
        if self.frontier_depth not in (1, 2):
            raise ValueError("frontier_depth must be 1 or 2")


@dataclass(frozen=True)
class Snapshot:
    at: datetime
    graph: SemanticGraph
    seed_titles: frozenset[str]


@dataclass(frozen=True)
class SnapshotSeries:
    snapshots: tuple[Snapshot, ...]
    seed_titles: frozenset[str]

    def __post_init__(self):
        if not self.snapshots:
            raise ValueError("series needs at least one snapshot")
        stamps = [s.at for s in self.snapshots]
        if any(b <= a for a, b in zip(stamps, stamps[1:])):
            raise ValueError("snapshot timestamps must be strictly increasing")


@dataclass(frozen=True)
class GraphDelta:
    nodes_added: frozenset[NodeId] = frozenset()
    nodes_removed: frozenset[NodeId] = frozenset()
    edges_added: frozenset[Edge] = field(default_factory=frozenset)
    edges_removed: frozenset[Edge] = field(default_factory=frozenset)

    @property
    def is_empty(self) -> bool:
        return not (self.nodes_added or self.nodes_removed or self.edges_added or self.edges_removed)


def collect_records(
    source: Source,
    seeds: list[str],
    depth: int = 1,
    as_of: datetime | None = None,
) -> list[ArticleRecord]:
    """Records for the seeds and their outlink frontier, as of a timestamp.

    Seeds must resolve; frontier articles that do not exist in the backend or
    had no revision yet are silently skipped (they were not part of the topic
    at that time).
    """
    titles = [normalize_title(t) for t in seeds]
    records: dict[str, ArticleRecord] = {}
    for title in titles:
        try:
            records[title] = source.fetch_article(title, as_of)
        except ArticleNotFound:
            raise SeedNotFound(title) from None

    frontier = list(records.values())
    for _ in range(depth):
        wanted = sorted(
            {target for record in frontier for target in record.outlinks} - records.keys()
        )
        source.prefetch(wanted)
        frontier = []
        for title in wanted:
            try:
                record = source.fetch_article(title, as_of)
            except (ArticleNotFound, NoRevisionBefore):
                continue
            records[title] = record
            frontier.append(record)
    return [records[title] for title in sorted(records)]


def build_snapshot(
    source: Source,
    seeds: list[str],
    at: datetime,
    cfg: SnapshotConfig = SnapshotConfig(),
) -> Snapshot:
    """The filtered topic graph as of ``at``."""
    records = collect_records(source, seeds, cfg.frontier_depth, as_of=at)
    scope = GraphScope.INCLUDE_WEB if cfg.include_web else GraphScope.CANDIDATES_ONLY
    graph = build_graph(records, scope)
    seed_titles = frozenset(normalize_title(t) for t in seeds)
    filtered = wikimap_filter(graph, seed_titles, cfg.max_nodes, cfg.order)
    return Snapshot(at=at, graph=filtered, seed_titles=seed_titles)


def build_series(
    source: Source,
    seeds: list[str],
    timestamps: list[datetime],
    cfg: SnapshotConfig = SnapshotConfig(),
) -> SnapshotSeries:
    """One snapshot per timestamp; the shared store deduplicates fetches, so a
    revision used by several snapshots is fetched once."""
    if not timestamps:
        raise ValueError("at least one timestamp is required")
    if any(b <= a for a, b in zip(timestamps, timestamps[1:])):
        raise ValueError("timestamps must be strictly increasing")
    snapshots = []
    for at in timestamps:
        try:
            snapshots.append(build_snapshot(source, seeds, at, cfg))
        except Exception as exc:
            raise SnapshotBuildError(at, exc) from exc
    seed_titles = frozenset(normalize_title(t) for t in seeds)
    return SnapshotSeries(snapshots=tuple(snapshots), seed_titles=seed_titles)


def diff_snapshots(a: Snapshot, b: Snapshot) -> GraphDelta:
    """Exact node and edge set differences between two snapshots of one topic."""
    if a.seed_titles != b.seed_titles:
        raise SeedMismatch(f"seed sets differ: {sorted(a.seed_titles)} vs {sorted(b.seed_titles)}")
    nodes_a, nodes_b = set(a.graph.nodes), set(b.graph.nodes)
    edges_a, edges_b = set(a.graph.edges), set(b.graph.edges)
    return GraphDelta(
        nodes_added=frozenset(nodes_b - nodes_a),
        nodes_removed=frozenset(nodes_a - nodes_b),
        edges_added=frozenset(edges_b - edges_a),
        edges_removed=frozenset(edges_a - edges_b),
    )


def export_series(series: SnapshotSeries) -> dict:
    """Series document for the browser animation: one frame per snapshot, node
    identifiers stable across frames so positions can be tweened, within-graph
    indegree included per node for radius scaling."""
    return {
        "schema": SERIES_SCHEMA,
        "seeds": sorted(series.seed_titles),
        "frames": [
            {"at": format_timestamp(snapshot.at), "graph": export_graph(snapshot.graph)}
            for snapshot in series.snapshots
        ],
    }
