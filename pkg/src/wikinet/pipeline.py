"""The full ranking pipeline behind both the CLI and the HTTP service.

A validated RunConfig drives: record collection, graph construction, the four
ranking layers, weighted combination, threshold filtering, and centrality
reporting. Both entry points call the same functions, so their documents are
byte-identical for identical configurations.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from datetime import datetime, timedelta, timezone

from .centrality import (
    CentralityReport,
    Direction,
    FilterOrder,
    betweenness_centrality,
    degree_centrality,
)
from .errors import InvalidConfig
from .graph import GraphScope, Layer, NodeId, NodeKind, SemanticGraph, build_graph, export_graph
from .ranking import (
    LayerWeights,
    apply_threshold,
    build_bidirectional_layer,
    combine_layers,
    rank_nodes,
    score_importance,
    score_quality,
    score_urls,
)
from .records import TimeWindow, parse_timestamp
from .source import FixtureBackend, MediaWikiBackend, Source
from .store import Store
from .timeline import SnapshotConfig, build_series, collect_records, export_series
from .wikitext import normalize_title

GRAPH_SCHEMA = "wikinet.graph/1"
DEFAULT_API_URL = "https://en.wikipedia.org/w/api.php"


@dataclass(frozen=True)
class RunConfig:
    """Everything one build needs; validated before any fetch happens."""

    seeds: tuple[str, ...] = ()
    weights: LayerWeights = field(default_factory=LayerWeights)
    threshold: float = 0.0
    max_nodes: int = 50
    window_days: int = 14
    window_end: datetime | None = None
    frontier_depth: int = 1
    include_web: bool = True
    filter_order: FilterOrder = FilterOrder.DISTANCE_FIRST
    backend: str = "live"  # "live" or a fixture corpus path
    api_url: str = DEFAULT_API_URL

    def validated(self) -> "RunConfig":
        if not self.seeds:
            raise InvalidConfig("at least one seed is required")
        try:
            seeds = tuple(normalize_title(s) for s in self.seeds)
        except Exception as exc:
            raise InvalidConfig(f"bad seed title: {exc}") from exc
        if self.max_nodes < 1:
            raise InvalidConfig("max_nodes must be positive")
        if self.window_days < 1:
            raise InvalidConfig("window_days must be positive")
        if self.frontier_depth not in (1, 2):
            raise InvalidConfig("frontier_depth must be 1 or 2")
        if not isinstance(self.threshold, (int, float)):
            raise InvalidConfig("threshold must be a number")
        return replace(self, seeds=seeds)

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        """Build from a configuration document; unknown keys are rejected."""
        known = {
            "seeds",
            "weights",
            "threshold",
            "max_nodes",
            "window_days",
            "window_end",
            "frontier_depth",
            "include_web",
            "filter_order",
            "backend",
            "api_url",
        }
        unknown = set(data) - known
        if unknown:
            raise InvalidConfig(f"unknown config keys: {sorted(unknown)}")
        kwargs = dict(data)
        try:
            if "weights" in kwargs:
                w = kwargs["weights"]
                if isinstance(w, str):
                    kwargs["weights"] = LayerWeights.parse(w)
                elif isinstance(w, (list, tuple)):
                    kwargs["weights"] = LayerWeights(*(float(x) for x in w))
                else:
                    kwargs["weights"] = LayerWeights(**{k: float(v) for k, v in w.items()})
            if "window_end" in kwargs and kwargs["window_end"] is not None:
                kwargs["window_end"] = parse_timestamp(kwargs["window_end"])
            if "filter_order" in kwargs:
                kwargs["filter_order"] = FilterOrder(kwargs["filter_order"])
            if "seeds" in kwargs:
                kwargs["seeds"] = tuple(kwargs["seeds"])
        except InvalidConfig:
            raise
        except Exception as exc:
            raise InvalidConfig(f"bad config value: {exc}") from exc
        return cls(**kwargs).validated()


def make_source(config: RunConfig, store: Store | None = None) -> Source:
    if config.backend == "live":
        backend = MediaWikiBackend(config.api_url)
    else:
        backend = FixtureBackend(config.backend)
    return Source(backend, store=store)


def actuality_window(config: RunConfig) -> TimeWindow:
    end = config.window_end or datetime.now(timezone.utc)
    return TimeWindow(start=end - timedelta(days=config.window_days), end=end)


@dataclass(frozen=True)
class BuildResult:
    graph: SemanticGraph
    combined: dict[NodeId, float]
    ranking: list[tuple[NodeId, float]]
    degree: CentralityReport
    betweenness: CentralityReport
    export: dict


def score_graph(graph: SemanticGraph, records, source: Source, window: TimeWindow) -> SemanticGraph:
    """Attach all four ranking layers: mutual-pair filtering plus scores for
    articles, and per-layer sums for the URLs they cite."""
    graph = build_bidirectional_layer(graph)
    by_title = {r.title: r for r in records if NodeId(NodeKind.ARTICLE, r.title) in graph}

    quality = {t: float(score_quality(r.assessment)) for t, r in by_title.items()}
    importance = {t: float(score_importance(r.assessment)) for t, r in by_title.items()}
    actuality = {
        t: float(source.fetch_revision_count(t, window)) for t in by_title
    }
    bidirectional = {
        t: graph.score(NodeId(NodeKind.ARTICLE, t), Layer.BIDIRECTIONAL) for t in by_title
    }

    for layer, article_scores in (
        (Layer.QUALITY, quality),
        (Layer.IMPORTANCE, importance),
        (Layer.ACTUALITY, actuality),
        (Layer.BIDIRECTIONAL, bidirectional),
    ):
        values = {NodeId(NodeKind.ARTICLE, t): v for t, v in article_scores.items()}
        for url, total in score_urls(graph, article_scores).items():
            values[NodeId(NodeKind.WEB, url)] = total
        graph = graph.with_scores(layer, values)
    return graph


def run_build(source: Source, config: RunConfig) -> BuildResult:
    config = config.validated()
    records = collect_records(source, list(config.seeds), config.frontier_depth)
    scope = GraphScope.INCLUDE_WEB if config.include_web else GraphScope.CANDIDATES_ONLY
    graph = build_graph(records, scope)
    graph = score_graph(graph, records, source, actuality_window(config))

    combined = combine_layers(graph, config.weights)
    filtered = apply_threshold(graph, combined, config.threshold)
    combined = {node: combined[node] for node in filtered.nodes}

    degree = degree_centrality(filtered, Direction.UNDIRECTED)
    betweenness = betweenness_centrality(filtered, Direction.UNDIRECTED)
    export = export_graph(
        filtered,
        extra_scores={"degree": degree.values, "betweenness": betweenness.values},
    )
    return BuildResult(
        graph=filtered,
        combined=combined,
        ranking=rank_nodes(filtered, combined),
        degree=degree,
        betweenness=betweenness,
        export=export,
    )


def run_series(source: Source, config: RunConfig, timestamps: list[datetime]) -> dict:
    config = config.validated()
    cfg = SnapshotConfig(
        max_nodes=config.max_nodes,
        frontier_depth=config.frontier_depth,
        include_web=config.include_web,
        order=config.filter_order,
    )
    series = build_series(source, list(config.seeds), timestamps, cfg)
    return export_series(series)


def canonical_json(document: dict) -> str:
    """The one serialization used for every exported document, so re-exports
    and the CLI/HTTP paths are byte-identical."""
    return json.dumps(document, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
