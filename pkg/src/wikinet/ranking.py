"""Node scoring: the four ranking layers, their weighted combination, and the
score threshold filter.

Bidirectional scoring filters the link structure down to mutual pairs, the
strong-semantic-connection signal. Quality, importance and actuality are
node-score layers over the same link structure; URL nodes inherit each layer
as the sum over their citing articles. Combination min-max normalizes every
layer to [0, 1] first, since revision counts are unbounded while assessment
scores are not.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Mapping

from .errors import DegenerateLayerWarning
from .graph import Edge, Layer, NodeId, NodeKind, RANKING_LAYERS, SemanticGraph
from .records import (
    AssessmentImportance,
    AssessmentQuality,
    AssessmentRating,
    TimeWindow,
)

_QUALITY_SCORE = {m: i for i, m in enumerate(AssessmentQuality)}
_IMPORTANCE_SCORE = {m: i for i, m in enumerate(AssessmentImportance)}

_LINK = frozenset({Layer.LINK})
_MENTION = frozenset({Layer.MENTION})


@dataclass(frozen=True)
class LayerWeights:
    """Combination weights for the four ranking layers."""

    bidirectional: float = 1.0
    importance: float = 1.0
    quality: float = 1.0
    actuality: float = 1.0

    def __post_init__(self):
        values = self.as_dict().values()
        if any(w < 0 for w in values):
            raise ValueError("layer weights must be non-negative")
        if not any(w > 0 for w in values):
            raise ValueError("at least one layer weight must be positive")

    def as_dict(self) -> dict[Layer, float]:
        return {
            Layer.BIDIRECTIONAL: self.bidirectional,
            Layer.IMPORTANCE: self.importance,
            Layer.QUALITY: self.quality,
            Layer.ACTUALITY: self.actuality,
        }

    @classmethod
    def parse(cls, text: str) -> "LayerWeights":
        """Parse "bid,imp,qua,act" as used by the CLI."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 4:
            raise ValueError("weights must be four comma-separated numbers: bid,imp,qua,act")
        return cls(*(float(p) for p in parts))


class IndegreeMode(Enum):
    WIKI_WIDE = "wiki_wide"
    WITHIN_CANDIDATES = "within_candidates"


def score_indegree(
    graph: SemanticGraph, mode: IndegreeMode, source=None
) -> dict[NodeId, int]:
    """Wiki-wide backlink counts (context-free, needs a backend) or inbound
    edge counts inside the candidate graph."""
    if mode is IndegreeMode.WIKI_WIDE:
        if source is None:
            raise ValueError("wiki-wide indegree requires a source backend")
        return {
            node: source.fetch_backlink_count(node.key)
            for node in graph.article_nodes()
        }
    return {node: graph.indegree(node) for node in graph.nodes}


def build_bidirectional_layer(graph: SemanticGraph) -> SemanticGraph:
    """New graph whose bidirectional layer holds exactly the mutual link pairs,
    with each article scored by its count of mutual partners."""
    mutual_partners: dict[NodeId, set[NodeId]] = {}
    edges: list[Edge] = []
    for node in graph.article_nodes():
        out = graph.out_neighbors(node, _LINK)
        back = graph.in_neighbors(node, _LINK)
        partners = {n for n in out & back if n.kind is NodeKind.ARTICLE}
        mutual_partners[node] = partners
        edges.extend(Edge(node, partner, Layer.BIDIRECTIONAL) for partner in partners)
    scores = {node: float(len(partners)) for node, partners in mutual_partners.items()}
    return graph.replace_layer(Layer.BIDIRECTIONAL, edges).with_scores(
        Layer.BIDIRECTIONAL, scores
    )


def score_quality(rating: AssessmentRating) -> int:
    return _QUALITY_SCORE[rating.quality]


def score_importance(rating: AssessmentRating) -> int:
    return _IMPORTANCE_SCORE[rating.importance]


def score_actuality(source, titles, window: TimeWindow) -> dict[str, int]:
    """Revision count per title inside the window: the more an article
    changes, the more actual it is."""
    return {title: source.fetch_revision_count(title, window) for title in titles}


def score_urls(graph: SemanticGraph, article_scores: Mapping[str, float]) -> dict[str, float]:
    """URL value: sum of the referencing articles' scores; articles missing
    from the score map contribute zero."""
    out: dict[str, float] = {}
    for node in graph.web_nodes():
        citers = graph.in_neighbors(node, _MENTION)
        out[node.key] = float(sum(article_scores.get(a.key, 0.0) for a in citers))
    return out


def _normalize_layer(graph: SemanticGraph, layer: Layer) -> dict[NodeId, float]:
    raw = {node: graph.score(node, layer) for node in graph.nodes}
    if not raw:
        return {}
    low, high = min(raw.values()), max(raw.values())
    if high == low:
        warnings.warn(
            f"layer {layer.value!r} is constant across nodes; normalized to zero",
            DegenerateLayerWarning,
            stacklevel=3,
        )
        return {node: 0.0 for node in raw}
    return {node: (value - low) / (high - low) for node, value in raw.items()}


def combine_layers(graph: SemanticGraph, weights: LayerWeights) -> dict[NodeId, float]:
    """Weighted sum of the min-max normalized ranking layers. A constant layer
    is flagged with DegenerateLayerWarning and contributes zero."""
    weight_map = weights.as_dict()
    combined = {node: 0.0 for node in graph.nodes}
    for layer in RANKING_LAYERS:
        weight = weight_map[layer]
        if weight == 0:
            continue
        for node, value in _normalize_layer(graph, layer).items():
            combined[node] += weight * value
    return combined


def rank_nodes(graph: SemanticGraph, combined: Mapping[NodeId, float]) -> list[tuple[NodeId, float]]:
    """Ranking order for combined scores; ties fall back to the bidirectional
    score, then the lexicographic node key."""
    return sorted(
        combined.items(),
        key=lambda kv: (-kv[1], -graph.score(kv[0], Layer.BIDIRECTIONAL), kv[0].sort_key),
    )


def apply_threshold(
    graph: SemanticGraph, scores: Mapping[NodeId, float], threshold: float
) -> SemanticGraph:
    """Remove nodes scoring below the threshold (scores equal to it survive)
    together with their edges; web nodes losing every citer are dropped too."""
    keep = [node for node in graph.nodes if scores.get(node, 0.0) >= threshold]
    return graph.subgraph(keep)
