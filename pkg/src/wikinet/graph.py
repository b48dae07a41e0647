"""Multi-layer semantic network over article and web nodes.

Article nodes carry directed link-structure edges; web nodes hang off the
articles that cite them. Each edge is tagged with the layer that produced it:
``LINK`` for the raw article-to-article link structure, ``MENTION`` for
article-to-URL citations, and the four ranking layers for algorithm output.
Graphs are immutable after construction; every operation returns a new graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Mapping

from .errors import DuplicateTitle
from .wikitext import normalize_title, normalize_url


class NodeKind(Enum):
    ARTICLE = "article"
    WEB = "web"


class Layer(Enum):
    LINK = "link"
    BIDIRECTIONAL = "bidirectional"
    IMPORTANCE = "importance"
    QUALITY = "quality"
    ACTUALITY = "actuality"
    MENTION = "mention"


#: Layers combined by the weighted ranking step.
RANKING_LAYERS = (Layer.BIDIRECTIONAL, Layer.IMPORTANCE, Layer.QUALITY, Layer.ACTUALITY)

ALL_LAYERS = frozenset(Layer)
ALL_KINDS = frozenset(NodeKind)


@dataclass(frozen=True)
class NodeId:
    kind: NodeKind
    key: str

    @classmethod
    def article(cls, title: str) -> "NodeId":
        return cls(NodeKind.ARTICLE, normalize_title(title))

    @classmethod
    def web(cls, url: str) -> "NodeId":
        return cls(NodeKind.WEB, normalize_url(url))

    @property
    def sort_key(self) -> tuple[str, str]:
        return (self.kind.value, self.key)

    def __repr__(self) -> str:  # compact form for test output
        return f"{self.kind.value}:{self.key}"


@dataclass(frozen=True)
class Edge:
    src: NodeId
    dst: NodeId
    layer: Layer
    weight: float = 1.0

    @property
    def sort_key(self):
        return (*self.src.sort_key, *self.dst.sort_key, self.layer.value)


class GraphScope(Enum):
    CANDIDATES_ONLY = "candidates_only"
    INCLUDE_WEB = "include_web"


class SemanticGraph:
    """Immutable node/edge/score container enforcing the network invariants:
    no self-loops, no edges out of web nodes, at most one edge per
    (src, dst, layer), and every web node cited by at least one article."""

    def __init__(
        self,
        nodes: Iterable[NodeId],
        edges: Iterable[Edge] = (),
        scores: Mapping[NodeId, Mapping[Layer, float]] | None = None,
    ):
        self._scores: dict[NodeId, dict[Layer, float]] = {n: {} for n in nodes}
        self._edges: dict[tuple[NodeId, NodeId, Layer], float] = {}
        self._out: dict[NodeId, dict[NodeId, set[Layer]]] = {n: {} for n in self._scores}
        self._in: dict[NodeId, dict[NodeId, set[Layer]]] = {n: {} for n in self._scores}
        for e in edges:
            self._add_edge(e)
        if scores:
            for node, per_layer in scores.items():
                if node not in self._scores:
                    raise ValueError(f"score for unknown node {node!r}")
                self._scores[node].update(per_layer)
        self._check_web_invariant()

    def _add_edge(self, e: Edge) -> None:
        if e.src not in self._scores or e.dst not in self._scores:
            raise ValueError(f"edge endpoint not in node set: {e!r}")
        if e.src == e.dst:
            raise ValueError(f"self-loop forbidden: {e!r}")
        if e.src.kind is NodeKind.WEB:
            raise ValueError(f"edges out of web nodes forbidden: {e!r}")
        if (e.dst.kind is NodeKind.WEB) != (e.layer is Layer.MENTION):
            raise ValueError(f"mention layer is reserved for article-to-web edges: {e!r}")
        key = (e.src, e.dst, e.layer)
        if key in self._edges:
            raise ValueError(f"duplicate edge for {key!r}")
        if e.weight < 0:
            raise ValueError(f"negative edge weight: {e!r}")
        self._edges[key] = e.weight
        self._out[e.src].setdefault(e.dst, set()).add(e.layer)
        self._in[e.dst].setdefault(e.src, set()).add(e.layer)

    def _check_web_invariant(self) -> None:
        for node in self._scores:
            if node.kind is NodeKind.WEB and not self._in[node]:
                raise ValueError(f"web node without a citing article: {node!r}")

    # -- read access -------------------------------------------------------

    @property
    def nodes(self) -> tuple[NodeId, ...]:
        return tuple(sorted(self._scores, key=lambda n: n.sort_key))

    @property
    def edges(self) -> tuple[Edge, ...]:
        items = (Edge(s, d, l, w) for (s, d, l), w in self._edges.items())
        return tuple(sorted(items, key=lambda e: e.sort_key))

    def __contains__(self, node: NodeId) -> bool:
        return node in self._scores

    @property
    def node_count(self) -> int:
        return len(self._scores)

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def article_nodes(self) -> Iterator[NodeId]:
        return (n for n in self.nodes if n.kind is NodeKind.ARTICLE)

    def web_nodes(self) -> Iterator[NodeId]:
        return (n for n in self.nodes if n.kind is NodeKind.WEB)

    def has_edge(self, src: NodeId, dst: NodeId, layer: Layer) -> bool:
        return (src, dst, layer) in self._edges

    def layer_edges(self, layer: Layer) -> tuple[Edge, ...]:
        return tuple(e for e in self.edges if e.layer is layer)

    def score(self, node: NodeId, layer: Layer, default: float = 0.0) -> float:
        return self._scores[node].get(layer, default)

    def node_scores(self, node: NodeId) -> dict[Layer, float]:
        return dict(self._scores[node])

    def out_neighbors(self, node: NodeId, layers: frozenset[Layer] | None = None) -> set[NodeId]:
        """Distinct edge targets of ``node``, optionally restricted to layers."""
        if layers is None:
            return set(self._out[node])
        return {dst for dst, tags in self._out[node].items() if tags & layers}

    def in_neighbors(self, node: NodeId, layers: frozenset[Layer] | None = None) -> set[NodeId]:
        if layers is None:
            return set(self._in[node])
        return {src for src, tags in self._in[node].items() if tags & layers}

    def undirected_neighbors(
        self, node: NodeId, layers: frozenset[Layer] | None = None
    ) -> set[NodeId]:
        return self.out_neighbors(node, layers) | self.in_neighbors(node, layers)

    def indegree(self, node: NodeId) -> int:
        """Distinct nodes with an edge into ``node``, across all layers."""
        return len(self._in[node])

    # -- derivation --------------------------------------------------------

    def with_scores(self, layer: Layer, values: Mapping[NodeId, float]) -> "SemanticGraph":
        """New graph with ``layer`` scores set for the given nodes; structure shared."""
        merged = {n: dict(per) for n, per in self._scores.items()}
        for node, value in values.items():
            if node not in merged:
                raise ValueError(f"score for unknown node {node!r}")
            merged[node][layer] = float(value)
        return SemanticGraph(merged.keys(), self.edges, merged)

    def replace_layer(self, layer: Layer, edges: Iterable[Edge]) -> "SemanticGraph":
        """New graph whose ``layer`` edge set is exactly ``edges``; other layers kept."""
        kept = [e for e in self.edges if e.layer is not layer]
        return SemanticGraph(self._scores.keys(), kept + list(edges), self._scores)

    def subgraph(self, keep: Iterable[NodeId]) -> "SemanticGraph":
        """Induced subgraph on ``keep``; web nodes losing all citers are dropped."""
        kept = set(keep)
        survivors = {
            n
            for n in kept
            if n.kind is NodeKind.ARTICLE
            or any(src in kept for src in self._in[n])
        }
        edges = [e for e in self.edges if e.src in survivors and e.dst in survivors]
        scores = {n: self._scores[n] for n in survivors}
        return SemanticGraph(survivors, edges, scores)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SemanticGraph):
            return NotImplemented
        return self._scores == other._scores and self._edges == other._edges

    def __repr__(self) -> str:
        return f"SemanticGraph(nodes={self.node_count}, edges={self.edge_count})"


def build_graph(records, scope: GraphScope = GraphScope.INCLUDE_WEB) -> SemanticGraph:
    """Assemble the semantic network from article records.

    One article node per record; a directed LINK edge for every outlink whose
    target is itself in the record set; under ``INCLUDE_WEB`` one web node per
    distinct URL with a MENTION edge from each citing article.
    """
    records = list(records)
    if not records:
        raise ValueError("records must be non-empty")
    titles: set[str] = set()
    for r in records:
        if r.title in titles:
            raise DuplicateTitle(r.title)
        titles.add(r.title)

    nodes = [NodeId(NodeKind.ARTICLE, r.title) for r in records]
    edges = []
    for r in records:
        src = NodeId(NodeKind.ARTICLE, r.title)
        for target in r.outlinks:
            if target in titles and target != r.title:
                edges.append(Edge(src, NodeId(NodeKind.ARTICLE, target), Layer.LINK))

    if scope is GraphScope.INCLUDE_WEB:
        web_nodes: set[NodeId] = set()
        for r in records:
            src = NodeId(NodeKind.ARTICLE, r.title)
            for url in dict.fromkeys(r.extlinks):  # an article citing a URL twice mentions it once
                web = NodeId(NodeKind.WEB, url)
                web_nodes.add(web)
                edges.append(Edge(src, web, Layer.MENTION))
        nodes.extend(sorted(web_nodes, key=lambda n: n.sort_key))

    return SemanticGraph(nodes, edges)


def project(
    graph: SemanticGraph,
    layers: Iterable[Layer] = ALL_LAYERS,
    kinds: Iterable[NodeKind] = ALL_KINDS,
) -> SemanticGraph:
    """Induced subgraph on a layer and node-kind subset.

    Article nodes of an included kind are always retained; web nodes are
    retained only when a MENTION edge survives the filter, preserving the
    web-node invariant.
    """
    layer_set = frozenset(layers)
    kind_set = frozenset(kinds)
    if not layer_set:
        raise ValueError("layers must be non-empty")

    kept: set[NodeId] = set()
    for node in graph.nodes:
        if node.kind not in kind_set:
            continue
        if node.kind is NodeKind.WEB:
            if Layer.MENTION in layer_set and any(
                src.kind in kind_set
                for src in graph.in_neighbors(node, frozenset({Layer.MENTION}))
            ):
                kept.add(node)
        else:
            kept.add(node)

    edges = [
        e
        for e in graph.edges
        if e.layer in layer_set and e.src in kept and e.dst in kept
    ]
    scores = {n: graph.node_scores(n) for n in kept}
    return SemanticGraph(kept, edges, scores)


def export_graph(
    graph: SemanticGraph,
    extra_scores: Mapping[str, Mapping[NodeId, float]] | None = None,
) -> dict:
    """Graph export document: plain data, stable ordering, consumed by the UI
    and external tools. ``extra_scores`` adds named per-node values (for
    example centrality metrics) alongside the layer scores."""
    nodes = []
    for node in graph.nodes:
        scores = {layer.value: value for layer, value in graph.node_scores(node).items()}
        if extra_scores:
            for name, values in extra_scores.items():
                if node in values:
                    scores[name] = values[node]
        nodes.append(
            {
                "id": node.key,
                "kind": node.kind.value,
                "scores": scores,
                "indegree": graph.indegree(node),
            }
        )
    edges = [
        {"src": e.src.key, "dst": e.dst.key, "layer": e.layer.value, "weight": e.weight}
        for e in graph.edges
    ]
    return {"schema": "wikinet.graph/1", "nodes": nodes, "edges": edges}
