"""Graph centrality metrics and the node-budget filter for map rendering.

Betweenness uses the single-source accumulation scheme for unweighted graphs
(one BFS per source, dependencies propagated in reverse BFS order), which
runs in O(V*E). Values are raw ordered-pair counts, unnormalized: top-k order
is unaffected by normalization constants.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum

from .errors import SeedNotInGraph
from .graph import NodeId, NodeKind, SemanticGraph
from .wikitext import normalize_title


class Metric(Enum):
    DEGREE = "degree"
    BETWEENNESS = "betweenness"


class Direction(Enum):
    DIRECTED = "directed"
    UNDIRECTED = "undirected"


class FilterOrder(Enum):
    DISTANCE_FIRST = "distance_first"
    INDEGREE_FIRST = "indegree_first"


@dataclass(frozen=True)
class CentralityReport:
    metric: Metric
    direction: Direction
    values: dict[NodeId, float]

    def as_table(self) -> str:
        """Tabular text export: node, metric, value."""
        lines = ["node\tmetric\tvalue"]
        ranked = sorted(self.values.items(), key=lambda kv: (-kv[1], kv[0].sort_key))
        for node, value in ranked:
            lines.append(f"{node.key}\t{self.metric.value}\t{value:g}")
        return "\n".join(lines) + "\n"


def _adjacency(view: SemanticGraph, direction: Direction) -> dict[NodeId, list[NodeId]]:
    """Distinct-neighbor adjacency; parallel edges in different layers collapse."""
    adj: dict[NodeId, list[NodeId]] = {}
    for node in view.nodes:
        if direction is Direction.DIRECTED:
            neighbors = view.out_neighbors(node)
        else:
            neighbors = view.undirected_neighbors(node)
        adj[node] = sorted(neighbors, key=lambda n: n.sort_key)
    return adj


def degree_centrality(
    view: SemanticGraph, direction: Direction = Direction.UNDIRECTED
) -> CentralityReport:
    """Directed: in-degree plus out-degree over distinct linked pairs.
    Undirected: distinct neighbor count."""
    values: dict[NodeId, float] = {}
    for node in view.nodes:
        if direction is Direction.DIRECTED:
            values[node] = float(len(view.out_neighbors(node)) + len(view.in_neighbors(node)))
        else:
            values[node] = float(len(view.undirected_neighbors(node)))
    return CentralityReport(Metric.DEGREE, direction, values)


def betweenness_centrality(
    view: SemanticGraph, direction: Direction = Direction.UNDIRECTED
) -> CentralityReport:
    """Raw betweenness: for each node v, the sum over ordered pairs (s, t) of
    the fraction of shortest s-t paths passing through v."""
    adj = _adjacency(view, direction)
    centrality = {node: 0.0 for node in adj}

    for source in adj:
        stack: list[NodeId] = []
        predecessors: dict[NodeId, list[NodeId]] = {v: [] for v in adj}
        sigma = {v: 0 for v in adj}
        dist = {v: -1 for v in adj}
        sigma[source] = 1
        dist[source] = 0
        queue = deque([source])
        while queue:
            v = queue.popleft()
            stack.append(v)
            for w in adj[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue.append(w)
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    predecessors[w].append(v)
        delta = {v: 0.0 for v in adj}
        while stack:
            w = stack.pop()
            for v in predecessors[w]:
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w])
            if w != source:
                centrality[w] += delta[w]

    return CentralityReport(Metric.BETWEENNESS, direction, centrality)


def top_k(
    report: CentralityReport, k: int, kind_filter: NodeKind | None = None
) -> list[tuple[NodeId, float]]:
    """Top k nodes by value, descending; ties broken lexicographically by key."""
    if k < 1:
        raise ValueError("k must be positive")
    entries = [
        (node, value)
        for node, value in report.values.items()
        if kind_filter is None or node.kind is kind_filter
    ]
    entries.sort(key=lambda kv: (-kv[1], kv[0].sort_key))
    return entries[:k]


def _distances_from_seeds(graph: SemanticGraph, seeds: set[NodeId]) -> dict[NodeId, int]:
    dist = {seed: 0 for seed in seeds}
    queue = deque(sorted(seeds, key=lambda n: n.sort_key))
    while queue:
        v = queue.popleft()
        for w in sorted(graph.undirected_neighbors(v), key=lambda n: n.sort_key):
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def wikimap_filter(
    graph: SemanticGraph,
    seeds: set[str],
    max_nodes: int = 50,
    order: FilterOrder = FilterOrder.DISTANCE_FIRST,
) -> SemanticGraph:
    """Reduce a candidate graph to a renderable map of at most ``max_nodes``.

    Seeds are always retained. The remaining nodes are ranked by hop distance
    to the nearest seed and within-graph indegree (precedence per ``order``)
    and kept until the budget is reached; nodes unreachable from every seed
    are dropped. Web nodes that lose all citing articles fall out of the
    induced subgraph, so the result can be smaller than the budget.
    """
    if max_nodes < 1:
        raise ValueError("max_nodes must be positive")
    seed_nodes = set()
    for title in seeds:
        node = NodeId(NodeKind.ARTICLE, normalize_title(title))
        if node not in graph:
            raise SeedNotInGraph(node.key)
        seed_nodes.add(node)

    dist = _distances_from_seeds(graph, seed_nodes)
    candidates = [n for n in dist if n not in seed_nodes]
    if order is FilterOrder.DISTANCE_FIRST:
        candidates.sort(key=lambda n: (dist[n], -graph.indegree(n), n.sort_key))
    else:
        candidates.sort(key=lambda n: (-graph.indegree(n), dist[n], n.sort_key))

    keep = set(seed_nodes)
    for node in candidates:
        if len(keep) >= max_nodes:
            break
        keep.add(node)
    return graph.subgraph(keep)
