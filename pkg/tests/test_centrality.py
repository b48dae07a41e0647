import random

import pytest

from wikinet.centrality import (
    Direction,
    FilterOrder,
    Metric,
    betweenness_centrality,
    degree_centrality,
    top_k,
    wikimap_filter,
)
from wikinet.errors import SeedNotInGraph
from wikinet.graph import Edge, Layer, NodeId, NodeKind, SemanticGraph, build_graph

from synth import article, brute_force_betweenness, graph_from_links, random_directed_graph, scale_fixture
from test_graph import record


class TestDegree:
    def test_triangle_undirected(self):
        g = graph_from_links({"A": ["B"], "B": ["C"], "C": ["A"]})
        report = degree_centrality(g, Direction.UNDIRECTED)
        assert all(v == 2 for v in report.values.values())

    def test_isolated_node(self):
        g = graph_from_links({"A": ["B"]}, extra_nodes=["Loner"])
        report = degree_centrality(g)
        assert report.values[article("Loner")] == 0

    def test_directed_counts_in_plus_out(self):
        g = graph_from_links({"A": ["B"], "B": ["A", "C"]})
        report = degree_centrality(g, Direction.DIRECTED)
        assert report.values[article("B")] == 3  # in from A, out to A and C

    def test_single_citation_url_degree_one(self):
        g = build_graph([record("A", extlinks=["http://x.org/only"])])
        report = degree_centrality(g)
        assert report.values[NodeId(NodeKind.WEB, "http://x.org/only")] == 1

    def test_degree_sum_is_twice_undirected_edges(self):
        rng = random.Random(3)
        for _ in range(10):
            g = random_directed_graph(rng, 9, 0.3)
            report = degree_centrality(g, Direction.UNDIRECTED)
            undirected_pairs = {
                frozenset((e.src, e.dst)) for e in g.edges
            }
            assert sum(report.values.values()) == 2 * len(undirected_pairs)


class TestBetweenness:
    def test_path_middle_counts_both_directions(self):
        g = graph_from_links({"A": ["B"], "B": ["C"]})
        report = betweenness_centrality(g, Direction.UNDIRECTED)
        assert report.values[article("B")] == 2.0
        assert report.values[article("A")] == 0.0
        assert report.values[article("C")] == 0.0

    def test_star_center(self):
        g = graph_from_links({"Hub": ["L1", "L2", "L3"]})
        report = betweenness_centrality(g, Direction.UNDIRECTED)
        assert report.values[article("Hub")] == 6.0
        assert all(report.values[article(f"L{i}")] == 0.0 for i in (1, 2, 3))

    @pytest.mark.parametrize("direction", [Direction.UNDIRECTED, Direction.DIRECTED])
    def test_matches_brute_force_oracle(self, direction):
        rng = random.Random(11)
        for _ in range(25):
            g = random_directed_graph(rng, rng.randint(2, 12), 0.3)
            report = betweenness_centrality(g, direction)
            oracle = brute_force_betweenness(g, directed=direction is Direction.DIRECTED)
            for node in g.nodes:
                assert report.values[node] == pytest.approx(oracle[node], abs=1e-9)

    def test_every_node_reported(self):
        g = graph_from_links({"A": ["B"]}, extra_nodes=["C"])
        report = betweenness_centrality(g)
        assert set(report.values) == set(g.nodes)


class TestTopK:
    def test_k_larger_than_graph(self):
        g = graph_from_links({"A": ["B"], "B": ["A"]})
        report = degree_centrality(g)
        assert len(top_k(report, 10)) == 2

    def test_tie_break_lexicographic(self):
        g = graph_from_links({"Beta": ["Alpha"], "Alpha": ["Beta"]})
        report = degree_centrality(g)
        assert [n.key for n, _ in top_k(report, 2)] == ["Alpha", "Beta"]

    def test_kind_filter_articles_only(self):
        g = build_graph([record("A", ["B"], ["http://x.org/a"]), record("B", ["A"], page_id=2)])
        report = betweenness_centrality(g)
        entries = top_k(report, 50, kind_filter=NodeKind.ARTICLE)
        assert all(n.kind is NodeKind.ARTICLE for n, _ in entries)

    def test_invalid_k(self):
        g = graph_from_links({"A": ["B"]})
        with pytest.raises(ValueError):
            top_k(degree_centrality(g), 0)


class TestWikimapFilter:
    def test_small_graph_fully_kept(self):
        g = graph_from_links({f"N{i}": [f"N{(i + 1) % 10}"] for i in range(10)})
        filtered = wikimap_filter(g, {"N0"}, max_nodes=10)
        assert filtered.node_count == 10

    def test_unreachable_dropped_regardless_of_indegree(self):
        links = {"Seed": ["A"], "A": ["Seed"]}
        # Heavily cited island, unreachable from the seed.
        links.update({f"Fan{i}": ["Island"] for i in range(5)})
        g = graph_from_links(links)
        filtered = wikimap_filter(g, {"Seed"}, max_nodes=50)
        assert article("Island") not in filtered
        assert article("Fan0") not in filtered

    def test_seed_not_in_graph(self):
        g = graph_from_links({"A": ["B"]})
        with pytest.raises(SeedNotInGraph):
            wikimap_filter(g, {"Nope"}, max_nodes=5)

    def test_scale_fixture_within_budget(self):
        g, seeds = scale_fixture(n=1500, seed=7)
        assert 1000 <= g.node_count <= 2500
        filtered = wikimap_filter(g, set(seeds), max_nodes=50)
        assert filtered.node_count <= 50
        for seed in seeds:
            assert article(seed) in filtered
        again = wikimap_filter(g, set(seeds), max_nodes=50)
        assert filtered == again

    def test_distance_beats_indegree_by_default(self):
        links = {
            "Seed": ["Near"],
            "Near": ["Far"],
            # Far is cited a lot but two hops out.
            **{f"F{i}": ["Far"] for i in range(4)},
            # The F nodes are reachable only through Far.
            "Far": [f"F{i}" for i in range(4)],
        }
        g = graph_from_links(links)
        filtered = wikimap_filter(g, {"Seed"}, max_nodes=2)
        assert set(filtered.nodes) == {article("Seed"), article("Near")}
        by_indegree = wikimap_filter(g, {"Seed"}, max_nodes=2, order=FilterOrder.INDEGREE_FIRST)
        assert set(by_indegree.nodes) == {article("Seed"), article("Far")}

    def test_seeds_always_retained_over_budget(self):
        g = graph_from_links({"A": ["B"], "B": ["C"], "C": ["A"]})
        filtered = wikimap_filter(g, {"A", "B", "C"}, max_nodes=2)
        assert filtered.node_count == 3
