from __future__ import annotations

import random

import pytest

from rowtree import (
    AttributePredicate,
    DatasetError,
    Graph,
    NotFoundError,
    QuerySpec,
    list_datasets,
    load_dataset,
    save_dataset,
)

from .oracles import bfs_depths, build_adjacency, gnp_records, gnp_schema, linear_label_search


def tiny_schema():
    return {
        "nodeTypes": [
            {"name": "person", "attributes": [
                {"name": "age", "kind": "numeric"},
                {"name": "rank", "kind": "ordinal", "domain": {"categories": ["low", "mid", "high"]}},
                {"name": "tags", "kind": "set"},
            ]},
            {"name": "place", "attributes": []},
        ],
        "edgeTypes": [{"name": "knows"}, {"name": "visited"}],
    }


def tiny_nodes():
    return [
        {"id": "p1", "type": "person", "label": "Ada", "attributes": {"age": 36, "rank": "high"}},
        {"id": "p2", "type": "person", "label": "Grace", "attributes": {"age": 40, "tags": ["x", "y"]}},
        {"id": "c1", "type": "place", "label": "Adana"},
    ]


def tiny_edges():
    return [
        {"id": "k1", "source": "p1", "target": "p2", "type": "knows"},
        {"id": "v1", "source": "p1", "target": "c1", "type": "visited", "directed": True},
        {"id": "v2", "source": "p2", "target": "c1", "type": "visited"},
    ]


class TestBuildValidation:
    def test_builds_clean_records(self):
        g = Graph.build(tiny_schema(), tiny_nodes(), tiny_edges())
        assert set(g.nodes) == {"p1", "p2", "c1"}
        assert g.degree("c1") == 2
        assert g.edges["v1"].directed

    def test_duplicate_node_id(self):
        nodes = tiny_nodes() + [{"id": "p1", "type": "place", "label": "again"}]
        with pytest.raises(DatasetError, match="duplicate node id 'p1'"):
            Graph.build(tiny_schema(), nodes, [])

    def test_duplicate_edge_id(self):
        edges = tiny_edges() + [{"id": "k1", "source": "p2", "target": "c1", "type": "knows"}]
        with pytest.raises(DatasetError, match="duplicate edge id 'k1'"):
            Graph.build(tiny_schema(), tiny_nodes(), edges)

    def test_self_loop_rejected(self):
        edges = [{"id": "bad", "source": "p1", "target": "p1", "type": "knows"}]
        with pytest.raises(DatasetError, match="self-loop"):
            Graph.build(tiny_schema(), tiny_nodes(), edges)

    def test_dangling_endpoints_all_named(self):
        edges = [
            {"id": "d1", "source": "p1", "target": "ghost", "type": "knows"},
            {"id": "d2", "source": "phantom", "target": "p2", "type": "knows"},
        ]
        with pytest.raises(DatasetError) as exc:
            Graph.build(tiny_schema(), tiny_nodes(), edges)
        msg = str(exc.value)
        assert "ghost" in msg and "phantom" in msg and "d1" in msg and "d2" in msg

    def test_unknown_node_type(self):
        nodes = [{"id": "x", "type": "alien", "label": "x"}]
        with pytest.raises(DatasetError, match="unknown type 'alien'"):
            Graph.build(tiny_schema(), nodes, [])

    def test_unknown_edge_type(self):
        edges = [{"id": "e", "source": "p1", "target": "p2", "type": "likes"}]
        with pytest.raises(DatasetError, match="unknown type 'likes'"):
            Graph.build(tiny_schema(), tiny_nodes(), edges)

    def test_ordinal_requires_categories(self):
        schema = tiny_schema()
        schema["nodeTypes"][0]["attributes"][1].pop("domain")
        with pytest.raises(DatasetError, match="ordered categories"):
            Graph.build(schema, [], [])

    def test_ordinal_value_outside_categories(self):
        nodes = [{"id": "p", "type": "person", "label": "p", "attributes": {"rank": "supreme"}}]
        with pytest.raises(DatasetError, match="does not fit ordinal"):
            Graph.build(tiny_schema(), nodes, [])

    def test_bool_is_not_numeric(self):
        nodes = [{"id": "p", "type": "person", "label": "p", "attributes": {"age": True}}]
        with pytest.raises(DatasetError, match="does not fit numeric"):
            Graph.build(tiny_schema(), nodes, [])

    def test_attribute_not_in_schema(self):
        nodes = [{"id": "p", "type": "person", "label": "p", "attributes": {"shoe": 9}}]
        with pytest.raises(DatasetError, match="not in schema"):
            Graph.build(tiny_schema(), nodes, [])

    def test_duplicate_type_names(self):
        schema = tiny_schema()
        schema["nodeTypes"].append({"name": "person", "attributes": []})
        with pytest.raises(DatasetError, match="duplicate node type"):
            Graph.build(schema, [], [])


class TestLookups:
    def test_unknown_node_raises(self):
        g = Graph.build(tiny_schema(), tiny_nodes(), tiny_edges())
        with pytest.raises(NotFoundError):
            g.node("nope")

    def test_neighbors_ordered_and_filtered(self):
        g = Graph.build(tiny_schema(), tiny_nodes(), tiny_edges())
        assert g.neighbors("p1") == ["c1", "p2"]  # label order: Adana, Grace
        assert g.neighbors("p1", type_filter={"person"}) == ["p2"]

    def test_parallel_edges_count_in_degree(self):
        edges = tiny_edges() + [{"id": "k2", "source": "p1", "target": "p2", "type": "knows"}]
        g = Graph.build(tiny_schema(), tiny_nodes(), edges)
        assert g.degree("p1") == 3
        assert g.neighbors("p1").count("p2") == 2


class TestSearch:
    def test_facets_follow_schema_type_order(self, got_graph):
        facets = got_graph.search_faceted("a")
        assert list(facets) == [t for t in got_graph.node_types if t in facets]

    def test_empty_query_empty_result(self, fig2_graph):
        assert fig2_graph.search_faceted("") == {}

    def test_hits_sorted_by_degree_then_label(self, got_graph):
        for hits in got_graph.search_faceted("battle").values():
            keys = [(-h.degree, h.label, h.id) for h in hits]
            assert keys == sorted(keys)

    def test_matches_linear_scan_oracle(self, got_graph):
        _schema, node_recs, _edges = got_graph.to_records()
        for q in ("a", "Stark", "BATTLE", "zz-none"):
            expect = linear_label_search(node_recs, q)
            got = {t: {h.id for h in hits} for t, hits in got_graph.search_faceted(q).items()}
            assert got == expect, q


class TestStructuredQuery:
    def test_depth_bound(self, fig2_graph):
        ids = fig2_graph.structured_query(QuerySpec(seeds=["A"], depth=1))
        assert set(ids) == {"A", "B", "C", "D"}

    def test_type_and_predicate_filters(self, got_graph):
        spec = QuerySpec(
            seeds=["h-lannister"],
            depth=1,
            types={"Battle"},
            predicates=[AttributePredicate(attribute="attacker_size", lo=10000)],
        )
        ids = got_graph.structured_query(spec)
        assert "h-lannister" in ids  # seeds always kept
        battles = [i for i in ids if i != "h-lannister"]
        assert battles and all(
            got_graph.attribute_value(b, "attacker_size") >= 10000 for b in battles
        )

    def test_discovery_order_is_bfs(self, fig2_graph):
        ids = fig2_graph.structured_query(QuerySpec(seeds=["A"]))
        adj = build_adjacency(fig2_graph.to_records()[2])
        depths = bfs_depths(adj, "A")
        seen_depths = [depths[i] for i in ids]
        assert seen_depths == sorted(seen_depths)


class TestDatasetIO:
    def test_round_trip(self, tmp_path, fig2_graph):
        save_dataset(fig2_graph, tmp_path / "copy")
        back = load_dataset(tmp_path / "copy")
        assert set(back.nodes) == set(fig2_graph.nodes)
        assert set(back.edges) == set(fig2_graph.edges)
        assert back.node("B").attributes == fig2_graph.node("B").attributes

    def test_malformed_jsonl_names_line(self, tmp_path):
        d = tmp_path / "broken"
        d.mkdir()
        (d / "schema.json").write_text('{"nodeTypes": [{"name": "t"}], "edgeTypes": []}')
        (d / "nodes.jsonl").write_text('{"id": "a", "type": "t", "label": "a"}\nnot json\n')
        with pytest.raises(DatasetError, match="nodes.jsonl:2"):
            load_dataset(d)

    def test_missing_directory(self, tmp_path):
        with pytest.raises(DatasetError, match="not a dataset directory"):
            load_dataset(tmp_path / "absent")

    def test_list_datasets_skips_plain_dirs(self, tmp_path, fig2_graph):
        save_dataset(fig2_graph, tmp_path / "one")
        (tmp_path / "junk").mkdir()
        assert list_datasets(tmp_path) == ["one"]


def test_random_graphs_build_and_agree_with_oracle_adjacency():
    rng = random.Random(20260816)
    for _ in range(25):
        n = rng.randint(2, 40)
        nodes, edges = gnp_records(rng, n, rng.choice([0.05, 0.2, 0.5]))
        g = Graph.build(gnp_schema(), nodes, edges)
        adj = build_adjacency(edges)
        for nid in g.nodes:
            assert set(g.neighbors(nid)) == adj.get(nid, set())
