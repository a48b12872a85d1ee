"""Graph model, JSON ingestion, walks, canonical cycles, specs."""

from __future__ import annotations

import json
import random

import pytest

from helpers import feedback_graph, loop_graph, random_multigraph
from pathminor import (
    Edge,
    Graph,
    GraphError,
    SourceSinkSpec,
    SpecError,
    Walk,
    WalkError,
    canonical_cycle,
    graph_from_dict,
    graph_to_dict,
    is_self_avoiding,
    parse_graph,
    parse_query,
    vertex_set,
    walk_vertices,
    walk_weight,
)
from pathminor.graph import check_spec
from pathminor.poly import monomial_from_edges


def test_parse_golden_document():
    g = parse_graph(json.dumps(graph_to_dict(feedback_graph())))
    assert len(g.edges) == 8
    assert [e.id for e in g.out_edges("q")] == ["c", "d"]
    assert g.edge("a").tail == "v1"


def test_parse_empty_graph():
    g = parse_graph('{"vertices": [], "edges": []}')
    assert g.vertices == ()
    assert g.edges == ()


def test_parse_reports_locations():
    with pytest.raises(GraphError, match=r"edges\[1\].*duplicate"):
        graph_from_dict(
            {
                "vertices": ["u"],
                "edges": [
                    {"id": "x", "tail": "u", "head": "u"},
                    {"id": "x", "tail": "u", "head": "u"},
                ],
            }
        )
    with pytest.raises(GraphError, match=r"edges\[0\].*head.*'w'"):
        graph_from_dict(
            {"vertices": ["u"], "edges": [{"id": "x", "tail": "u", "head": "w"}]}
        )
    with pytest.raises(GraphError, match="malformed JSON"):
        parse_graph("{not json")
    with pytest.raises(GraphError, match=r"edges\[0\].*missing key"):
        graph_from_dict({"vertices": ["u"], "edges": [{"id": "x"}]})
    with pytest.raises(GraphError, match="duplicate vertex"):
        Graph(["u", "u"], [])


def test_round_trip_is_identity():
    rng = random.Random(3)
    for _ in range(25):
        g = random_multigraph(rng)
        again = graph_from_dict(graph_to_dict(g))
        assert again == g
        assert graph_from_dict(graph_to_dict(again)) == again


def test_parse_query_with_embedded_spec():
    doc = graph_to_dict(feedback_graph())
    doc["sources"] = ["v1", "v2"]
    doc["sinks"] = ["v3", "v4"]
    g, spec = parse_query(json.dumps(doc))
    assert spec == SourceSinkSpec(("v1", "v2"), ("v3", "v4"))
    g, spec = parse_query(json.dumps(graph_to_dict(feedback_graph())))
    assert spec is None


def test_trivial_walk_weight_is_unit():
    g = feedback_graph()
    assert walk_weight(g, Walk("v1")) == ()
    assert walk_vertices(g, Walk("v1")) == ("v1",)


def test_walk_weight_golden_path():
    g = feedback_graph()
    w = Walk("v1", ("a", "b", "d", "f", "h"))
    assert walk_weight(g, w) == monomial_from_edges("abdfh")


def test_walk_weight_counts_repeats():
    g = loop_graph()
    w = Walk("v1", ("a", "x", "x", "h"))
    assert walk_weight(g, w) == (("a", 1), ("h", 1), ("x", 2))


def test_invalid_walks_raise():
    g = feedback_graph()
    with pytest.raises(WalkError):
        walk_vertices(g, Walk("v1", ("b",)))  # b leaves p, not v1
    with pytest.raises(WalkError):
        walk_vertices(g, Walk("nope"))
    with pytest.raises(GraphError):
        walk_vertices(g, Walk("v1", ("zz",)))


def test_self_avoidance():
    g = feedback_graph()
    assert is_self_avoiding(g, Walk("v1"))
    assert is_self_avoiding(g, Walk("v2", ("g", "h")))
    assert not is_self_avoiding(g, Walk("v1", ("a", "b", "d", "e")))


def test_vertex_sets():
    g = feedback_graph()
    assert vertex_set(g, Walk("v1")) == {"v1"}
    assert vertex_set(g, Walk("v2", ("g", "h"))) == {"v2", "s", "v3"}
    assert vertex_set(g, Walk("p", ("b", "d", "e"))) == {"p", "q", "r"}


def test_walk_weight_multiplicative_under_concatenation():
    g = feedback_graph()
    from pathminor.poly import monomial_mul

    first = Walk("v1", ("a", "b"))
    second = Walk("q", ("d", "f"))
    joined = Walk("v1", ("a", "b", "d", "f"))
    assert walk_weight(g, joined) == monomial_mul(
        walk_weight(g, first), walk_weight(g, second)
    )


def test_canonical_cycle_rotation_invariance():
    g = feedback_graph()
    rotations = [("b", "d", "e"), ("d", "e", "b"), ("e", "b", "d")]
    cycles = {canonical_cycle(g, r) for r in rotations}
    assert len(cycles) == 1
    (c,) = cycles
    assert c.vertices[0] == "p"  # lexicographically smallest on the cycle
    assert c.edges == ("b", "d", "e")


def test_canonical_cycle_loop_and_errors():
    g = loop_graph()
    c = canonical_cycle(g, ("x",))
    assert c.edges == ("x",) and c.vertices == ("p",)
    with pytest.raises(WalkError):
        canonical_cycle(g, ())
    with pytest.raises(WalkError):
        canonical_cycle(g, ("a",))  # not closed
    fg = feedback_graph()
    with pytest.raises(WalkError):
        canonical_cycle(fg, ("b", "d", "e", "b", "d", "e"))  # revisits


def test_spec_validation():
    with pytest.raises(SpecError):
        SourceSinkSpec(("u",), ())
    with pytest.raises(SpecError):
        SourceSinkSpec(("u", "u"), ("a", "b"))
    with pytest.raises(SpecError):
        SourceSinkSpec(("u", "w"), ("a", "a"))
    spec = SourceSinkSpec(("u",), ("u",))  # sources may meet sinks
    with pytest.raises(SpecError):
        check_spec(feedback_graph(), spec)


def test_out_edges_unknown_vertex():
    with pytest.raises(GraphError):
        feedback_graph().out_edges("zz")


def test_edge_is_loop():
    assert Edge("x", "u", "u").is_loop
    assert not Edge("x", "u", "w").is_loop
