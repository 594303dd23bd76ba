import pytest

from pathcof.digraph import DiGraph, gen_punctured_cube
from pathcof.graphio import (
    ParseError, graph_from_json, graph_from_text, graph_to_json, graph_to_text, load_graph,
    map_from_json, parse_subset, stringify,
)


def test_json_roundtrip():
    X = stringify(gen_punctured_cube())
    assert load_graph(graph_to_json(X)) == X
    assert load_graph(graph_to_text(X)) == X


def test_text_comments():
    X = graph_from_text("# a path\nv a\nv b  # tail\n\ne a b\n")
    assert X.vertices == ("a", "b") and X.has_edge("a", "b")


@pytest.mark.parametrize("text,where", [
    ("v a\nv a\n", "line 2"),
    ("v a\ne a b\n", "line 2"),
    ("v a\nv b\ne a b\ne a b\n", "line 4"),
    ("v a\nx a\n", "line 2"),
])
def test_text_errors_name_line(text, where):
    with pytest.raises(ParseError, match=where):
        graph_from_text(text)


@pytest.mark.parametrize("text,where", [
    ('{"vertices": ["a"], "edges": [["a", "b"]]}', r"edges\[0\]"),
    ('{"vertices": ["a", "a"]}', r"vertices\[1\]"),
    ('{"vertices": "a"}', "vertices"),
    ('{"vertices": ["a"], "edges": [["a"]]}', r"edges\[0\]"),
    ('{"vertices": ["a"], "colour": 1}', "colour"),
    ('{"vertices": [\n', "line 2"),
])
def test_json_errors_name_field(text, where):
    with pytest.raises(ParseError, match=where):
        graph_from_json(text)


def test_lenient_collapses_duplicates():
    text = '{"vertices": ["a", "b"], "edges": [["a", "b"], ["a", "b"]]}'
    with pytest.raises(ParseError):
        graph_from_json(text)
    assert len(graph_from_json(text, lenient=True).edges) == 1


def test_self_loops_dropped():
    with pytest.warns(UserWarning):
        X = graph_from_text("v a\ne a a\n")
    assert not X.edges


def test_map_parsing():
    A = DiGraph(["x", "y"], [("x", "y")])
    B = DiGraph(["p"])
    f = map_from_json('{"map": {"x": "p", "y": "p"}}', A, B)
    assert f("x") == "p"
    with pytest.raises(ParseError, match="no image"):
        map_from_json('{"map": {"x": "p"}}', A, B)
    with pytest.raises(ParseError, match="map"):
        map_from_json('{"map": {"x": "p", "y": "q"}}', A, B)


def test_subset():
    X = DiGraph(["a", "b"])
    assert parse_subset("a, b", X) == ["a", "b"]
    assert parse_subset("", X) == []
    with pytest.raises(ParseError, match="--subset"):
        parse_subset("c", X)
