import pytest

from sylva.core import Digraph, Graph, MixedGraph
from sylva.errors import InputError
from sylva.formats import emit_instance, parse_instance
from sylva.hypergraphs import Dypergraph, Hypergraph


def test_graph_round_trip(k4):
    text = emit_instance(k4)
    assert parse_instance(text) == k4
    # parse then emit is the identity on canonical files
    assert emit_instance(parse_instance(text)) == text


def test_digraph_round_trip():
    d = Digraph.build(3, [(0, 1), (1, 2), (2, 0), (0, 1)])
    assert parse_instance(emit_instance(d)) == d


def test_hypergraph_round_trip():
    h = Hypergraph.build(4, [{0, 1, 2}, {2, 3}, {0, 1, 2, 3}])
    assert parse_instance(emit_instance(h)) == h


def test_dypergraph_round_trip():
    dy = Dypergraph.build(4, [({0, 1, 2}, 1), ({2, 3}, 3)])
    text = emit_instance(dy)
    assert parse_instance(text) == dy
    # head is listed first among the members
    line = text.splitlines()[1]
    assert line.split()[1] == "1"


def test_mixed_round_trip():
    m = MixedGraph.build(3, [(0, 1), (1, 2)], [(0, 2)])
    assert parse_instance(emit_instance(m)) == m


def test_comments_and_blank_lines():
    text = "# generated\n\ngraph 2 1  # header\n0 1\n"
    g = parse_instance(text)
    assert g == Graph.build(2, [(0, 1)])


def test_parse_errors():
    with pytest.raises(InputError):
        parse_instance("")
    with pytest.raises(InputError):
        parse_instance("graph 2 2\n0 1\n")  # missing line
    with pytest.raises(InputError):
        parse_instance("graph 2 1\n0 x\n")
    with pytest.raises(InputError):
        parse_instance("spaceship 1 0\n")
    with pytest.raises(InputError):
        parse_instance("graph 2 1\n1 1\n")  # loop
    with pytest.raises(InputError):
        parse_instance("hypergraph 3 1\n3 0 1\n")  # size mismatch
