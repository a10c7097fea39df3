import networkx as nx
import pytest
from hypothesis import given, settings

from lptkit.errors import ParseError
from lptkit.graph import Graph, cycle_graph, petersen_graph
from lptkit.io import (
    EDGELIST,
    GRAPH6,
    detect_format,
    format_edgelist,
    parse_edgelist,
    parse_graph,
    parse_graph6,
    parse_graph6_lines,
    to_graph6,
)

from strategies import graphs, to_nx


def test_edgelist_triangle():
    assert parse_edgelist("3 3\n0 1\n1 2\n2 0\n") == cycle_graph(3)
    assert parse_edgelist("# comment\n\n3 1\n0 2\n").edges() == [(0, 2)]


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("2 1\n0 0\n", 2, "self-loop"),
        ("3 2\n0 1\n1 0\n", 3, "duplicate"),
        ("2 1\n0 5\n", 2, "out of range"),
        ("3 2\n0 1\n", 2, "announces 2 edges"),
        ("3 1\n0 x\n", 2, "two integers"),
        ("", 1, "header"),
    ],
)
def test_edgelist_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(ParseError) as exc:
        parse_edgelist(text)
    assert exc.value.line == line and fragment in str(exc.value)


def test_graph6_known_strings():
    g = parse_graph6("D?{")
    assert to_nx(g).edges == nx.from_graph6_bytes(b"D?{").edges
    assert sorted(g.edges()) == [(0, 4), (1, 4), (2, 4), (3, 4)]
    assert to_graph6(g) == "D?{"
    assert to_graph6(petersen_graph()) == nx.to_graph6_bytes(to_nx(petersen_graph()), header=False).decode().strip()
    assert parse_graph6(">>graph6<<D?{") == g


def test_graph6_errors():
    with pytest.raises(ParseError):
        parse_graph6("D?")
    with pytest.raises(ParseError):
        parse_graph6("B@")  # padding bit set in a 3-vertex string
    with pytest.raises(ParseError):
        parse_graph6("D ?{")
    with pytest.raises(ParseError) as exc:
        parse_graph6_lines("D?{\n\nD?\n")
    assert exc.value.line == 3


@settings(max_examples=100, deadline=None)
@given(graphs(min_n=0, max_n=70))
def test_graph6_round_trip_and_networkx(g):
    s = to_graph6(g)
    assert parse_graph6(s) == g
    assert s == nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()


@settings(max_examples=50, deadline=None)
@given(graphs(min_n=1, max_n=12))
def test_edgelist_round_trip(g):
    assert parse_edgelist(format_edgelist(g)) == g


def test_detect_and_parse_files(tmp_path):
    assert detect_format("3 1\n0 1\n") == EDGELIST
    assert detect_format("D?{\n") == GRAPH6
    el = tmp_path / "g.txt"
    el.write_text(format_edgelist(petersen_graph()))
    g6 = tmp_path / "g.g6"
    g6.write_text(to_graph6(petersen_graph()) + "\n")
    assert parse_graph(str(el)) == parse_graph(g6) == petersen_graph()
    assert parse_graph("1 0\n") == Graph.empty(1)
