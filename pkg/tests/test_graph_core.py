import pytest
from hypothesis import given, settings, strategies as st

from conftest import edgeless, make
from fpoly.gallery import example2_graph, example3_graph
from fpoly.graph_core import (
    GraphFormatError, Multigraph, boundary, cut_edges, degree, degrees, f_sum, format_graph,
    induced_edges, parse_graph,
)


def test_parse_example1_text():
    g = parse_graph("vertex a 2\nvertex b 2\nedge a b 2\n")
    assert g.vertex_count == 2
    assert g.edges == ((0, 1), (0, 1))
    assert g.f == (2, 2)
    assert g.names == ("a", "b")


def test_parse_comments_and_multiplicity_ids():
    g = parse_graph("# header\nvertex x 1\nvertex y 3  # trailing\nvertex z 1\n"
                    "edge x y\nedge y z 3\nedge x z\n")
    assert g.edges == ((0, 1), (1, 2), (1, 2), (1, 2), (0, 2))


@pytest.mark.parametrize("text, fragment", [
    ("", "at least 1 vertex"),
    ("# nothing\n", "at least 1 vertex"),
    ("vertex a 1\nedge a a\n", "loop"),
    ("vertex a 1\nedge a b\n", "unknown vertex"),
    ("vertex a 0\n", "positive"),
    ("vertex a -2\n", "positive"),
    ("vertex a x\n", "integer"),
    ("vertex a 1\nvertex b 1\nedge a b 0\n", "multiplicity"),
    ("vertex a 1\nnode b\n", "unknown directive"),
    ("vertex a 1\nvertex a 2\n", "duplicate"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(GraphFormatError, match=fragment):
        parse_graph(text)


def test_parse_error_reports_line_number():
    with pytest.raises(GraphFormatError) as info:
        parse_graph("vertex a 1\n\nedge a a\n")
    assert info.value.line == 3


def test_multigraph_rejects_loops_and_empty():
    with pytest.raises(ValueError):
        Multigraph(2, ((1, 1),))
    with pytest.raises(ValueError):
        Multigraph(0, ())


def test_induced_edges(ex1, ex2_3):
    assert induced_edges(ex1, [0, 1]) == {0, 1}
    assert induced_edges(ex1, []) == frozenset()
    # cycle vertices of example2 (u = 0, c1, c2): the 3 cycle edges only
    assert induced_edges(ex2_3, [0, 1, 2]) == {0, 1, 2}


def test_boundary(ex2_3):
    assert boundary(ex2_3, [0]) == {0, 2, 3, 4}
    assert boundary(ex2_3, range(4)) == frozenset()
    g = example3_graph(1)
    assert boundary(g, [0, 1, 2]) == {0}


def test_cut_edges(ex1):
    g = example3_graph(2)
    assert len(cut_edges(g, [0], [1])) == 2
    assert cut_edges(g, [], [1]) == frozenset()
    assert cut_edges(ex1, [0], [1]) == {0, 1}
    with pytest.raises(ValueError):
        cut_edges(g, [0, 1], [1])


@pytest.mark.parametrize("k", [1, 2, 3])
def test_degree_example3(k):
    g = example3_graph(k)
    assert all(degree(g, v) == 2 * k + 1 for v in range(6))


def test_degree_misc(ex2_3):
    assert degree(edgeless(), 1) == 0
    assert degree(ex2_3, 0) == 4
    with pytest.raises(ValueError):
        degree(ex2_3, 9)


def test_f_sum():
    g = example2_graph(5)
    # u, u' plus r cycle vertices
    for r in range(5):
        U = [0, 5] + list(range(1, r + 1))
        assert f_sum(g, U) == r + 4
    assert f_sum(g, []) == 0
    assert f_sum(example3_graph(1), [0, 1, 2]) == 6
    with pytest.raises(ValueError):
        f_sum(g, [42])


@st.composite
def weighted_graphs(draw, max_vertices=6, max_edges=9, max_f=3):
    n = draw(st.integers(1, max_vertices))
    f = draw(st.lists(st.integers(1, max_f), min_size=n, max_size=n))
    edges = []
    if n >= 2:
        pairs = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(
            lambda p: p[0] != p[1])
        edges = draw(st.lists(pairs, max_size=max_edges))
    return make(f, edges)


@settings(max_examples=150, deadline=None)
@given(weighted_graphs(), st.data())
def test_handshake_and_partition(g, data):
    U = data.draw(st.sets(st.integers(0, g.vertex_count - 1)))
    inner, cut = induced_edges(g, U), boundary(g, U)
    d = degrees(g)
    assert 2 * len(inner) + len(cut) == sum(d[v] for v in U)
    incident = {i for i, (a, b) in enumerate(g.edges) if a in U or b in U}
    assert inner | cut == incident and not inner & cut
    assert all(degree(g, v) == len(boundary(g, [v])) for v in range(g.vertex_count))


@settings(max_examples=150, deadline=None)
@given(weighted_graphs())
def test_format_parse_roundtrip(g):
    text = format_graph(g)
    back = parse_graph(text)
    assert back == g
    assert format_graph(back) == text
