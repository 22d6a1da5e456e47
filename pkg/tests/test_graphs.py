import pytest
from hypothesis import given
from hypothesis import strategies as st

from pclie.errors import InputError
from pclie.graphs import (
    Graph,
    adjacent_to_all,
    all_graphs,
    complement,
    connected_components,
    induced_subgraph,
    is_connected,
)


@st.composite
def graphs(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, chosen)


def test_complement_examples():
    assert complement(Graph.complete(2)) == Graph.empty(2)
    assert complement(Graph.path(3)) == Graph(3, [(1, 3)])
    assert complement(Graph.empty(3)) == Graph.complete(3)


def test_components_examples():
    assert connected_components(Graph(3, [(1, 3)])) == [{1, 3}, {2}]
    assert connected_components(Graph.complete(3)) == [{1, 2, 3}]
    assert connected_components(Graph.empty(2)) == [{1}, {2}]


def test_induced_examples(p3):
    sub, idx = induced_subgraph(p3, {1, 3})
    assert sub == Graph.empty(2) and idx == [1, 3]
    assert induced_subgraph(p3, {1, 2})[0] == Graph.complete(2)
    assert induced_subgraph(p3, {1, 2, 3}) == (p3, [1, 2, 3])
    with pytest.raises(InputError):
        induced_subgraph(p3, {4})


def test_adjacent_to_all(p3):
    assert adjacent_to_all(p3, 2, {1, 3})
    assert not adjacent_to_all(p3, 1, {3})
    assert adjacent_to_all(p3, 1, set())
    with pytest.raises(InputError):
        adjacent_to_all(p3, 1, {1, 2})


@pytest.mark.parametrize("edges", [[(1, 1)], [(1, 2), (2, 1)], [(1, 5)]])
def test_invalid_graphs(edges):
    with pytest.raises(InputError):
        Graph(3, edges)


def test_file_format_roundtrip(tmp_path):
    g = Graph(4, [(1, 2), (3, 4)])
    assert Graph.parse(g.to_text()) == g
    text = "# comment\n\nn 3  # three\ne 1 2\ne 2 3\n"
    assert Graph.parse(text) == Graph.path(3)
    f = tmp_path / "g.g"
    f.write_text(text)
    assert Graph.load(f) == Graph.path(3)


@pytest.mark.parametrize("text", [
    "", "e 1 2", "n 2\ne 1 1", "n 2\ne 1 2\ne 2 1", "n 2\ne 1 3", "n x", "n 2\nq 1 2",
])
def test_file_format_errors(text):
    with pytest.raises(InputError):
        Graph.parse(text)


def test_all_graphs_count():
    assert sum(1 for _ in all_graphs(4)) == 64
    # connected labelled graphs on 4 vertices: 38
    assert sum(is_connected(g) for g in all_graphs(4)) == 38


@given(graphs())
def test_complement_involution(g):
    assert complement(complement(g)) == g


@given(graphs())
def test_components_partition(g):
    comps = connected_components(g)
    assert sorted(v for c in comps for v in c) == list(g.vertices)
    assert [min(c) for c in comps] == sorted(min(c) for c in comps)
    label = {v: k for k, c in enumerate(comps) for v in c}
    for i, j in g.edges:
        assert label[i] == label[j]
    for c in comps:
        # every component is internally connected
        sub, _ = induced_subgraph(g, c)
        assert len(connected_components(sub)) == 1


@given(graphs(), st.data())
def test_induced_commutes_with_complement(g, data):
    vs = data.draw(st.sets(st.sampled_from(list(g.vertices)), min_size=1))
    assert complement(induced_subgraph(g, vs)[0]) == induced_subgraph(complement(g), vs)[0]
