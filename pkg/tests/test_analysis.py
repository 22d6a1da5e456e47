import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import dense_rank

from pclie.analysis import (
    Decomposition,
    Variety,
    adjacency_hull,
    centralizer_computed,
    centralizer_predicted,
    compare_centralizer,
    format_vertices,
    grading_consistent,
    is_decomposable,
    split,
    component_split,
    verify_split,
)
from pclie.errors import ContextMismatch, InputError
from pclie.graphs import Graph, all_graphs, complement, is_connected
from pclie.linalg import Subspace
from pclie.nilpotent import build_structure
from pclie.scalars import GF, QQ


def test_variety_parse():
    assert Variety.parse("metabelian") == Variety("metabelian", 4)
    assert Variety.parse("nilpotent:3") == Variety("nilpotent", 3)
    assert str(Variety.parse("free:5")) == "free:5"
    for bad in ("nilpotent", "nilpotent:1", "lie:3", "nilpotent:x"):
        with pytest.raises(InputError):
            Variety.parse(bad)


def test_format_vertices():
    assert format_vertices({3, 1}) == "{a1,a3}"
    assert format_vertices(()) == "{}"


def test_theorem1_split_p3():
    tbl = build_structure(Graph.path(3), 3)
    x = tbl.element("a1 + a2 + a3")
    parts = component_split(tbl.graph, x)
    assert [(sorted(s), str(p)) for s, p in parts] == [([1, 3], "1*a1 + 1*a3"), ([2], "1*a2")]


def test_theorem1_split_single_component():
    tbl = build_structure(Graph.empty(3), 3)
    x = tbl.element("a1 + [a2,a3]")
    parts = component_split(tbl.graph, x)
    assert len(parts) == 1 and parts[0][1] == x
    with pytest.raises(InputError):
        component_split(tbl.graph, tbl.zero())


def test_adjacency_hull():
    g = Graph(4, [(1, 2), (1, 3), (2, 3), (3, 4)])
    assert adjacency_hull(g, {1, 2}) == {3}
    assert adjacency_hull(g, {3}) == {1, 2, 4}
    assert adjacency_hull(g, {1, 4}) == {3}


def _independent_kernel_dim(tbl, x, domain):
    xv = tbl.vector(x)
    images = [tbl.bracket_vectors({j: tbl.field.one}, xv) for j in domain]
    # kernel dimension = |domain| - rank of the image vectors
    return len(domain) - dense_rank(images)


@pytest.mark.parametrize("g,m,expr,expected", [
    (Graph.empty(2), 2, "a1", "span{1*a1}"),
    (Graph.path(3), 3, "a2", "span{1*a1, 1*a2, 1*a3, 1*[a3,a1]}"),
    (Graph.complete(2), 3, "a1", "span{1*a1, 1*a2}"),
    (Graph.path(3), 3, "a1 + a2 + a3", "span{1*a1 + 1*a3, 1*a2}"),
])
def test_centralizer_examples(g, m, expr, expected):
    from pclie.analysis import format_subspace
    tbl = build_structure(g, m)
    x = tbl.element(expr)
    cmp = compare_centralizer(tbl, x)
    assert cmp.match
    assert format_subspace(cmp.predicted, tbl) == expected
    domain = tbl.indices_upto(cmp.window)
    assert cmp.computed.dim == _independent_kernel_dim(tbl, x, domain)


def test_full_kernel_includes_truncation_centre():
    tbl = build_structure(Graph.empty(2), 2)
    x = tbl.element("a1 + a2")
    full = centralizer_computed(tbl, x)
    assert full == Subspace(QQ, tbl.dim, [tbl.vector(x), tbl.vector(tbl.element("[a2,a1]"))])
    assert compare_centralizer(tbl, x).match


def test_predicted_is_sound():
    rng = random.Random(11)
    for g in list(all_graphs(4))[::5]:
        tbl = build_structure(g, 4)
        for _ in range(4):
            i = rng.randrange(tbl.dim)
            x = tbl.basis_element(i)
            pred = centralizer_predicted(tbl, x)
            xv = tbl.vector(x)
            window = 4 - tbl.degrees[i]
            for row in pred.rows:
                if all(tbl.degrees[k] <= window for k in row):
                    assert not tbl.bracket_vectors(row, xv)


def test_centralizer_errors():
    tbl = build_structure(Graph.empty(2), 2)
    with pytest.raises(InputError):
        compare_centralizer(tbl, tbl.zero())
    other = build_structure(Graph.empty(2), 3)
    with pytest.raises(ContextMismatch):
        compare_centralizer(tbl, other.generator(1))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 63), st.lists(st.integers(-2, 2), min_size=4, max_size=4))
def test_centralizer_matches_on_generator_combinations(mask, coeffs):
    edges = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
    g = Graph(4, [e for b, e in enumerate(edges) if mask >> b & 1])
    tbl = build_structure(g, 3)
    x = tbl.zero()
    for i, c in enumerate(coeffs, 1):
        x = x + c * tbl.generator(i)
    if not x:
        return
    assert compare_centralizer(tbl, x).match


def test_is_decomposable():
    assert is_decomposable(Graph.path(3)).decomposable
    assert not is_decomposable(Graph.empty(3)).decomposable
    assert is_decomposable(Graph.complete(3)).components == [{1}, {2}, {3}]
    with pytest.raises(InputError):
        is_decomposable(Graph.empty(1))
    for n in (2, 3, 4):
        for g in all_graphs(n):
            assert is_decomposable(g).decomposable == (not is_connected(complement(g)))


def test_split_examples():
    d = split(Graph.path(3))
    assert d.parts == [{1, 3}, {2}] and d.report.ok
    d = split(Graph.complete(3))
    assert d.parts == [{1}, {2, 3}] and d.report.ok
    d = split(Graph.complete(3), full=True)
    assert d.parts == [{1}, {2}, {3}] and d.report.ok
    with pytest.raises(InputError):
        split(Graph.empty(2))


@pytest.mark.parametrize("variety", ["nilpotent:2", "nilpotent:4", "metabelian:4", "free:3"])
def test_split_all_decomposable_n4(variety):
    for g in all_graphs(4):
        if is_decomposable(g).decomposable:
            d = split(g, variety)
            assert d.report.ok, (g, variety)
            assert grading_consistent(g, d, variety)


def test_split_over_prime_field():
    d = split(Graph(4, [(1, 3), (1, 4), (2, 3), (2, 4)]), "nilpotent:3", GF(3))
    assert d.report.ok
    assert "GF(3)" in d.to_text()


def test_verify_split_detects_failures():
    tbl = build_structure(Graph.complete(2), 2)
    whole = Subspace(QQ, tbl.dim, [{0: QQ.one}, {1: QQ.one}])
    bad = Decomposition("subspace-split", subspaces=[whole, whole])
    r = verify_split(tbl, bad)
    assert not r.checks["independent"] and not r.ok

    tbl = build_structure(Graph.empty(2), 2)
    a1 = Subspace(QQ, tbl.dim, [{0: QQ.one}])
    a2 = Subspace(QQ, tbl.dim, [{1: QQ.one}])
    r = verify_split(tbl, Decomposition("subspace-split", subspaces=[a1, a2]))
    assert not r.checks["spanning"] and not r.checks["cross_bracket"]


def test_verify_split_rejects_foreign_subspace():
    tbl = build_structure(Graph.complete(2), 2)
    s = Subspace(GF(2), tbl.dim, [{0: GF(2).one}])
    with pytest.raises(ContextMismatch):
        verify_split(tbl, Decomposition("subspace-split", subspaces=[s, s]))


def test_decomposition_text_is_stable():
    text = split(Graph.path(3), "nilpotent:3").to_text()
    assert text.splitlines()[:5] == [
        "kind: vertex-split", "variety: nilpotent:3", "field: QQ", "A1: {a1,a3}", "A2: {a2}"]
    assert text.rstrip().endswith("verified: yes")
    assert split(Graph.path(3), "nilpotent:3").to_text() == text


def test_grading_consistent_detects_wrong_parts():
    g = Graph.path(3)
    wrong = Decomposition("vertex-split", parts=[frozenset({1}), frozenset({2, 3})])
    assert not grading_consistent(g, wrong, "nilpotent:3")
