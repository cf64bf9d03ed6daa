from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from propkit.graphs import (
    Decomposition,
    Graph,
    GraphError,
    Subgraph,
    automorphisms,
    canonical_form,
    corolla,
    edge_kinds,
    enumerate_isomorphisms,
    format_graph,
    full_subgraph,
    graph_io,
    graph_key,
    intersect_decompositions,
    is_acyclic,
    is_admissible,
    is_decomposition,
    is_vertical_decomposition,
    parse_graph,
    restrict_vertical,
    restricted_is_vertical,
    vertex_io,
    vertical_split,
)


@st.composite
def dags(draw, max_vertices=6, max_extra=3):
    """Random DAGs: internal edges go from lower to higher vertex numbers, plus half-edges and free edges."""
    n = draw(st.integers(0, max_vertices))
    edges = []
    for a in range(n):
        for b in range(a + 1, n):
            edges += [(a, b)] * draw(st.integers(0, 1))
    for v in range(n):
        edges += [(None, v)] * draw(st.integers(0, 2))
        edges += [(v, None)] * draw(st.integers(0, 2))
    edges += [(None, None)] * draw(st.integers(0, max_extra))
    order = draw(st.permutations(list(range(n))))
    relabel = lambda x: None if x is None else order[x]
    return Graph.from_edges(n, [(relabel(s), relabel(t)) for s, t in edges])


def chain(k: int) -> Graph:
    """``k`` vertices in a line with one input and one output half-edge."""
    edges = [(None, 0)] + [(i, i + 1) for i in range(k - 1)] + [(k - 1, None)]
    return Graph.from_edges(k, edges)


def test_vertex_and_graph_io():
    c = corolla(2, 1)
    ins, outs = vertex_io(c, 0)
    assert (len(ins), len(outs)) == (2, 1)
    free = Graph.from_edges(0, [(None, None)])
    with pytest.raises(GraphError):
        vertex_io(free, 0)
    g = chain(2)
    assert 1 in vertex_io(g, 0)[1] and 1 in vertex_io(g, 1)[0]
    assert graph_io(Graph(0, (), ())) == (frozenset(), frozenset())
    assert graph_io(free) == (frozenset({0}), frozenset({0}))
    for n, m in [(0, 0), (3, 2), (1, 4)]:
        i, o = graph_io(corolla(n, m))
        assert (len(i), len(o)) == (n, m)


@given(dags())
def test_edge_kinds_partition(g):
    kinds = edge_kinds(g)
    union = set().union(*kinds.values())
    assert union == set(g.edges)
    assert sum(len(v) for v in kinds.values()) == g.n_edges


def _has_cycle_brute(g: Graph) -> bool:
    succ = {v: set() for v in g.vertices}
    for e in g.edges:
        if g.src[e] is not None and g.tgt[e] is not None:
            succ[g.src[e]].add(g.tgt[e])
    for start in g.vertices:
        frontier, seen = set(succ[start]), set()
        while frontier:
            v = frontier.pop()
            if v == start:
                return True
            if v not in seen:
                seen.add(v)
                frontier |= succ[v]
    return False


def test_acyclic_examples():
    assert is_acyclic(Graph(0, (), ()))
    assert not is_acyclic(Graph.from_edges(2, [(0, 1), (1, 0)]))
    assert not is_acyclic(Graph.from_edges(1, [(0, 0)]))


@given(dags(max_vertices=8), st.lists(st.tuples(st.integers(0, 7), st.integers(0, 7)), max_size=3))
def test_acyclic_agrees_with_path_search(g, extra):
    edges = [(g.src[e], g.tgt[e]) for e in g.edges]
    edges += [(a, b) for a, b in extra if a < g.n_vertices and b < g.n_vertices]
    h = Graph.from_edges(g.n_vertices, edges)
    assert is_acyclic(h) == (not _has_cycle_brute(h))


def test_admissible_examples():
    g = chain(2)
    assert is_admissible(full_subgraph(g))
    assert is_admissible(Subgraph(g, frozenset(g.edges), frozenset()))
    assert not is_admissible(Subgraph(g, frozenset({0}), frozenset({0})))


def test_vertical_decomposition_examples():
    g = chain(2)
    assert is_vertical_decomposition(Decomposition((full_subgraph(g),)))
    top = Subgraph(g, frozenset({1, 2}), frozenset({1}))
    bottom = Subgraph(g, frozenset({0, 1}), frozenset({0}))
    assert is_vertical_decomposition(Decomposition((top, bottom)))
    assert vertical_split(g, {0}) == Decomposition((top, bottom))
    broken = Subgraph(g, frozenset({2}), frozenset({1}))
    assert not is_decomposition(Decomposition((broken, bottom)))
    with pytest.raises(GraphError):
        vertical_split(g, {1})


def test_restrict_vertical_examples():
    g = chain(3)
    d = vertical_split(g, {0})
    assert restrict_vertical(full_subgraph(g), d) == d
    # a subgraph inside the upper part: its lower piece has no vertices
    sub = Subgraph(g, frozenset({1, 2, 3}), frozenset({1, 2}))
    assert is_admissible(sub)
    low = restrict_vertical(sub, d).parts[1]
    assert low.vertices == frozenset()
    assert restricted_is_vertical(sub, d)


def _lower_sets(g: Graph) -> list[frozenset]:
    out = []
    for k in range(g.n_vertices + 1):
        for s in itertools.combinations(g.vertices, k):
            s = frozenset(s)
            if all(not (g.tgt[e] in s and g.src[e] is not None and g.src[e] not in s) for e in g.edges):
                out.append(s)
    return out


def _admissible_subgraphs(g: Graph, limit: int = 40) -> list[Subgraph]:
    out = []
    for k in range(g.n_vertices + 1):
        for vs in itertools.combinations(g.vertices, k):
            vs = frozenset(vs)
            es = frozenset(e for e in g.edges if g.src[e] in vs or g.tgt[e] in vs)
            out.append(Subgraph(g, es, vs))
            if len(out) >= limit:
                return out
    return out


@settings(max_examples=60, deadline=None)
@given(dags(max_vertices=5, max_extra=1))
def test_restriction_is_vertical(g):
    for lower in _lower_sets(g)[:6]:
        d = vertical_split(g, lower)
        assert is_vertical_decomposition(d)
        for sub in _admissible_subgraphs(g, 12):
            assert restricted_is_vertical(sub, d)


def test_intersection_examples():
    g = chain(3)
    a = vertical_split(g, {0})
    trivial = Decomposition((full_subgraph(g),))
    assert [p for p in intersect_decompositions(a, trivial).parts] == list(a.parts)
    b = vertical_split(g, {0, 1})
    both = intersect_decompositions(a, b)
    assert len(both.parts) == 4 and any(not p.vertices for p in both.parts)
    assert is_decomposition(both)


@settings(max_examples=50, deadline=None)
@given(dags(max_vertices=5, max_extra=1), st.data())
def test_intersection_is_decomposition(g, data):
    lowers = _lower_sets(g)
    a = vertical_split(g, data.draw(st.sampled_from(lowers)))
    b = vertical_split(g, data.draw(st.sampled_from(lowers)))
    assert is_decomposition(intersect_decompositions(a, b))


def test_isomorphism_examples():
    free = Graph.from_edges(0, [(None, None)])
    assert len(enumerate_isomorphisms(free, free)) == 1
    assert len(automorphisms(corolla(2, 1))) == 2
    assert enumerate_isomorphisms(corolla(2, 1), corolla(1, 2)) == []
    assert enumerate_isomorphisms(chain(2), chain(3)) == []


def _brute_isos(g: Graph, h: Graph) -> set:
    out = set()
    if (g.n_vertices, g.n_edges) != (h.n_vertices, h.n_edges):
        return out
    for vm in itertools.permutations(range(h.n_vertices)):
        f = lambda x: None if x is None else vm[x]
        for em in itertools.permutations(range(h.n_edges)):
            if all((f(g.src[e]), f(g.tgt[e])) == (h.src[em[e]], h.tgt[em[e]]) for e in g.edges):
                out.add((tuple(em), tuple(vm)))
    return out


@settings(max_examples=40, deadline=None)
@given(dags(max_vertices=3, max_extra=1))
def test_isomorphisms_match_brute_force(g):
    if g.n_edges > 6:
        return
    assert set(automorphisms(g)) == _brute_isos(g, g)


@settings(max_examples=40, deadline=None)
@given(dags(max_vertices=5, max_extra=1))
def test_automorphisms_form_a_group(g):
    auts = automorphisms(g)
    if len(auts) > 200:
        return
    elements = set(auts)
    ident = (tuple(g.edges), tuple(g.vertices))
    assert ident in elements
    for (e1, v1), (e2, v2) in itertools.product(auts[:12], repeat=2):
        comp = (tuple(e1[e2[e]] for e in g.edges), tuple(v1[v2[v]] for v in g.vertices))
        assert comp in elements


@settings(max_examples=60, deadline=None)
@given(dags(max_vertices=6), st.randoms())
def test_canonical_form_is_complete_invariant(g, rnd):
    vperm = list(g.vertices)
    rnd.shuffle(vperm)
    eperm = list(g.edges)
    rnd.shuffle(eperm)
    f = lambda x: None if x is None else vperm[x]
    src = [None] * g.n_edges
    tgt = [None] * g.n_edges
    for e in g.edges:
        src[eperm[e]], tgt[eperm[e]] = f(g.src[e]), f(g.tgt[e])
    h = Graph(g.n_vertices, tuple(src), tuple(tgt))
    assert graph_key(g) == graph_key(h)
    assert enumerate_isomorphisms(g, canonical_form(g)[0])


def test_graph_key_separates():
    assert graph_key(chain(2)) != graph_key(Graph.from_edges(2, [(None, 0), (0, None), (None, 1), (1, None)]))


@given(dags())
def test_text_round_trip(g):
    assert parse_graph(format_graph(g)) == g


def test_parse_errors():
    with pytest.raises(GraphError):
        parse_graph("vertices 1\nedge 1 * 0")
    with pytest.raises(GraphError):
        parse_graph("bogus")
    with pytest.raises(GraphError):
        Graph(1, (0,), (3,))
