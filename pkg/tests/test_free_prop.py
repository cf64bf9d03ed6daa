from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from helpers import relabel_diagram
from propkit.free_prop import (
    Decoration,
    DecorationError,
    FreeMorphism,
    FreeProp,
    HComp,
    Id,
    PropMap,
    adjunction_transpose,
    canonicalize,
    enumerate_hom,
    enumerate_morphisms,
    evaluate,
    extend,
    format_term,
    free_functor_map,
    parse_decoration,
    parse_term,
)
from propkit.free_prop.extend import evaluate_layered, random_lower_choice
from propkit.free_prop.terms import TermSyntaxError, TermTypeError
from propkit.graphs import corolla
from propkit.kernel import Perm, sigma_xy
from propkit.megagraph import Arrow, FreeMegaMap, FreeMegagraph, Generator, MegagraphError, underlying_megagraph
from propkit.prop_core import PropError
from propkit.prop_core.finite import EndProp, terminal_prop

M = FreeMegagraph(["c"], [Generator("m", ("c", "c"), ("c",))])
MD = FreeMegagraph(["c"], [Generator("m", ("c", "c"), ("c",)), Generator("d", ("c",), ("c", "c"))])
TWO = FreeMegagraph(["a", "b"], [Generator("f", ("a",), ("b", "a")), Generator("g", ("a", "b"), ("b",))])
SWAP = Perm([2, 1])


@pytest.fixture(scope="module")
def F():
    return FreeProp(M)


@pytest.fixture(scope="module")
def window():
    G = FreeProp(MD)
    return G, enumerate_morphisms(G, 2, 2)


# -- generators, identities and compositions -----------------------------------


def test_generator_corolla(F):
    m = F.generator("m")
    assert (m.source, m.target, m.n_vertices) == (("c", "c"), ("c",), 1)
    assert F.corolla("m") == m


def test_corolla_of_an_acted_arrow():
    G = FreeProp(TWO)
    for x in TWO.arrows():
        assert G.corolla(x) == G.act(G.generator(x.gen), sigma=x.sigma, tau=x.tau)
        assert G.corolla(x).source == TWO.source(x)
        assert G.corolla(x).target == TWO.target(x)


def test_every_one_vertex_decoration_is_a_corolla():
    G = FreeProp(TWO)
    corollas = {G.corolla(x) for x in TWO.arrows()}
    for gen in TWO.generators:
        n, m = len(gen.source), len(gen.target)
        g = corolla(n, m)
        ins = tuple(e for e in g.edges if g.tgt[e] == 0)
        outs = tuple(e for e in g.edges if g.src[e] == 0)
        for x in TWO.arrows():
            if x.gen != gen.name:
                continue
            for gin in itertools.permutations(ins):
                for gout in itertools.permutations(outs):
                    d0 = [None] * g.n_edges
                    for e, c in zip(ins, TWO.source(x)):
                        d0[e] = c
                    for e, c in zip(outs, TWO.target(x)):
                        d0[e] = c
                    dec = Decoration(g, tuple(d0), (x,), (ins,), (outs,), gin, gout)
                    dec.check(TWO)
                    assert canonicalize(dec.to_diagram()) in corollas


def test_identity_laws(F, window):
    c = F.identity("c")
    assert (c.source, c.target) == (("c",), ("c",))
    assert canonicalize(c.diagram) == c
    for f in enumerate_hom(F, ("c", "c", "c"), ("c",), 2):
        assert F.compose_v(c, f) == f
        assert F.compose_v(f, F.identities(("c",) * 3)) == f
    with pytest.raises(PropError):
        F.identity("z")


def test_two_vertex_tree(F):
    m = F.generator("m")
    t = F.compose_v(m, F.compose_h(m, F.identity("c")))
    assert (t.source, t.target, t.n_vertices) == (("c",) * 3, ("c",), 2)
    assert t == F.from_term("vcomp(gen(m),hcomp(gen(m),id(c)))")
    with pytest.raises(PropError):
        F.compose_v(m, m)


def test_vertical_associativity(window):
    G, ms = window
    rng = random.Random(0)
    by_target: dict = {}
    for f in ms:
        by_target.setdefault(f.target, []).append(f)
    checked = 0
    for _ in range(300):
        h = rng.choice(ms)
        gs = [g for g in by_target.get(h.source, [])]
        if not gs:
            continue
        g = rng.choice(gs)
        fs = by_target.get(g.source)
        if not fs:
            continue
        f = rng.choice(fs)
        assert G.compose_v(G.compose_v(h, g), f) == G.compose_v(h, G.compose_v(g, f))
        checked += 1
    assert checked > 100


def test_horizontal_composition(window):
    G, ms = window
    a, b = G.identity("c"), G.compose_h(G.identity("c"), G.identity("c"))
    assert G.compose_h(a, a).source == ("c", "c") and G.compose_h(a, a) == b
    rng = random.Random(1)
    for _ in range(100):
        f, g, h = (rng.choice(ms) for _ in range(3))
        assert G.compose_h(G.compose_h(f, g), h) == G.compose_h(f, G.compose_h(g, h))
        n, m = len(f.source), len(f.target)
        p, q = len(g.source), len(g.target)
        swapped = G.act(G.compose_h(f, g), sigma=sigma_xy(n, p), tau=sigma_xy(q, m))
        assert swapped == G.compose_h(g, f)


def test_actions(window):
    G, ms = window
    rng = random.Random(2)
    for f in ms[:200]:
        n, m = len(f.source), len(f.target)
        assert G.act(f, Perm.identity(n), Perm.identity(m)) == f
        s = rng.choice(list(Perm.all(n)))
        t = rng.choice(list(Perm.all(m)))
        assert G.act(G.act(f, sigma=s), tau=t) == G.act(G.act(f, tau=t), sigma=s) == G.act(f, s, t)
    with pytest.raises(ValueError):
        G.act(G.generator("m"), sigma=Perm.identity(3))


def test_vertical_compatibility_with_actions(window):
    G, ms = window
    m, d = G.generator("m"), G.generator("d")
    # f o (sigma_* g) = (sigma^* f) o g
    for f, g in [(m, d), (G.compose_v(d, m), d), (m, G.compose_h(G.identity("c"), G.identity("c")))]:
        for s in Perm.all(2):
            assert G.compose_v(f, G.act(g, tau=s)) == G.compose_v(G.act(f, sigma=s), g)


# -- canonical forms -------------------------------------------------------------


def test_swap_is_distinct(F):
    m = F.generator("m")
    assert F.act(m, sigma=SWAP) != m
    assert len(enumerate_hom(F, ("c", "c"), ("c",), 1)) == 2


@settings(max_examples=40, deadline=None)
@given(st.randoms(use_true_random=False))
def test_relabelled_copies_canonicalize_equally(rnd):
    G = FreeProp(MD)
    pool = enumerate_morphisms(G, 2, 2)
    f = rnd.choice(pool)
    assert canonicalize(relabel_diagram(f.diagram, rnd)) == f


def test_interior_move_preserves_class():
    G = FreeProp(MD)
    f = G.compose_v(G.generator("m"), G.generator("d"))  # two parallel edges between the vertices
    dec = Decoration.from_diagram(f.diagram)
    dec.check(MD)
    top = next(v for v, x in enumerate(dec.d1) if x.gen == "m")
    bottom = 1 - top
    a, b = dec.vin[top]
    moved = dec.interior_move(top, bottom, {a: b, b: a}, MD)
    moved.check(MD)
    assert moved != dec
    assert canonicalize(moved.to_diagram()) == f


def test_exterior_move_preserves_class(F):
    f = F.from_term("vcomp(gen(m),hcomp(gen(m),id(c)))")
    dec = Decoration.from_diagram(f.diagram)
    low = next(v for v in range(2) if all(dec.graph.src[e] is None for e in dec.vin[v]))
    a, b = dec.vin[low]
    moved = dec.exterior_move(low, "in", {a: b, b: a}, M)
    moved.check(M)
    assert canonicalize(moved.to_diagram()) == f
    with pytest.raises(DecorationError):
        dec.exterior_move(low, "out", {dec.vout[low][0]: dec.vout[low][0]}, M)


def test_port_move_and_relabel():
    G = FreeProp(TWO)
    f = G.compose_v(G.act(G.generator("g"), sigma=SWAP), G.generator("f"))
    dec = Decoration.from_diagram(f.diagram)
    for v in range(dec.graph.n_vertices):
        for side, k in (("in", len(dec.vin[v])), ("out", len(dec.vout[v]))):
            for gamma in Perm.all(k):
                moved = dec.port_move(v, side, gamma, TWO)
                moved.check(TWO)
                assert canonicalize(moved.to_diagram()) == f
    e_perm = list(reversed(range(dec.graph.n_edges)))
    v_perm = list(reversed(range(dec.graph.n_vertices)))
    assert canonicalize(dec.relabel(e_perm, v_perm).to_diagram()) == f


def test_decoration_dump_round_trip():
    G = FreeProp(TWO)
    dec = Decoration.from_diagram(G.compose_v(G.act(G.generator("g"), sigma=SWAP), G.generator("f")).diagram)
    assert parse_decoration(dec.dump()) == dec
    with pytest.raises(DecorationError):
        parse_decoration("vertices 1\nbogus line")


def test_bad_decoration_rejected():
    g = corolla(2, 1)
    x = Arrow(Perm.identity(1), "m", Perm.identity(2))
    ins = tuple(e for e in g.edges if g.tgt[e] == 0)
    outs = tuple(e for e in g.edges if g.src[e] == 0)
    wrong_colors = Decoration(g, ("c", "z", "c"), (x,), (ins,), (outs,), ins, outs)
    with pytest.raises(DecorationError):
        wrong_colors.check(M)


# -- enumeration ---------------------------------------------------------------


def test_enumeration_counts(F):
    assert [len(enumerate_hom(F, ("c",), ("c",), b)) for b in range(4)] == [1, 1, 1, 1]
    assert len(enumerate_hom(F, ("c", "c"), ("c",), 1)) == 2
    assert len(enumerate_hom(F, ("c",) * 3, ("c",), 2)) == 12
    assert enumerate_hom(F, ("c",) * 3, ("c",), 2) == enumerate_hom(F, ("c",) * 3, ("c",), 2)
    with pytest.raises(ValueError):
        enumerate_hom(F, ("c",), ("c",), -1)


def test_enumeration_is_duplicate_free_and_bounded(window):
    G, ms = window
    assert len(set(ms)) == len(ms)
    assert all(f.n_vertices <= 2 and len(f.source) <= 2 and len(f.target) <= 2 for f in ms)


# -- terms -----------------------------------------------------------------------


@pytest.mark.parametrize(
    "text",
    ["id(c)", "gen(m)", "hcomp()", "hcomp(id(c),gen(m))", "act((2 1),_,gen(m))", "vcomp(gen(m),hcomp(gen(m),id(c)))"],
)
def test_term_round_trip(text):
    assert format_term(parse_term(text)) == text


def test_term_errors(F):
    with pytest.raises(TermSyntaxError) as err:
        parse_term("vcomp(gen(m)")
    assert err.value.pos >= 0
    with pytest.raises(TermSyntaxError):
        parse_term("gen(m) junk")
    with pytest.raises(TermTypeError):
        F.from_term("vcomp(gen(m),gen(m))")
    with pytest.raises(TermTypeError):
        F.from_term("gen(q)")
    assert parse_term("hcomp()") == HComp(())
    assert F.from_term("hcomp()") == F.unit()
    assert parse_term("id(<a.b>)") == Id(("a", "b"))


# -- evaluation and the adjunction ----------------------------------------------


def test_evaluate_binary_tree_in_endprop(F):
    E = EndProp({"c": (0, 1)})
    op = lambda x, y: (x + 2 * y) % 2 if x else 1 - y  # not associative, not commutative
    m = E.make(("c", "c"), ("c",), lambda v: (op(*v),))
    t = F.from_term("vcomp(gen(m),hcomp(gen(m),id(c)))")
    K = PropMap(M, E, {"c": "c"}, {"m": m})
    got = K(t)
    for x, y, z in itertools.product((0, 1), repeat=3):
        assert E.apply(got, (x, y, z)) == (op(op(x, y), z),)


def test_extend_to_terminal(window):
    G, ms = window
    T = terminal_prop()
    f = FreeMegaMap(MD, underlying_megagraph(T, 2), {"c": T.colors[0]}, {
        g.name: T.hom((T.colors[0],) * len(g.source), (T.colors[0],) * len(g.target))[0] for g in MD.generators
    })
    K = extend(f)
    for phi in ms:
        assert K(phi) == T.hom(K.on_colors(phi.source), K.on_colors(phi.target))[0]


def test_lower_choice_independence(window):
    G, ms = window
    rng = random.Random(7)
    E = EndProp({"c": (0, 1, 2)})
    images = {
        "m": E.make(("c", "c"), ("c",), lambda v: ((v[0] * 2 + v[1]) % 3,)),
        "d": E.make(("c",), ("c", "c"), lambda v: (v[0], (v[0] + 1) % 3)),
    }
    for phi in ms:
        if phi.n_vertices < 2:
            continue
        d = relabel_diagram(phi.diagram, rng)
        one = evaluate(d, E, lambda c: c, images.__getitem__, random_lower_choice(rng))
        two = evaluate(d, E, lambda c: c, images.__getitem__, random_lower_choice(rng))
        assert E.equal(one, two)
        assert E.equal(one, evaluate_layered(d, E, lambda c: c, images.__getitem__))


def test_transpose_round_trips(window):
    G, ms = window
    T = EndProp({"x": (0, 1)})
    U = underlying_megagraph(T, 2)
    rng = random.Random(4)
    binary, cobinary = T.hom(("x", "x"), ("x",)), T.hom(("x",), ("x", "x"))
    for _ in range(4):
        f = FreeMegaMap(MD, U, {"c": "x"}, {"m": rng.choice(binary), "d": rng.choice(cobinary)})
        K = extend(f)
        assert adjunction_transpose(K) == f
        K2 = extend(adjunction_transpose(K))
        assert all(T.equal(K(phi), K2(phi)) for phi in ms)


def test_extend_rejects_bad_map():
    E = EndProp({"c": (0, 1)})
    wrong = E.make(("c",), ("c",), lambda v: v)
    f = FreeMegaMap(M, underlying_megagraph(E, 2), {"c": "c"}, {"m": wrong})
    with pytest.raises(MegagraphError):
        extend(f)


def test_free_functor_map():
    G = FreeProp(MD)
    ms = enumerate_morphisms(G, 2, 2)
    ident = FreeMegaMap(MD, MD, {"c": "c"}, {g.name: MD.arrow(g.name) for g in MD.generators})
    Fid = free_functor_map(ident)
    assert all(Fid(f) == f for f in ms)
    # m -> m precomposed with the swap: an automorphism of the megagraph
    twist = FreeMegaMap(MD, MD, {"c": "c"}, {"m": MD.arrow("m", None, SWAP), "d": MD.arrow("d", SWAP, None)})
    Ft = free_functor_map(twist)
    rng = random.Random(3)
    for _ in range(60):
        f, g = rng.choice(ms), rng.choice(ms)
        if f.source == g.target:
            assert Ft(G.compose_v(f, g)) == G.compose_v(Ft(f), Ft(g))
        assert Ft(G.compose_h(f, g)) == G.compose_h(Ft(f), Ft(g))
        assert Ft(Ft(f)) == f
    # color collapse of a two-color megagraph: output is still a morphism of the target
    ONE = FreeMegagraph(["c"], [Generator("f", ("c",), ("c", "c")), Generator("g", ("c", "c"), ("c",))])
    collapse = FreeMegaMap(TWO, ONE, {"a": "c", "b": "c"}, {"f": ONE.arrow("f"), "g": ONE.arrow("g")})
    H = FreeProp(TWO)
    image = free_functor_map(collapse)(H.compose_v(H.act(H.generator("g"), sigma=SWAP), H.generator("f")))
    assert isinstance(image, FreeMorphism) and image.source == ("c",) and image.target == ("c",)
