from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from propkit.free_prop import FreeProp, PropMap, Verdict, enumerate_morphisms
from propkit.kernel import Perm
from propkit.megagraph import FreeMegagraph, Generator
from propkit.prop_core import ArityError, PropError
from propkit.prop_core.axioms import check_prop_axioms
from propkit.prop_core.colimits import check_universal, coequalizer, colimit_presentation, coproduct, pushout
from propkit.prop_core.finite import (
    EndProp,
    FinSetProp,
    TableProp,
    corrupted_finset,
    fixture_tables,
    tabulate,
    terminal_prop,
)
from propkit.prop_core.maps import (
    Structure,
    Target,
    branching_order,
    enumerate_prop_maps,
    enumerate_structure_maps,
    generated_elements,
)
from propkit.prop_core.presentation import (
    Presentation,
    PresentationError,
    PresentationMap,
    PresentedProp,
    algebra_check,
    prop_maps,
    word_equal,
)
from propkit.prop_core.subprop import subprop_generated

ASSOC = ("vcomp(gen(m),hcomp(gen(m),id(c)))", "vcomp(gen(m),hcomp(id(c),gen(m)))")
MAGMA = Presentation.make(["c"], [("m", ("c", "c"), ("c",))], name="magma")
SEMIGROUP = Presentation.make(["c"], [("m", ("c", "c"), ("c",))], [ASSOC], name="semigroup")


# -- finite props ------------------------------------------------------------------


def test_terminal_prop():
    T = terminal_prop()
    c = T.colors[0]
    for n, m in itertools.product(range(5), repeat=2):
        assert len(T.hom((c,) * n, (c,) * m)) == 1
    with pytest.raises(PropError):
        T.hom(("nope",), ())


def test_unique_map_to_terminal():
    T = terminal_prop()
    for name, table in fixture_tables().items():
        maps = enumerate_prop_maps(table, table.morphisms(), T)
        assert len(maps) == 1, name


def test_endprop_counts():
    E = EndProp({"c": (0, 1), "d": (0, 1, 2)})
    assert len(E.hom(("c",), ("d",))) == 9
    assert len(E.hom((), ())) == 1
    assert E.hom_size(("c", "c"), ("d",)) == 81
    f = E.make(("c", "d"), ("d", "c"), lambda v: (v[1], v[0]))
    assert E.apply(f, (1, 2)) == (2, 1)


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_endprop_interchange_pointwise(data):
    E = EndProp({"x": (0, 1)})
    homs = {p: E.hom(*p) for p in [(("x",), ("x",)), (("x", "x"), ("x",)), (("x",), ("x", "x"))]}
    # (f' o f) (x) (g' o g) = (f' (x) g') o (f (x) g)
    f, fp, g, gp = (data.draw(st.sampled_from(homs[p])) for p in [(("x",), ("x", "x")), (("x", "x"), ("x",))] * 2)
    lhs = E.compose_h(E.compose_v(fp, f), E.compose_v(gp, g))
    rhs = E.compose_v(E.compose_h(fp, gp), E.compose_h(f, g))
    for xs in itertools.product((0, 1), repeat=2):
        assert E.apply(lhs, xs) == E.apply(rhs, xs)


def test_endprop_actions_permute_factors():
    E = EndProp({"a": (0,), "b": (0, 1)})
    f = E.make(("a", "b"), ("b", "a"), lambda v: (v[1], v[0]))
    swap = Perm([2, 1])
    g = E.act(f, sigma=swap)
    assert E.source(g) == ("b", "a")
    assert E.apply(g, (1, 0)) == E.apply(f, (0, 1))
    h = E.act(f, tau=swap)
    assert E.target(h) == ("a", "b")
    assert E.apply(h, (0, 1)) == (0, 1)


def test_table_arity_bound_and_text():
    T = fixture_tables()["finset"]
    c = T.colors[0]
    f = T.hom((c, c), (c,))[0]
    with pytest.raises(ArityError):
        T.compose_h(f, f)
    again = TableProp.from_text(T.to_text(), name=T.name)
    assert again.to_text() == T.to_text()
    assert check_prop_axioms(again, again.morphisms()).ok


def test_tabulate_preserves_hom_sizes():
    E = EndProp({"x": (0, 1)})
    T = tabulate(E, 1)
    assert len(T.hom(("x",), ("x",))) == 4
    assert len(T.hom((), ("x",))) == 2


# -- the axiom suite --------------------------------------------------------------


def test_axioms_pass_on_small_props():
    T = terminal_prop()
    c = T.colors[0]
    ms = [f for n in range(3) for m in range(3) for f in T.hom((c,) * n, (c,) * m)]
    report = check_prop_axioms(T, ms)
    assert report.ok and report.total > 0
    F = FreeProp(MAGMA.megagraph)
    assert check_prop_axioms(F, enumerate_morphisms(F, 2, 2)).ok
    S = FinSetProp("c")
    ms = [f for n in range(3) for m in range(3) for f in S.hom(("c",) * n, ("c",) * m)]
    assert check_prop_axioms(S, ms).ok


def test_corrupted_table_fails_with_named_axioms():
    t = corrupted_finset()
    report = check_prop_axioms(t, t.morphisms())
    assert not report.ok
    names = {r.name for r in report.failures()}
    assert "interchange" in names and "vertical associativity" in names
    assert all(r.counterexample for r in report.failures())
    assert report.as_dict()["ok"] is False
    assert any(line.startswith("FAIL interchange") for line in report.lines())


# -- algebras and maps ----------------------------------------------------------


def test_algebra_check():
    E = EndProp({"x": (0, 1)})
    implies = E.make(("x", "x"), ("x",), lambda v: ((1 - v[0]) | v[1],))
    conj = E.make(("x", "x"), ("x",), lambda v: (v[0] & v[1],))
    assert algebra_check(MAGMA, PropMap(MAGMA.megagraph, E, {"c": "x"}, {"m": implies}))
    assert not algebra_check(SEMIGROUP, PropMap(SEMIGROUP.megagraph, E, {"c": "x"}, {"m": implies}))
    assert algebra_check(SEMIGROUP, PropMap(SEMIGROUP.megagraph, E, {"c": "x"}, {"m": conj}))
    wrong_profile = E.make(("x",), ("x",), lambda v: v)
    assert not algebra_check(MAGMA, PropMap(MAGMA.megagraph, E, {"c": "x"}, {"m": wrong_profile}))


def test_prop_maps_counts():
    E = EndProp({"x": (0, 1)})
    assert len(prop_maps(MAGMA, E)) == 16
    # associative binary operations on a 2-element set
    assert len(prop_maps(SEMIGROUP, E)) == 8


def _z3_into_z6():
    A = Structure(
        ("*",),
        [0, 1, 2],
        {e: ((), ()) for e in range(3)},
        [("e", (), 0)] + [("+", (a, b), (a + b) % 3) for a in range(3) for b in range(3)],
        {"e": (), "+": (0, 1)},
        {},
    )
    B = Target(
        ("*",),
        lambda s, d: list(range(6)),
        lambda op, vals: 0 if op == "e" else (vals[0] + vals[1]) % 6,
        lambda x, y: x == y,
        lambda y: ((), ()),
    )
    return A, B


def test_structure_maps_brute_force():
    A, B = _z3_into_z6()
    maps = enumerate_structure_maps(A, B)
    assert sorted(m(1) for m in maps) == [0, 2, 4]
    assert all(m(0) == 0 for m in maps)


def test_branching_order_and_generation():
    A, _ = _z3_into_z6()
    order = branching_order(A)
    assert sorted(order) == [0, 1, 2] and order[0] == 0
    assert generated_elements(A, []) == {0}
    assert generated_elements(A, [1]) == {0, 1, 2}


# -- subprops -------------------------------------------------------------------


def test_subprop_of_terminal_from_nothing():
    T = terminal_prop()
    closure = subprop_generated(T, [], bound=3, max_arity=3)
    c = T.colors[0]
    profiles = {(len(T.source(f)), len(T.target(f))) for f in closure.morphisms}
    assert profiles == {(k, k) for k in range(4)}
    assert T.identity(c) in closure


def test_subprop_of_free_prop_matches_enumeration():
    F = FreeProp(MAGMA.megagraph)
    closure = subprop_generated(F, [F.generator("m")], bound=6, max_arity=3, keep=lambda f: f.n_vertices <= 2)
    assert closure.complete
    assert closure.morphisms == set(enumerate_morphisms(F, 2, 3))


def test_subprop_of_table_reaches_fixed_point():
    T = fixture_tables()["sigma"]
    c = T.colors[0]
    closure = subprop_generated(T, [], bound=10, max_arity=3)
    assert closure.complete
    assert len(closure) == sum(len(T.hom((c,) * k, (c,) * k)) for k in range(4))
    # idempotent once complete
    again = subprop_generated(T, closure.morphisms, bound=10, max_arity=3)
    assert again.morphisms == closure.morphisms


# -- presentations and the word problem -----------------------------------------


def test_word_equal():
    t = "vcomp(gen(m),hcomp(gen(m),id(c)))"
    assert word_equal(MAGMA, t, t) is Verdict.EQUAL
    assert word_equal(SEMIGROUP, *ASSOC, depth=1) is Verdict.EQUAL
    assert word_equal(MAGMA, *ASSOC) is Verdict.DISTINCT
    assert word_equal(MAGMA, "gen(m)", "act((2 1),_,gen(m))") is Verdict.DISTINCT
    with pytest.raises(PresentationError):
        word_equal(MAGMA, "gen(m)", "id(c)")


def test_word_equal_with_separating_algebra():
    comm = Presentation.make(["c"], [("m", ("c", "c"), ("c",))], [("gen(m)", "act((2 1),_,gen(m))")], name="comm")
    E = EndProp({"x": (0, 1)})
    xor = PropMap(comm.megagraph, E, {"c": "x"}, {"m": E.make(("x", "x"), ("x",), lambda v: (v[0] ^ v[1],))})
    # with commutativity only, the two bracketings cannot be equated; a separating algebra must disagree
    nand = PropMap(comm.megagraph, E, {"c": "x"}, {"m": E.make(("x", "x"), ("x",), lambda v: (1 - (v[0] & v[1]),))})
    verdicts = {word_equal(comm, *ASSOC, depth=2, algebras=[xor, nand]) for _ in range(3)}
    assert verdicts == {Verdict.DISTINCT}


def test_presented_hom_quotients():
    P = PresentedProp(SEMIGROUP)
    assert len(P.hom(("c",) * 3, ("c",))) == 6
    assert len(PresentedProp(MAGMA).hom(("c",) * 3, ("c",))) == 12
    m = P.generator("m")
    assert P.equal(P.compose_v(m, P.compose_h(m, P.identity("c"))), P.compose_v(m, P.compose_h(P.identity("c"), m)))


def test_presentation_text_and_errors():
    again = Presentation.from_text(SEMIGROUP.to_text())
    assert again.megagraph == SEMIGROUP.megagraph and again.relations == SEMIGROUP.relations
    with pytest.raises(PresentationError):
        Presentation.make(["c"], [("m", ("c", "c"), ("c",))], [("gen(m)", "id(c)")])
    with pytest.raises(PresentationError):
        Presentation.from_text("colors c\nwhat is this")


# -- colimits -------------------------------------------------------------------


def test_coproduct():
    A = Presentation.make(["a"], [("f", ("a",), ("a",))], name="A")
    B = Presentation.make(["b"], [("g", ("b", "b"), ())], name="B")
    colim = coproduct(A, B)
    P = colim.presentation
    assert set(P.colors) == {"a", "b"} and {g.name for g in P.generators} == {"f", "g"}
    assert P.relations == ()
    assert check_universal(colim, EndProp({"x": (0, 1)})).ok


def test_coequalizer_merges_colors():
    Z = Presentation.make(["z"], [], name="Z")
    P = Presentation.make(["a", "b"], [("f", ("a",), ("b",))], name="P")
    to_a = PresentationMap(Z, P, {"z": "a"}, {})
    to_b = PresentationMap(Z, P, {"z": "b"}, {})
    colim = coequalizer(to_a, to_b)
    assert len(colim.presentation.colors) == 1
    T = EndProp({"x": (0, 1), "y": (0,)})
    check = check_universal(colim, T)
    assert check.ok and check.maps_out == len(prop_maps(colim.presentation, T))


def test_pushout_over_free_color_set():
    Z = Presentation.make(["z"], [], name="Z")
    A = Presentation.make(["a"], [("f", ("a",), ("a",))], name="A")
    B = Presentation.make(["b"], [("g", (), ("b",))], name="B")
    colim = pushout(PresentationMap(Z, A, {"z": "a"}, {}), PresentationMap(Z, B, {"z": "b"}, {}))
    P = colim.presentation
    assert len(P.colors) == 1 and {g.name for g in P.generators} == {"f", "g"}
    assert check_universal(colim, EndProp({"x": (0, 1)})).ok


def test_colimit_with_generator_identification():
    A = Presentation.make(["c"], [("u", ("c",), ("c",))], name="A")
    B = Presentation.make(["c"], [("v", ("c",), ("c",)), ("w", ("c",), ("c",))], name="B")
    f = PresentationMap(A, B, {"c": "c"}, {"u": "gen(v)"})
    g = PresentationMap(A, B, {"c": "c"}, {"u": "gen(w)"})
    colim = coequalizer(f, g)
    T = EndProp({"x": (0, 1)})
    check = check_universal(colim, T)
    assert check.ok
    # maps out send v and w to the same function
    assert check.maps_out == 4
    with pytest.raises(PresentationError):
        colimit_presentation({"A": A}, [("A", "missing", f)])
