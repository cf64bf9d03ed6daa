"""Acceptance criteria 1-8, one test per criterion.

Each test bundles every sub-check of its criterion and asserts the time
budget of that criterion.  Budgets are measured with ``time.perf_counter``
around the whole test body.
"""
from __future__ import annotations

import itertools
import random
import time

import pytest

from oracles import binary_tree_count, brute_force_count
from propkit.bridges.category import check_category_adjunction, monoid_category
from propkit.bridges.fop import check_operad_adjunction, uf_identity_check
from propkit.bridges.operad import check_operad_axioms, prop_to_operad, tabulate_operad
from propkit.free_prop.adjunction import check_free_adjunction
from propkit.free_prop.extend import PropMap, downward_closed_sets, evaluate, evaluate_layered, interface
from propkit.free_prop.freeprop import FreeProp, enumerate_hom, enumerate_morphisms
from propkit.hom_tensor.bilinear import curry_left, curry_right, enumerate_bilinear, uncurry_left, uncurry_right
from propkit.hom_tensor.bv import bv_compat_check, operad_presentation
from propkit.hom_tensor.nat import HomProp, NatTrans, check_natural_on_set, check_octagon, generator_set
from propkit.hom_tensor.tensor import (
    associator_maps,
    check_associativity,
    check_inverse_pair,
    induced_map,
    left_unit_maps,
    restrict_to_bilinear,
    right_unit_maps,
    symmetry_map,
    tensor_presentation,
)
from propkit.megagraph import FreeMegagraph, Generator
from propkit.prop_core.axioms import check_prop_axioms
from propkit.prop_core.finite import EndProp, FinSetProp, all_profiles, fixture_tables, tabulate, terminal_prop
from propkit.prop_core.presentation import Presentation, prop_maps

from helpers import relabel_diagram


class Budget:
    def __init__(self, seconds: float):
        self.seconds = seconds

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.seconds, f"took {self.elapsed:.1f}s, budget {self.seconds}s"


def _axioms_pass(T, morphisms, **kw):
    report = check_prop_axioms(T, morphisms, **kw)
    assert report.ok, "\n".join(report.lines())
    assert all(r.checked > 0 for r in report.results.values() if r.name in ("identities", "actions"))
    if getattr(T, "max_arity", None) is None:
        # only arity-bounded tables may leave instances undefined
        assert not any(r.skipped for r in report.results.values())
    return report


def _endprop_sample(sets: dict, max_arity: int, rng: random.Random) -> list:
    """Whole hom sets when they are small, a random sample of each larger one."""
    E = EndProp(sets)
    out = []
    for src, dst in all_profiles(E.colors, max_arity):
        if E.hom_size(src, dst) <= 64:
            out += E.hom(src, dst)
        else:
            cod = list(itertools.product(*(sets[c] for c in dst)))
            out += [E.make(src, dst, lambda x: rng.choice(cod)) for _ in range(6)]
    return E, out


def test_criterion_1_prop_axiom_suite():
    rng = random.Random(1)
    with Budget(60):
        T = terminal_prop()
        _axioms_pass(T, [f for s, d in all_profiles(T.colors, 3) for f in T.hom(s, d)])
        for sets, arity in [
            ({"x": (0,)}, 3),
            ({"x": (0, 1)}, 3),
            ({"x": (0, 1, 2)}, 2),
            ({"a": (0,), "b": (0, 1)}, 3),
        ]:
            E, ms = _endprop_sample(sets, arity, rng)
            _axioms_pass(E, ms)
        F = FreeProp(FreeMegagraph(["c"], [Generator("m", ("c", "c"), ("c",))]))
        window = enumerate_morphisms(F, 2, 3)
        assert max(f.n_vertices for f in window) == 2
        _axioms_pass(F, window)
        for name, table in fixture_tables().items():
            _axioms_pass(table, table.morphisms())


def test_criterion_2_free_prop_counts():
    with Budget(30):
        F = FreeProp(FreeMegagraph(["c"], [Generator("m", ("c", "c"), ("c",))]))
        for n, bound in [(1, 2), (2, 2), (3, 2), (4, 3)]:
            got = len(enumerate_hom(F, ("c",) * n, ("c",), bound))
            assert got == brute_force_count(2, 1, n, 1, bound) == binary_tree_count(n)
        assert [len(enumerate_hom(F, ("c",) * n, ("c",), 2)) for n in (1, 2, 3)] == [1, 2, 12]
        # the bound matters only through the vertex count
        assert len(enumerate_hom(F, ("c", "c"), ("c",), 1)) == 2


def _random_image(T, src, dst, rng):
    if isinstance(T, EndProp):
        cod = list(itertools.product(*(T.sets[c] for c in dst)))
        return T.make(src, dst, lambda x: rng.choice(cod))
    return rng.choice(T.hom(src, dst))


def _two_choices(d, rng):
    proper = [s for s in downward_closed_sets(d) if 0 < len(s) < d.n_nodes]
    first = rng.choice(proper)
    others = [s for s in proper if s != first] or [first]
    second = rng.choice(others)
    picks = []
    for lower in (first, second):
        cut = interface(d, set(lower))
        rng.shuffle(cut)
        picks.append((set(lower), cut))
    return picks


def test_criterion_3_vertical_splitting_independence():
    rng = random.Random(3)
    with Budget(60):
        X = FreeMegagraph(
            ["c"],
            [Generator("m", ("c", "c"), ("c",)), Generator("d", ("c",), ("c", "c")), Generator("u", ("c",), ("c",))],
        )
        F = FreeProp(X)
        pool = []
        for n, m in [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1), (1, 3)]:
            pool += [f for f in enumerate_hom(F, ("c",) * n, ("c",) * m, 3) if f.n_vertices == 3 and f.diagram.is_connected()]
        assert len(pool) >= 100
        checked = distinct = 0
        for _ in range(150):
            d = relabel_diagram(rng.choice(pool).diagram, rng)
            assert d.n_nodes == 3 and d.is_connected()
            T = rng.choice([EndProp({"c": (0, 1)}), EndProp({"c": (0, 1, 2)}), FinSetProp("c")])
            images = {g.name: _random_image(T, g.source, g.target, rng) for g in X.generators}
            a, b = _two_choices(d, rng)
            x = evaluate(d, T, lambda c: c, images.__getitem__, lambda _d, a=a: a)
            y = evaluate(d, T, lambda c: c, images.__getitem__, lambda _d, b=b: b)
            assert T.equal(x, y)
            assert T.equal(x, evaluate_layered(d, T, lambda c: c, images.__getitem__))
            checked += 1
            distinct += a[0] != b[0]
        assert checked >= 100 and distinct >= 100


def test_criterion_4_adjunction_bijections():
    tabs = fixture_tables()
    with Budget(120):
        # free prop on a megagraph
        X1 = FreeMegagraph(["c"], [Generator("m", ("c", "c"), ("c",))])
        X2 = FreeMegagraph(["x"], [Generator("u", ("x",), ("x",))])
        X3 = FreeMegagraph(["c"], [Generator("d", ("c",), ("c", "c")), Generator("e", (), ("c",))])
        X6 = FreeMegagraph(["a", "b"], [Generator("f", ("a",), ("b", "a"))])
        cases = [
            (X1, tabs["finset"]),
            (X1, tabs["sigma"]),
            (X2, tabs["end2"]),
            (X3, tabs["finset"]),
            (X1, EndProp({"c": (0, 1)})),
            (X3, EndProp({"c": (0, 1)})),
            (X6, EndProp({"p": (0, 1), "q": (0,)})),
        ]
        for X, T in cases:
            r = check_free_adjunction(X, T, max_vertices=2, max_arity=2)
            assert r.ok, (X, T.name, r)
        # operads and props, with UF = id
        E = tabulate(EndProp({"x": (0, 1)}), 2)
        for Q in (tabs["finset"], tabs["sigma"], tabulate(EndProp({"a": (0, 1), "b": (0,)}), 2)):
            O = tabulate_operad(prop_to_operad(Q), 2)
            assert check_operad_axioms(O, O.elements()).ok
            assert uf_identity_check(O)
        O = tabulate_operad(prop_to_operad(tabs["finset"]), 2)
        for T in (tabs["finset"], tabs["sigma"], tabs["terminal"], E):
            r = check_operad_adjunction(O, T)
            assert r.ok, (T.name, r)
        # categories and operads
        O2 = tabulate_operad(prop_to_operad(E), 2)
        for C in (monoid_category([0, 1], lambda a, b: a * b, 1), monoid_category([0], lambda a, b: 0, 0)):
            r = check_category_adjunction(C, O2)
            assert r.ok, r


def test_criterion_5_naturality_generation():
    rng = random.Random(5)
    with Budget(60):
        R = Presentation.make(
            ["c"], [("m", ("c", "c"), ("c",)), ("d", ("c",), ("c", "c")), ("u", ("c",), ("c",))], name="R"
        )
        T = EndProp({"c": (0, 1)})
        composites = enumerate_morphisms(R.free, 2, 3)
        assert len(composites) >= 500
        maps = prop_maps(R, T)
        H = HomProp(R, T, maps)
        families = [H.identity(f) for f in rng.sample(maps, 2)]
        for _ in range(20000):
            if len(families) >= 12:
                break
            shape = rng.choice([(1, 1), (1, 1), (2, 1), (1, 2)])
            src = tuple(rng.choice(maps) for _ in range(shape[0]))
            dst = tuple(rng.choice(maps) for _ in range(shape[1]))
            families += [xi for xi in H.hom(src, dst) if xi.sources != xi.targets][:2]
        assert len(families) >= 10
        assert any(len(xi.sources) + len(xi.targets) > 2 for xi in families)
        checked = 0
        for xi in families:
            for phi in composites:
                assert check_octagon(T, xi, phi, phi.source, phi.target)
                checked += 1
        assert checked >= 500 * 10
        # injected violations on a generator are caught there and on the window
        caught = 0
        for xi in families[:8]:
            comp = xi.component("c")
            for alt in T.hom(T.source(comp), T.target(comp)):
                if alt == comp:
                    continue
                bad = NatTrans(xi.sources, xi.targets, xi.colors, (alt,))
                if check_natural_on_set(T, bad, generator_set(R)):
                    continue  # a different natural family, not a violation
                caught += 1
                assert not all(check_octagon(T, bad, phi, phi.source, phi.target) for phi in composites)
        assert caught > 0


R6 = Presentation.make(["a", "b"], [("f", ("a",), ("b",)), ("g", ("b", "b"), ("a",))], name="R")
S6 = Presentation.make(
    ["c"], [("u", ("c",), ("c",)), ("k", (), ("c",))], [("vcomp(gen(u),gen(u))", "id(c)")], name="S"
)


def test_criterion_6_tensor_universal_property():
    with Budget(300):
        for T in (EndProp({"x": (0, 1)}), EndProp({"x": (0, 1), "y": (0,)})):
            P = tensor_presentation(R6, S6)
            homs = prop_maps(P, T)
            bilin = enumerate_bilinear(R6, S6, T)
            HS = HomProp(S6, T)
            HR = HomProp(R6, T)
            curried_left = prop_maps(R6, HS)
            curried_right = prop_maps(S6, HR)
            assert len(homs) == len(bilin) == len(curried_left) == len(curried_right) > 0
            # tensor side: induced map and restriction are mutually inverse
            assert {induced_map(x, P).key() for x in bilin} == {K.key() for K in homs}
            assert all(restrict_to_bilinear(induced_map(x, P), R6, S6).key() == x.key() for x in bilin)
            # hom side: currying in either variable is a bijection
            assert all(uncurry_left(curry_left(x, HS), R6, S6, T).key() == x.key() for x in bilin)
            assert all(uncurry_right(curry_right(x, HR), R6, S6, T).key() == x.key() for x in bilin)
            assert {uncurry_left(K, R6, S6, T).key() for K in curried_left} == {x.key() for x in bilin}
            assert {uncurry_right(K, R6, S6, T).key() for K in curried_right} == {x.key() for x in bilin}


def test_criterion_7_monoidal_laws():
    R = Presentation.make(["c"], [("m", ("c", "c"), ("c",))], name="R")
    S = Presentation.make(["d"], [("u", ("d",), ("d",))], [("vcomp(gen(u),gen(u))", "id(d)")], name="S")
    U = Presentation.make(["e"], [("k", (), ("e",))], name="U")
    with Budget(300):
        for pres in (R, S, R6):
            for f, g in (left_unit_maps(pres), right_unit_maps(pres)):
                assert check_inverse_pair(f, g, depth=6).ok
        for A, B in ((R, S), (S, U), (R6, S)):
            assert check_inverse_pair(symmetry_map(A, B), symmetry_map(B, A), depth=6).ok
        fwd, back = associator_maps(R, S, U)
        assert check_inverse_pair(fwd, back, depth=6).ok
        targets = [EndProp({"x": (0, 1)}), fixture_tables()["finset"]]
        checks = check_associativity(R, S, U, targets)
        assert all(c.ok for c in checks) and any(c.left_count > 1 for c in checks)


def test_criterion_8_bv_compatibility():
    O = operad_presentation(["a"], [("m", ("a", "a"), "a")], name="O")
    P = operad_presentation(["c"], [("u", ("c",), "c")], name="P")
    Z = operad_presentation(["c"], [("z", (), "c")], name="Z")
    targets = [EndProp({"x": (0, 1)}), EndProp({"x": (0, 1), "y": (0,)})]
    with Budget(120):
        for A, B in ((O, P), (O, Z), (P, Z)):
            for c in bv_compat_check(A, B, targets):
                assert c.ok, c
                assert c.bv_side > 0
        star = bv_compat_check(O, P, [terminal_prop()])[0]
        assert star.bv_side == star.prop_side == 1
