from __future__ import annotations

import itertools

import pytest

from propkit.free_prop.terms import Gen
from propkit.hom_tensor import (
    BilinearMap,
    HomProp,
    NatTrans,
    bilin_convert,
    bv_compat_check,
    bv_tensor,
    check_associativity,
    check_bilinear,
    check_inverse_pair,
    check_natural_on_set,
    check_octagon,
    enumerate_bilinear,
    induced_map,
    left_unit_maps,
    operad_presentation,
    restrict_to_bilinear,
    sharp_presentation,
    symmetry_map,
    tensor_presentation,
    unit_presentation,
)
from propkit.kernel import Perm
from propkit.hom_tensor.nat import generator_set, identity_nat
from propkit.hom_tensor.tensor import right_unit_maps, universal_bilinear
from propkit.prop_core.finite import EndProp, terminal_prop
from propkit.prop_core.presentation import Presentation, PresentationError, prop_maps

M = Presentation.make(["c"], [("m", ("c", "c"), ("c",))], name="M")
U = Presentation.make(["c"], [("u", ("c",), ("c",))], name="U")
E2 = EndProp({"c": (0, 1)})


def _table(E, f, arity):
    return tuple(E.apply(f, v)[0] for v in itertools.product((0, 1), repeat=arity))


# -- natural transformations --------------------------------------------------------


def test_identity_family_is_natural():
    for f in prop_maps(M, E2):
        xi = identity_nat(E2, f, M.colors)
        assert check_natural_on_set(E2, xi, generator_set(M))


def test_empty_set_is_vacuously_natural():
    f, g = prop_maps(M, E2)[:2]
    anything = NatTrans((f,), (g,), ("c",), (E2.make(("c",), ("c",), lambda v: (0,)),))
    assert check_natural_on_set(E2, anything, [])


def test_octagon_on_a_unary_generator():
    # for u: c -> c the octagon is the naturality square h o f(u) = g(u) o h
    maps = prop_maps(U, E2)
    assert len(maps) == 4
    for f, g in itertools.product(maps, repeat=2):
        for h in E2.hom(("c",), ("c",)):
            xi = NatTrans((f,), (g,), ("c",), (h,))
            square = E2.equal(E2.compose_v(h, f.image("u")), E2.compose_v(g.image("u"), h))
            assert check_octagon(E2, xi, Gen("u"), ("c",), ("c",)) == square


def test_hom_of_free_magma_into_end_matches_brute_force():
    H = HomProp(M, E2)
    assert len(H.colors) == 16
    count = 0
    for f, g in itertools.product(H.colors, repeat=2):
        found = len(H.hom((f,), (g,)))
        tf, tg = _table(E2, f.image("m"), 2), _table(E2, g.image("m"), 2)
        brute = 0
        for h in itertools.product((0, 1), repeat=2):
            if all(h[tf[2 * x + y]] == tg[2 * h[x] + h[y]] for x, y in itertools.product((0, 1), repeat=2)):
                brute += 1
        assert found == brute
        count += found
    assert count > 16  # the identities, plus the constant homomorphisms and more


def test_natural_families_are_closed_under_the_operations():
    H = HomProp(M, E2)
    maps = H.colors
    xs = [xi for f, g in itertools.product(maps[:6], repeat=2) for xi in H.hom((f,), (g,))]
    assert xs
    gens = generator_set(M)
    for xi, eta in itertools.product(xs[:12], repeat=2):
        assert check_natural_on_set(E2, H.compose_h(xi, eta), gens)
        if eta.targets == xi.sources:
            assert check_natural_on_set(E2, H.compose_v(xi, eta), gens)
        pair = H.compose_h(xi, eta)
        swapped = H.act(pair, sigma=Perm([2, 1]), tau=Perm([2, 1]))
        assert check_natural_on_set(E2, swapped, gens)


def test_hom_into_terminal_is_terminal():
    H = HomProp(M, terminal_prop())
    assert len(H.colors) == 1
    (f,) = H.colors
    for p, q in [(0, 0), (1, 1), (2, 1), (0, 2)]:
        assert len(H.hom((f,) * p, (f,) * q)) == 1


def test_hom_prop_identity_and_unit_laws():
    H = HomProp(M, E2)
    f = H.colors[3]
    xi = H.hom((f,), (f,))[-1]
    assert H.equal(H.compose_v(H.identity(f), xi), xi)
    assert H.equal(H.compose_v(xi, H.identity(f)), xi)
    assert H.equal(H.compose_h(H.unit(), xi), xi)


# -- bilinear maps ------------------------------------------------------------------------


def test_universal_and_collapse_bilinear_maps():
    assert check_bilinear(universal_bilinear(M, U))
    star = terminal_prop()
    found = enumerate_bilinear(M, U, star)
    assert len(found) == 1 and check_bilinear(found[0])


def test_bilinear_violation_is_detected():
    # u acts as negation and m as conjunction: negation does not commute with conjunction
    neg = E2.make(("c",), ("c",), lambda v: (1 - v[0],))
    conj = E2.make(("c", "c"), ("c",), lambda v: (v[0] & v[1],))
    xor = E2.make(("c", "c"), ("c",), lambda v: (v[0] ^ v[1],))
    bad = BilinearMap(M, U, E2, {("c", "c"): "c"}, {("m", "c"): conj}, {("c", "u"): neg})
    assert not check_bilinear(bad)
    # the identity commutes with any operation
    ident = E2.identity("c")
    good = BilinearMap(M, U, E2, {("c", "c"): "c"}, {("m", "c"): xor}, {("c", "u"): ident})
    assert check_bilinear(good)


def test_curry_round_trips():
    found = enumerate_bilinear(M, U, E2)
    assert found
    HS, HR = HomProp(U, E2), HomProp(M, E2)
    for chi in found:
        left = bilin_convert(chi, "to_left", M, U, E2, HS)
        assert bilin_convert(left, "from_left", M, U, E2).key() == chi.key()
        right = bilin_convert(chi, "to_right", M, U, E2, HR)
        assert bilin_convert(right, "from_right", M, U, E2).key() == chi.key()
    with pytest.raises(ValueError):
        bilin_convert(found[0], "sideways", M, U, E2)


# -- tensor products ----------------------------------------------------------------------


def test_sharp_generator_count():
    R = Presentation.make(["a", "b"], [("f", ("a",), ("b",)), ("g", ("b", "b"), ("a",))], name="R")
    S = Presentation.make(["x", "y", "z"], [("h", ("x",), ("y", "z"))], name="S")
    P = sharp_presentation(R, S)
    assert len(P.colors) == 6
    assert len(P.generators) == len(R.colors) * len(S.generators) + len(S.colors) * len(R.generators)
    T = tensor_presentation(R, S)
    assert len(T.relations) == len(P.relations) + len(R.generators) * len(S.generators)


def test_induced_map_matches_bilinear_maps():
    P = tensor_presentation(M, U)
    maps = prop_maps(P, E2)
    found = enumerate_bilinear(M, U, E2)
    assert len(maps) == len(found)
    for chi in found:
        assert restrict_to_bilinear(induced_map(chi, P), M, U).key() == chi.key()


def test_unit_and_symmetry_isomorphisms():
    assert len(prop_maps(unit_presentation(), E2)) == 1
    assert check_inverse_pair(*left_unit_maps(M)).ok
    assert check_inverse_pair(*right_unit_maps(M)).ok
    assert check_inverse_pair(symmetry_map(M, U), symmetry_map(U, M)).ok


def test_associativity_counts():
    I = unit_presentation()
    for r in check_associativity(U, I, U, [E2, terminal_prop()]):
        assert r.ok


# -- the Boardman-Vogt tensor product ------------------------------------------------------


def test_operad_presentations_need_single_outputs():
    bad = Presentation.make(["c"], [("d", ("c",), ("c", "c"))], name="D")
    with pytest.raises(PresentationError):
        bv_tensor(bad, M)


def test_bv_tensor_agrees_with_prop_tensor():
    O = operad_presentation(["c"], [("m", ("c", "c"), "c")], name="O")
    P = operad_presentation(["c"], [("u", ("c",), "c")], name="P")
    checks = bv_compat_check(O, P, [E2, terminal_prop()])
    assert all(c.ok for c in checks)
    assert checks[1].bv_side == 1
