"""Bilinear maps ``R x S -> T`` and their curried forms.

A bilinear map assigns a color ``chi(a, c)`` of ``T`` to each pair of
colors, a morphism ``chi(phi, c)`` to each generator ``phi`` of ``R`` and
color ``c`` of ``S``, and a morphism ``chi(a, psi)`` symmetrically.  Each
partial assignment must be a prop map, and for generators
``phi: (a_1..a_n) -> (b_1..b_m)`` and ``psi: (c_1..c_p) -> (d_1..d_q)`` the
two paths around the interchange octagon must agree:

    bt(q,m)_*<chi(b_k, psi)>_k o bt(m,p)_*<chi(phi, c_j)>_j
        = <chi(phi, d_l)>_l o bt(q,n)_* bt(n,p)^*<chi(a_i, psi)>_i
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Optional

from ..free_prop.extend import PropMap
from ..free_prop.terms import Act, HComp, Term, VComp
from ..kernel import Perm, block_transpose
from ..prop_core.presentation import Presentation, is_prop_map, prop_maps
from ..prop_core.prop import Prop
from .nat import HomProp, NatTrans


class TermBuilder:
    """Builds terms with the prop operations, so octagons can be written once."""

    def compose_v(self, f: Term, g: Term) -> Term:
        return VComp(f, g)

    def compose_h_all(self, parts) -> Term:
        parts = tuple(parts)
        flat: list = []
        for p in parts:
            flat.extend(p.parts if isinstance(p, HComp) else (p,))
        return flat[0] if len(flat) == 1 else HComp(tuple(flat))

    def act(self, f: Term, sigma: Perm | None = None, tau: Perm | None = None) -> Term:
        if sigma is not None and sigma.is_identity():
            sigma = None
        if tau is not None and tau.is_identity():
            tau = None
        if sigma is None and tau is None:
            return f
        return Act(sigma, tau, f)


def interchange_paths(P, phi, psi, chi_phi: Callable, chi_psi: Callable) -> tuple:
    """The two octagon composites for generators ``phi`` of ``R`` and ``psi`` of ``S``.

    ``P`` supplies ``compose_v``, ``compose_h_all`` and ``act``;
    ``chi_phi(phi, c)`` and ``chi_psi(a, psi)`` give the pieces.
    """
    a, b = phi.source, phi.target
    c, d = psi.source, psi.target
    n, m, p, q = len(a), len(b), len(c), len(d)
    path1 = P.compose_v(
        P.act(P.compose_h_all(chi_psi(bk, psi) for bk in b), tau=block_transpose(q, m)),
        P.act(P.compose_h_all(chi_phi(phi, cj) for cj in c), tau=block_transpose(m, p)),
    )
    path2 = P.compose_v(
        P.compose_h_all(chi_phi(phi, dl) for dl in d),
        P.act(P.compose_h_all(chi_psi(ai, psi) for ai in a), sigma=block_transpose(n, p), tau=block_transpose(q, n)),
    )
    return path1, path2


@dataclass
class BilinearMap:
    R: Presentation
    S: Presentation
    T: Prop
    colors: dict  # (a, c) -> color of T
    left: dict  # (phi name, c) -> morphism of T
    right: dict  # (a, psi name) -> morphism of T

    def left_map(self, c) -> PropMap:
        """``chi(-, c): R -> T``."""
        return PropMap(
            self.R.megagraph,
            self.T,
            {a: self.colors[(a, c)] for a in self.R.colors},
            {g.name: self.left[(g.name, c)] for g in self.R.generators},
        )

    def right_map(self, a) -> PropMap:
        """``chi(a, -): S -> T``."""
        return PropMap(
            self.S.megagraph,
            self.T,
            {c: self.colors[(a, c)] for c in self.S.colors},
            {g.name: self.right[(a, g.name)] for g in self.S.generators},
        )

    def key(self) -> tuple:
        return (
            tuple(self.colors[(a, c)] for a in self.R.colors for c in self.S.colors),
            tuple(self.left[(g.name, c)] for g in self.R.generators for c in self.S.colors),
            tuple(self.right[(a, g.name)] for a in self.R.colors for g in self.S.generators),
        )

    def paths(self, phi, psi) -> tuple:
        T = self.T

        class _P:
            compose_v = staticmethod(T.compose_v)
            compose_h_all = staticmethod(T.compose_h_all)
            act = staticmethod(T.act)

        return interchange_paths(
            _P, phi, psi, lambda g, c: self.left[(g.name, c)], lambda a, g: self.right[(a, g.name)]
        )


def check_bilinear(chi: BilinearMap) -> bool:
    for c in chi.S.colors:
        if not is_prop_map(chi.R, chi.left_map(c)):
            return False
    for a in chi.R.colors:
        if not is_prop_map(chi.S, chi.right_map(a)):
            return False
    for phi in chi.R.generators:
        for psi in chi.S.generators:
            p1, p2 = chi.paths(phi, psi)
            if not chi.T.equal(p1, p2):
                return False
    return True


def enumerate_bilinear(R: Presentation, S: Presentation, T: Prop) -> list[BilinearMap]:
    """Every bilinear map, by choosing the color map and then both families of partial prop maps."""
    pairs = [(a, c) for a in R.colors for c in S.colors]
    out = []
    for imgs in itertools.product(T.colors, repeat=len(pairs)):
        col = dict(zip(pairs, imgs))
        lefts = [prop_maps(R, T, fixed_colors={a: col[(a, c)] for a in R.colors}) for c in S.colors]
        rights = [prop_maps(S, T, fixed_colors={c: col[(a, c)] for c in S.colors}) for a in R.colors]
        if any(not x for x in lefts + rights):
            continue
        for lchoice in itertools.product(*lefts):
            left = {(g.name, c): m.image(g.name) for c, m in zip(S.colors, lchoice) for g in R.generators}
            for rchoice in itertools.product(*rights):
                right = {(a, g.name): m.image(g.name) for a, m in zip(R.colors, rchoice) for g in S.generators}
                chi = BilinearMap(R, S, T, col, left, right)
                if all(T.equal(*chi.paths(phi, psi)) for phi in R.generators for psi in S.generators):
                    out.append(chi)
    return out


# ---------------------------------------------------------------------------
# currying: Bilin(R, S; T) = Hom(R, Hom(S, T)) = Hom(S, Hom(R, T))


def _find_color(H: HomProp, m: PropMap) -> PropMap:
    for x in H.colors:
        if x == m:
            return x
    raise KeyError("prop map is not a color of the hom prop")


def curry_left(chi: BilinearMap, H: HomProp) -> PropMap:
    """``R -> Hom(S, T)``: ``a`` goes to ``chi(a, -)`` and ``phi`` to the family ``c -> chi(phi, c)``."""
    R = chi.R
    cmap = {a: _find_color(H, chi.right_map(a)) for a in R.colors}
    gens = {}
    for g in R.generators:
        gens[g.name] = NatTrans(
            tuple(cmap[a] for a in g.source),
            tuple(cmap[b] for b in g.target),
            tuple(chi.S.colors),
            tuple(chi.left[(g.name, c)] for c in chi.S.colors),
        )
    return PropMap(R.megagraph, H, cmap, gens)


def uncurry_left(K: PropMap, R: Presentation, S: Presentation, T: Prop) -> BilinearMap:
    colors = {(a, c): K.on_color(a).on_color(c) for a in R.colors for c in S.colors}
    right = {(a, g.name): K.on_color(a).image(g.name) for a in R.colors for g in S.generators}
    left = {(g.name, c): K.image(g.name).component(c) for g in R.generators for c in S.colors}
    return BilinearMap(R, S, T, colors, left, right)


def curry_right(chi: BilinearMap, H: HomProp) -> PropMap:
    """``S -> Hom(R, T)``: ``c`` goes to ``chi(-, c)`` and ``psi`` to the family ``a -> chi(a, psi)``."""
    S = chi.S
    cmap = {c: _find_color(H, chi.left_map(c)) for c in S.colors}
    gens = {}
    for g in S.generators:
        gens[g.name] = NatTrans(
            tuple(cmap[c] for c in g.source),
            tuple(cmap[d] for d in g.target),
            tuple(chi.R.colors),
            tuple(chi.right[(a, g.name)] for a in chi.R.colors),
        )
    return PropMap(S.megagraph, H, cmap, gens)


def uncurry_right(K: PropMap, R: Presentation, S: Presentation, T: Prop) -> BilinearMap:
    colors = {(a, c): K.on_color(c).on_color(a) for a in R.colors for c in S.colors}
    left = {(g.name, c): K.on_color(c).image(g.name) for c in S.colors for g in R.generators}
    right = {(a, g.name): K.image(g.name).component(a) for g in S.generators for a in R.colors}
    return BilinearMap(R, S, T, colors, left, right)


def bilin_convert(x, direction: str, R: Presentation, S: Presentation, T: Prop, H: Optional[HomProp] = None):
    """Convert between the three forms.

    ``direction`` is one of ``"to_left"`` (bilinear to ``R -> Hom(S,T)``),
    ``"from_left"``, ``"to_right"`` (bilinear to ``S -> Hom(R,T)``) and
    ``"from_right"``.
    """
    if direction == "to_left":
        return curry_left(x, H or HomProp(S, T))
    if direction == "from_left":
        return uncurry_left(x, R, S, T)
    if direction == "to_right":
        return curry_right(x, H or HomProp(R, T))
    if direction == "from_right":
        return uncurry_right(x, R, S, T)
    raise ValueError(f"unknown direction {direction!r}")
