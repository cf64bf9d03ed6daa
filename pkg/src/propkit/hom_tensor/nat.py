"""(p,q)-natural transformations between prop maps and the internal hom prop.

A (p,q)-natural transformation from ``<f_1..f_p>`` to ``<g_1..g_q>`` (prop
maps ``R -> T``) has a component ``xi_a`` in ``T(f_1 a, ..., f_p a; g_1 a,
..., g_q a)`` for every color ``a`` of ``R``.  Naturality with respect to a
morphism ``phi: (a_1..a_n) -> (b_1..b_m)`` is the octagon

    bt(m,q)_*<g_l phi>_l o bt(q,n)_*<xi_{a_i}>_i
        = bt(m,p)^*<xi_{b_k}>_k o bt(p,n)^*<f_j phi>_j

where ``bt`` is :func:`propkit.kernel.block_transpose` and ``<...>`` is a
horizontal composite.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Optional, Sequence

from ..free_prop.extend import PropMap
from ..free_prop.freeprop import FreeMorphism
from ..free_prop.terms import Gen
from ..kernel import Perm, act_left, act_right, block_transpose, format_colors
from ..prop_core.presentation import Presentation, prop_maps
from ..prop_core.prop import Prop, PropError


@dataclass(frozen=True)
class NatTrans:
    """Components are stored in the order of ``colors``."""

    sources: tuple  # prop maps f_1..f_p
    targets: tuple  # prop maps g_1..g_q
    colors: tuple
    components: tuple

    def component(self, a):
        return self.components[self.colors.index(a)]

    def __repr__(self) -> str:
        return f"NatTrans({len(self.sources)}->{len(self.targets)}; {self.components!r})"


def _image(m: PropMap, phi):
    """Apply a prop map to a free morphism or to a term of its source."""
    return m(phi) if isinstance(phi, FreeMorphism) else m.apply_term(phi)


def octagon_sides(T: Prop, xi: NatTrans, phi, src: Sequence, dst: Sequence, image: Callable = _image) -> tuple:
    """The two composites of the naturality octagon for ``phi: src -> dst``."""
    p, q = len(xi.sources), len(xi.targets)
    n, m = len(src), len(dst)
    left_inner = T.act(T.compose_h_all(xi.component(a) for a in src), tau=block_transpose(q, n))
    left_outer = T.act(T.compose_h_all(image(g, phi) for g in xi.targets), tau=block_transpose(m, q))
    right_inner = T.act(T.compose_h_all(image(f, phi) for f in xi.sources), sigma=block_transpose(p, n))
    right_outer = T.act(T.compose_h_all(xi.component(b) for b in dst), sigma=block_transpose(m, p))
    try:
        lhs = T.compose_v(left_outer, left_inner)
        rhs = T.compose_v(right_outer, right_inner)
    except PropError as exc:
        raise PropError(f"octagon is ill-typed for a morphism {format_colors(src)} -> {format_colors(dst)}: {exc}")
    return lhs, rhs


def check_octagon(T: Prop, xi: NatTrans, phi, src: Sequence, dst: Sequence, image: Callable = _image) -> bool:
    lhs, rhs = octagon_sides(T, xi, phi, src, dst, image)
    return T.equal(lhs, rhs)


def check_natural_on_set(T: Prop, xi: NatTrans, S: Iterable[tuple]) -> bool:
    """``S`` holds triples ``(phi, source colors, target colors)``; empty ``S`` is vacuously natural."""
    return all(check_octagon(T, xi, phi, s, d) for phi, s, d in S)


def generator_set(pres: Presentation) -> list[tuple]:
    return [(Gen(g.name), g.source, g.target) for g in pres.generators]


def identity_nat(T: Prop, f: PropMap, colors: Sequence) -> NatTrans:
    return NatTrans((f,), (f,), tuple(colors), tuple(T.identity(f.on_color(a)) for a in colors))


# ---------------------------------------------------------------------------
# the internal hom prop Hom(R, T)


class HomProp(Prop):
    """``Hom(R, T)`` for a presentation ``R`` and a finite prop ``T``.

    Colors are the prop maps ``R -> T`` (enumerated, or supplied); morphisms
    are natural transformations, operated on componentwise.  Naturality is
    checked on generators of ``R``, which suffices because the natural
    transformations for a fixed family are closed under the operations.
    """

    def __init__(self, R: Presentation, T: Prop, maps: Optional[Sequence[PropMap]] = None, name: Optional[str] = None):
        self.R = R
        self.T = T
        self.colors = tuple(prop_maps(R, T) if maps is None else maps)
        self.rcolors = tuple(R.colors)
        self.gens = generator_set(R)
        self.name = name or f"Hom({R.name},{T.name})"

    def _nat(self, sources, targets, comps) -> NatTrans:
        return NatTrans(tuple(sources), tuple(targets), self.rcolors, tuple(comps))

    def source(self, xi: NatTrans) -> tuple:
        return xi.sources

    def target(self, xi: NatTrans) -> tuple:
        return xi.targets

    def identity(self, f: PropMap) -> NatTrans:
        return self._nat((f,), (f,), (self.T.identity(f.on_color(a)) for a in self.rcolors))

    def unit(self) -> NatTrans:
        return self._nat((), (), (self.T.unit() for _ in self.rcolors))

    def compose_v(self, xi: NatTrans, eta: NatTrans) -> NatTrans:
        if xi.sources != eta.targets:
            raise PropError("cannot compose natural transformations with different middle maps")
        return self._nat(eta.sources, xi.targets, (self.T.compose_v(a, b) for a, b in zip(xi.components, eta.components)))

    def compose_h(self, xi: NatTrans, eta: NatTrans) -> NatTrans:
        return self._nat(
            xi.sources + eta.sources,
            xi.targets + eta.targets,
            (self.T.compose_h(a, b) for a, b in zip(xi.components, eta.components)),
        )

    def act(self, xi: NatTrans, sigma: Perm | None = None, tau: Perm | None = None) -> NatTrans:
        return self._nat(
            act_right(xi.sources, sigma),
            act_left(tau, xi.targets),
            (self.T.act(c, sigma=sigma, tau=tau) for c in xi.components),
        )

    def equal(self, a: NatTrans, b: NatTrans) -> bool:
        return (a.sources, a.targets) == (b.sources, b.targets) and all(
            self.T.equal(x, y) for x, y in zip(a.components, b.components)
        )

    def hom(self, src, dst) -> list[NatTrans]:
        """Every natural family from ``src`` to ``dst`` (tuples of prop maps)."""
        src, dst = tuple(src), tuple(dst)
        choices = []
        for a in self.rcolors:
            choices.append(
                self.T.hom(tuple(f.on_color(a) for f in src), tuple(g.on_color(a) for g in dst))
            )
        out = []
        for comps in itertools.product(*choices):
            xi = self._nat(src, dst, comps)
            if check_natural_on_set(self.T, xi, self.gens):
                out.append(xi)
        return out


def hom_prop(R: Presentation, T: Prop, maps: Optional[Sequence[PropMap]] = None) -> HomProp:
    return HomProp(R, T, maps)
