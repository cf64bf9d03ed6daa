"""The free-prop adjunction ``Hom(F(X), T) = Hom(X, U(T))`` checked by enumeration.

Both sides are enumerated on their own.  Megagraph maps ``X -> U(T)`` are
assignments on every arrow of the free bimodule, constrained only by
equivariance.  Prop maps ``F(X) -> T`` are assignments on a bounded window of
``F(X)`` constrained by every prop operation that stays inside the window.
A window cut at the arity of interest can miss the intermediate steps that
build its composites (``f (x) id`` before a vertical composite, say), which
would leave those composites unconstrained; the window is therefore taken
with extra arity, and the check records any element the corollas fail to
generate inside it.
The explicit maps between them are restriction along ``X -> U F(X)`` and
extension of generator images.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..kernel import Perm
from ..megagraph import Arrow, FreeMegagraph
from ..prop_core.maps import (
    PROP_ELEMENT_ARGS,
    Structure,
    StructureMap,
    enumerate_structure_maps,
    generated_elements,
    prop_structure,
    prop_target,
)
from ..prop_core.prop import Prop
from .extend import PropMap
from .freeprop import FreeProp, enumerate_morphisms


def megagraph_structure(X: FreeMegagraph) -> Structure:
    arrows = list(X.arrows())
    prof = {x: (tuple(X.source(x)), tuple(X.target(x))) for x in arrows}
    cons = []
    for x in arrows:
        for p in Perm.all(len(prof[x][0])):
            cons.append(("sigma", (x, p), X.act(x, sigma=p)))
        for p in Perm.all(len(prof[x][1])):
            cons.append(("tau", (x, p), X.act(x, tau=p)))
    return Structure(X.colors, arrows, prof, cons, PROP_ELEMENT_ARGS, {})


@dataclass
class FreeAdjunctionCheck:
    prop_side: int  # |Hom(F(X), T)| on the window
    megagraph_side: int  # |Hom(X, U(T))|
    window: int
    ungenerated: int  # window elements not reachable from corollas by operations inside the window
    restrict_extend_identity: bool
    extend_restrict_identity: bool
    extension_is_prop_map: bool

    @property
    def ok(self) -> bool:
        return (
            self.prop_side == self.megagraph_side
            and self.ungenerated == 0
            and self.restrict_extend_identity
            and self.extend_restrict_identity
            and self.extension_is_prop_map
        )


def check_free_adjunction(
    X: FreeMegagraph, T: Prop, max_vertices: int = 2, max_arity: int = 2, slack: int = 1
) -> FreeAdjunctionCheck:
    """The window holds diagrams with at most ``max_vertices`` vertices and arity at most ``max_arity + slack``.

    A target with an arity bound (a table prop) caps the window at that bound.
    """
    F = FreeProp(X)
    arity = max_arity + slack
    bound = getattr(T, "max_arity", None)
    if bound is not None:
        arity = min(arity, bound)
    window = enumerate_morphisms(F, max_vertices, arity)
    arrows = list(X.arrows())
    A = prop_structure(F, window, X.colors)
    left = enumerate_structure_maps(A, prop_target(T))
    seeds = [F.corolla(x) for x in arrows]
    ungenerated = len(set(window) - generated_elements(A, seeds))
    right = enumerate_structure_maps(megagraph_structure(X), prop_target(T))

    def restrict(K: StructureMap) -> tuple:
        imgs = dict(K.images)
        return (K.color_map, tuple((x, imgs[F.corolla(x)]) for x in arrows))

    def extend(k: StructureMap) -> tuple:
        imgs = dict(k.images)
        gens = {g.name: imgs[Arrow(Perm.identity(len(g.target)), g.name, Perm.identity(len(g.source)))]
                for g in X.generators}
        m = PropMap(X, T, k.colors, gens)
        return (k.color_map, tuple((f, m(f)) for f in window))

    left_keys = {(K.color_map, K.images) for K in left}
    right_keys = {(k.color_map, k.images) for k in right}
    extended = [extend(k) for k in right]
    return FreeAdjunctionCheck(
        len(left_keys),
        len(right_keys),
        len(window),
        ungenerated,
        all(restrict(StructureMap(*e)) == (k.color_map, k.images) for e, k in zip(extended, right)),
        all(extend(StructureMap(*restrict(K))) == (K.color_map, K.images) for K in left),
        all(e in left_keys for e in extended),
    )
