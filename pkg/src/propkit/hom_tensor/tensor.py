"""The tensor product of presented props.

``R # S`` has colors ``(a, c)``, a copy ``(phi, c)`` of each generator of
``R`` for every color ``c`` of ``S`` and a copy ``(a, psi)`` of each
generator of ``S`` for every color ``a`` of ``R``, with the relations of
``R`` and ``S`` transported into every copy.  ``R (x) S`` adds, for each
pair of generators, the relation equating the two interchange composites,
so its prop maps into ``T`` are exactly the bilinear maps ``R x S -> T``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from ..free_prop.extend import PropMap
from ..free_prop.rewrite import Verdict
from ..free_prop.terms import Gen, Term, rename_term
from ..megagraph import Generator
from ..prop_core.presentation import (
    Presentation,
    PresentationError,
    PresentationMap,
    prop_maps,
    word_equal,
)
from ..prop_core.prop import Prop
from .bilinear import BilinearMap, TermBuilder, check_bilinear, interchange_paths


def _copy_relations(pres: Presentation, color_of, gen_of) -> list:
    return [(rename_term(l, color_of, gen_of), rename_term(r, color_of, gen_of)) for l, r in pres.relations]


def _sharp_parts(R: Presentation, S: Presentation) -> tuple[list, list, list]:
    colors = [(a, c) for a in R.colors for c in S.colors]
    gens: list = []
    rels: list = []
    for c in S.colors:
        for g in R.generators:
            gens.append(Generator((g.name, c), tuple((a, c) for a in g.source), tuple((b, c) for b in g.target)))
        rels += _copy_relations(R, lambda a, c=c: (a, c), lambda n, c=c: Gen((n, c)))
    for a in R.colors:
        for g in S.generators:
            gens.append(Generator((a, g.name), tuple((a, c) for c in g.source), tuple((a, d) for d in g.target)))
        rels += _copy_relations(S, lambda c, a=a: (a, c), lambda n, a=a: Gen((a, n)))
    names = [g.name for g in gens]
    if len(set(names)) != len(names):
        raise PresentationError("generator names collide in the tensor product; rename generators or colors apart")
    return colors, gens, rels


def sharp_presentation(R: Presentation, S: Presentation, name: Optional[str] = None) -> Presentation:
    """``R # S``: parametrized copies of both presentations glued along the product color set."""
    colors, gens, rels = _sharp_parts(R, S)
    return Presentation.make(colors, gens, rels, name or f"{R.name}#{S.name}")


def interchange_relations(R: Presentation, S: Presentation) -> list[tuple[Term, Term]]:
    out = []
    for phi in R.generators:
        for psi in S.generators:
            out.append(
                interchange_paths(
                    TermBuilder(), phi, psi, lambda g, c: Gen((g.name, c)), lambda a, g: Gen((a, g.name))
                )
            )
    return out


def tensor_presentation(R: Presentation, S: Presentation, name: Optional[str] = None) -> Presentation:
    colors, gens, rels = _sharp_parts(R, S)
    return Presentation.make(colors, gens, rels + interchange_relations(R, S), name or f"{R.name}(x){S.name}")


def unit_presentation(color="*") -> Presentation:
    """The monochrome prop with no generators; its homs are the permutations."""
    return Presentation.make([color], [], [], "I")


# ---------------------------------------------------------------------------
# universal property


def induced_map(chi: BilinearMap, tensor: Optional[Presentation] = None, check: bool = True) -> PropMap:
    """The prop map ``R (x) S -> T`` with ``(phi, c) -> chi(phi, c)`` and ``(a, psi) -> chi(a, psi)``."""
    if check and not check_bilinear(chi):
        raise ValueError("not a bilinear map")
    P = tensor or tensor_presentation(chi.R, chi.S)
    images = {**chi.left, **chi.right}
    return PropMap(P.megagraph, chi.T, dict(chi.colors), images)


def restrict_to_bilinear(K: PropMap, R: Presentation, S: Presentation) -> BilinearMap:
    """Inverse of :func:`induced_map`: read the bilinear data off a map out of the tensor product."""
    colors = {(a, c): K.on_color((a, c)) for a in R.colors for c in S.colors}
    left = {(g.name, c): K.image((g.name, c)) for g in R.generators for c in S.colors}
    right = {(a, g.name): K.image((a, g.name)) for a in R.colors for g in S.generators}
    return BilinearMap(R, S, K.target, colors, left, right)


def universal_bilinear(R: Presentation, S: Presentation, depth: int = 6):
    """The bilinear map ``R x S -> R (x) S`` (into the presented prop), sending each piece to its generator."""
    from ..prop_core.presentation import PresentedProp

    P = tensor_presentation(R, S)
    T = PresentedProp(P, depth=depth)
    colors = {(a, c): (a, c) for a in R.colors for c in S.colors}
    left = {(g.name, c): T.generator((g.name, c)) for g in R.generators for c in S.colors}
    right = {(a, g.name): T.generator((a, g.name)) for a in R.colors for g in S.generators}
    return BilinearMap(R, S, T, colors, left, right)


# ---------------------------------------------------------------------------
# monoidal structure


def left_unit_maps(R: Presentation, unit_color="*") -> tuple[PresentationMap, PresentationMap]:
    """``I (x) R -> R`` and its inverse ``R -> I (x) R``."""
    I = unit_presentation(unit_color)
    IR = tensor_presentation(I, R)
    fwd = PresentationMap(
        IR, R, {(unit_color, c): c for c in R.colors}, {(unit_color, g.name): Gen(g.name) for g in R.generators}
    )
    back = PresentationMap(
        R, IR, {c: (unit_color, c) for c in R.colors}, {g.name: Gen((unit_color, g.name)) for g in R.generators}
    )
    return fwd, back


def right_unit_maps(R: Presentation, unit_color="*") -> tuple[PresentationMap, PresentationMap]:
    """``R (x) I -> R`` and its inverse."""
    I = unit_presentation(unit_color)
    RI = tensor_presentation(R, I)
    fwd = PresentationMap(
        RI, R, {(c, unit_color): c for c in R.colors}, {(g.name, unit_color): Gen(g.name) for g in R.generators}
    )
    back = PresentationMap(
        R, RI, {c: (c, unit_color) for c in R.colors}, {g.name: Gen((g.name, unit_color)) for g in R.generators}
    )
    return fwd, back


def symmetry_map(R: Presentation, S: Presentation) -> PresentationMap:
    """``R (x) S -> S (x) R``: swap the color pair and the generator pair."""
    RS, SR = tensor_presentation(R, S), tensor_presentation(S, R)
    gens = {}
    for g in R.generators:
        for c in S.colors:
            gens[(g.name, c)] = Gen((c, g.name))
    for a in R.colors:
        for g in S.generators:
            gens[(a, g.name)] = Gen((g.name, a))
    return PresentationMap(RS, SR, {(a, c): (c, a) for a in R.colors for c in S.colors}, gens)


@dataclass
class IsoCheck:
    """Verdicts for a pair of presentation maps claimed to be mutually inverse."""

    forward_relations: list
    backward_relations: list
    round_trip_source: list
    round_trip_target: list

    def all_verdicts(self) -> list:
        return self.forward_relations + self.backward_relations + self.round_trip_source + self.round_trip_target

    @property
    def ok(self) -> bool:
        # an undecided search counts as failure
        return all(v is Verdict.EQUAL for v in self.all_verdicts())


def check_inverse_pair(f: PresentationMap, g: PresentationMap, depth: int = 6) -> IsoCheck:
    """Both maps respect relations, and both round trips fix every generator up to ``word_equal``."""
    fg = f.then(g)  # source -> source
    gf = g.then(f)
    rt_s = [word_equal(f.source, fg.gen_terms[x.name], Gen(x.name), depth) for x in f.source.generators]
    rt_t = [word_equal(g.source, gf.gen_terms[x.name], Gen(x.name), depth) for x in g.source.generators]
    colors_ok = all(fg.color_map[c] == c for c in f.source.colors) and all(
        gf.color_map[c] == c for c in g.source.colors
    )
    if not colors_ok:
        rt_s.append(Verdict.DISTINCT)
    return IsoCheck(
        [v for _, v in f.well_defined(depth)],
        [v for _, v in g.well_defined(depth)],
        rt_s,
        rt_t,
    )


def associator_maps(R: Presentation, S: Presentation, U: Presentation) -> tuple[PresentationMap, PresentationMap]:
    """``(R (x) S) (x) U -> R (x) (S (x) U)`` and back, regrouping colors and generator names."""
    left = tensor_presentation(tensor_presentation(R, S), U)
    right = tensor_presentation(R, tensor_presentation(S, U))
    colors = {((a, c), e): (a, (c, e)) for a in R.colors for c in S.colors for e in U.colors}
    gens = {}
    for e in U.colors:
        for c in S.colors:
            for g in R.generators:
                gens[((g.name, c), e)] = (g.name, (c, e))
        for a in R.colors:
            for g in S.generators:
                gens[((a, g.name), e)] = (a, (g.name, e))
    for a in R.colors:
        for c in S.colors:
            for g in U.generators:
                gens[((a, c), g.name)] = (a, (c, g.name))
    fwd = PresentationMap(left, right, colors, {k: Gen(v) for k, v in gens.items()})
    back = PresentationMap(
        right, left, {v: k for k, v in colors.items()}, {v: Gen(k) for k, v in gens.items()}
    )
    return fwd, back


@dataclass
class AssociativityCheck:
    left_count: int  # |Hom((R (x) S) (x) U, T)|
    right_count: int  # |Hom(R (x) (S (x) U), T)|

    @property
    def ok(self) -> bool:
        return self.left_count == self.right_count


def check_associativity(R: Presentation, S: Presentation, U: Presentation, targets: Sequence[Prop]) -> list[AssociativityCheck]:
    left = tensor_presentation(tensor_presentation(R, S), U)
    right = tensor_presentation(R, tensor_presentation(S, U))
    return [AssociativityCheck(len(prop_maps(left, T)), len(prop_maps(right, T))) for T in targets]
