"""Presentations of props by generators and relations.

A :class:`Presentation` is a free megagraph plus a list of relations between
closed terms.  :class:`PresentedProp` is the quotient prop, with equality
decided by bounded rewriting (:func:`word_equal`).  Maps out of a
presentation into a finite prop are enumerated by :func:`prop_maps`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Optional, Sequence, Union

from ..free_prop.diagram import Diagram
from ..free_prop.extend import PropMap
from ..free_prop.freeprop import FreeMorphism, FreeProp, enumerate_hom
from ..free_prop.rewrite import Rule, SearchResult, Verdict, rewrite_class, search_equal
from ..free_prop.terms import (
    Gen,
    Term,
    TermTypeError,
    evaluate_term,
    format_term,
    generators_in,
    parse_term,
    rename_term,
    term_profile,
)
from ..kernel import Perm, format_color, format_colors
from ..megagraph import FreeMegagraph, Generator, MegagraphError, parse_megagraph_lines
from .prop import Prop, PropError


class PresentationError(ValueError):
    pass


class Presentation:
    def __init__(self, megagraph: FreeMegagraph, relations: Iterable[tuple] = (), name: str = "P"):
        self.megagraph = megagraph
        self.name = name
        rels = []
        for lhs, rhs in relations:
            lhs = parse_term(lhs) if isinstance(lhs, str) else lhs
            rhs = parse_term(rhs) if isinstance(rhs, str) else rhs
            pl, pr = self.profile(lhs), self.profile(rhs)
            if pl != pr:
                raise PresentationError(
                    f"relation sides have different profiles: {format_term(lhs)} vs {format_term(rhs)}"
                )
            rels.append((lhs, rhs))
        self.relations = tuple(rels)
        self.free = FreeProp(megagraph)
        self._rules = None

    @classmethod
    def make(cls, colors: Iterable, generators: Iterable, relations: Iterable = (), name: str = "P") -> "Presentation":
        gens = [g if isinstance(g, Generator) else Generator(g[0], tuple(g[1]), tuple(g[2])) for g in generators]
        return cls(FreeMegagraph(colors, gens), relations, name)

    @property
    def colors(self) -> tuple:
        return self.megagraph.colors

    @property
    def generators(self) -> tuple:
        return self.megagraph.generators

    def generator(self, name) -> Generator:
        return self.megagraph.generator(name)

    def profile(self, t: Term) -> tuple[tuple, tuple]:
        g = self.megagraph
        return term_profile(t, set(g.colors), lambda n: (g.generator(n).source, g.generator(n).target))

    def morphism(self, t: Union[Term, str]) -> FreeMorphism:
        return self.free.from_term(t)

    @property
    def rules(self) -> list[Rule]:
        if self._rules is None:
            self._rules = [
                Rule(self.morphism(lhs).diagram, self.morphism(rhs).diagram) for lhs, rhs in self.relations
            ]
        return self._rules

    def __repr__(self) -> str:
        return (
            f"Presentation({self.name}: {len(self.colors)} colors, {len(self.generators)} generators, "
            f"{len(self.relations)} relations)"
        )

    # text format ------------------------------------------------------
    def to_text(self) -> str:
        lines = [self.megagraph.to_text()]
        for lhs, rhs in self.relations:
            lines.append(f"rel {format_term(lhs)} = {format_term(rhs)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, name: str = "P") -> "Presentation":
        colors, gens, rest = parse_megagraph_lines(text.splitlines())
        rels = []
        for line in rest:
            if not line.startswith("rel "):
                raise PresentationError(f"cannot parse presentation line {line!r}")
            body = line[4:]
            if "=" not in body:
                raise PresentationError(f"relation needs '=': {line!r}")
            lhs, rhs = body.split("=", 1)
            rels.append((parse_term(lhs.strip()), parse_term(rhs.strip())))
        return cls(FreeMegagraph(colors, gens), rels, name)


def free_presentation(megagraph: FreeMegagraph, name: str = "F") -> Presentation:
    return Presentation(megagraph, (), name)


# ---------------------------------------------------------------------------
# word problem


def word_equal(
    pres: Presentation,
    t1: Union[Term, str, FreeMorphism],
    t2: Union[Term, str, FreeMorphism],
    depth: int = 6,
    max_states: int = 50000,
    algebras: Sequence[PropMap] = (),
) -> Verdict:
    return word_search(pres, t1, t2, depth, max_states, algebras).verdict


def word_search(pres, t1, t2, depth=6, max_states=50000, algebras=()) -> SearchResult:
    a = t1 if isinstance(t1, FreeMorphism) else pres.morphism(t1)
    b = t2 if isinstance(t2, FreeMorphism) else pres.morphism(t2)
    if (a.source, a.target) != (b.source, b.target):
        raise PresentationError(
            f"profile mismatch: {format_colors(a.source)} -> {format_colors(a.target)} vs "
            f"{format_colors(b.source)} -> {format_colors(b.target)}"
        )
    seps = [lambda d, alg=alg: alg(d) for alg in algebras]
    return search_equal(a.diagram, b.diagram, pres.rules, depth, max_states, seps)


class PresentedProp(Prop):
    """The prop presented by ``pres``; equality is bounded word search."""

    def __init__(self, pres: Presentation, depth: int = 6, max_vertices: int = 2, algebras: Sequence[PropMap] = ()):
        self.pres = pres
        self.colors = pres.colors
        self.depth = depth
        self.max_vertices = max_vertices
        self.algebras = tuple(algebras)
        self.name = pres.name
        self.free = pres.free

    def source(self, f):
        return f.source

    def target(self, f):
        return f.target

    def identity(self, c):
        return self.free.identity(c)

    def unit(self):
        return self.free.unit()

    def compose_v(self, f, g):
        return self.free.compose_v(f, g)

    def compose_h(self, f, g):
        return self.free.compose_h(f, g)

    def act(self, f, sigma=None, tau=None):
        return self.free.act(f, sigma, tau)

    def generator(self, name):
        return self.free.generator(name)

    def verdict(self, f, g) -> Verdict:
        return word_equal(self.pres, f, g, self.depth, algebras=self.algebras)

    def equal(self, f, g) -> bool:
        v = self.verdict(f, g)
        if v is Verdict.UNKNOWN:
            raise PropError("word search was inconclusive within the depth bound")
        return v is Verdict.EQUAL

    def hom(self, src, dst) -> list:
        """One representative per class among morphisms with at most ``max_vertices`` vertices."""
        elems = enumerate_hom(self.free, src, dst, self.max_vertices)
        reps: list = []
        covered: set = set()
        for f in elems:
            if f.diagram in covered:
                continue
            cls, _ = rewrite_class(f.diagram, self.pres.rules, self.depth)
            covered |= cls
            reps.append(f)
        return reps


# ---------------------------------------------------------------------------
# maps out of a presentation


def relation_holds(m: PropMap, lhs: Term, rhs: Term) -> bool:
    return m.target.equal(m.apply_term(lhs), m.apply_term(rhs))


def is_prop_map(pres: Presentation, m: PropMap) -> bool:
    try:
        m.check()
    except PropError:
        return False
    return all(relation_holds(m, lhs, rhs) for lhs, rhs in pres.relations)


def algebra_check(pres: Presentation, m: PropMap) -> bool:
    """Whether the generator assignment ``m`` is an algebra (a prop map) of ``pres``."""
    return is_prop_map(pres, m)


def color_maps(source_colors: Sequence, target_colors: Sequence) -> Iterable[dict]:
    for imgs in itertools.product(target_colors, repeat=len(source_colors)):
        yield dict(zip(source_colors, imgs))


def prop_maps(
    pres: Presentation,
    target: Prop,
    fixed_colors: Optional[Mapping] = None,
    fixed_images: Optional[Mapping] = None,
) -> list[PropMap]:
    """Every prop map ``pres -> target`` (target hom sets must be enumerable).

    Generators are assigned in order; a relation is checked as soon as all of
    its generators have images.
    """
    gens = list(pres.generators)
    rel_gens = [generators_in(l) | generators_in(r) for l, r in pres.relations]
    ready_at: dict[int, list[int]] = {}
    for k, need in enumerate(rel_gens):
        last = max((i for i, g in enumerate(gens) if g.name in need), default=-1)
        ready_at.setdefault(last, []).append(k)
    cmaps = [dict(fixed_colors)] if fixed_colors is not None else list(color_maps(pres.colors, target.colors))
    out: list[PropMap] = []
    for cmap in cmaps:
        images: dict = {}
        hom_cache: dict = {}

        def rels_ok(idx: int) -> bool:
            m = PropMap(pres.megagraph, target, cmap, {**images, **{g.name: None for g in gens if g.name not in images}})
            for k in ready_at.get(idx, []):
                lhs, rhs = pres.relations[k]
                if not relation_holds(m, lhs, rhs):
                    return False
            return True

        def go(i: int):
            if i == len(gens):
                out.append(PropMap(pres.megagraph, target, cmap, images))
                return
            g = gens[i]
            if fixed_images is not None and g.name in fixed_images:
                choices = [fixed_images[g.name]]
            else:
                prof = (tuple(cmap[c] for c in g.source), tuple(cmap[c] for c in g.target))
                if prof not in hom_cache:
                    hom_cache[prof] = target.hom(*prof)
                choices = hom_cache[prof]
            for x in choices:
                images[g.name] = x
                if rels_ok(i):
                    go(i + 1)
                del images[g.name]

        if ready_at.get(-1):
            m0 = PropMap(pres.megagraph, target, cmap, {g.name: None for g in gens})
            if not all(relation_holds(m0, *pres.relations[k]) for k in ready_at[-1]):
                continue
        go(0)
    return out


# ---------------------------------------------------------------------------
# maps between presentations


class PresentationMap:
    """A map of presentations: colors to colors, generators to terms of the target."""

    def __init__(self, source: Presentation, target: Presentation, color_map: Mapping, gen_terms: Mapping):
        self.source = source
        self.target = target
        self.color_map = dict(color_map)
        self.gen_terms = {k: (parse_term(v) if isinstance(v, str) else v) for k, v in gen_terms.items()}
        for g in source.generators:
            if g.name not in self.gen_terms:
                raise PresentationError(f"no image for generator {g.name!r}")
            want = (tuple(self.color_map[c] for c in g.source), tuple(self.color_map[c] for c in g.target))
            got = target.profile(self.gen_terms[g.name])
            if got != want:
                raise PresentationError(
                    f"image of {g.name!r} has profile {format_colors(got[0])} -> {format_colors(got[1])}, "
                    f"expected {format_colors(want[0])} -> {format_colors(want[1])}"
                )

    def apply(self, t: Union[Term, str]) -> Term:
        t = parse_term(t) if isinstance(t, str) else t
        return rename_term(t, self.color_map.__getitem__, self.gen_terms.__getitem__)

    def then(self, other: "PresentationMap") -> "PresentationMap":
        """``other o self``."""
        return PresentationMap(
            self.source,
            other.target,
            {c: other.color_map[self.color_map[c]] for c in self.source.colors},
            {g: other.apply(t) for g, t in self.gen_terms.items()},
        )

    def well_defined(self, depth: int = 6) -> list[tuple[Term, Verdict]]:
        """Word-search verdicts for the image of every source relation."""
        out = []
        for lhs, rhs in self.source.relations:
            out.append((lhs, word_equal(self.target, self.apply(lhs), self.apply(rhs), depth)))
        return out

    def compose_with_map(self, m: PropMap) -> PropMap:
        """Precompose a prop map out of the target."""
        return PropMap(
            self.source.megagraph,
            m.target,
            {c: m.on_color(self.color_map[c]) for c in self.source.colors},
            {g: m.apply_term(t) for g, t in self.gen_terms.items()},
        )


def identity_presentation_map(p: Presentation) -> PresentationMap:
    return PresentationMap(p, p, {c: c for c in p.colors}, {g.name: Gen(g.name) for g in p.generators})
