"""Colimits of finite diagrams of presentations.

The colimit of a diagram is presented by the disjoint union of all objects,
with colors glued along the color maps of the arrows and one relation
``g = image of g`` for every generator of every arrow's source.  Names are
kept when they are unambiguous and tagged with the object name otherwise.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from ..free_prop.extend import PropMap
from ..free_prop.terms import Gen, rename_term
from ..megagraph import FreeMegagraph, Generator
from .presentation import Presentation, PresentationError, PresentationMap, prop_maps
from .prop import Prop


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb, key=repr)] = min(ra, rb, key=repr)


@dataclass
class Colimit:
    presentation: Presentation
    injections: dict  # object name -> PresentationMap into the colimit
    objects: dict
    arrows: list

    def restrict(self, m: PropMap) -> dict:
        """The cocone of prop maps obtained by precomposing ``m`` with the injections."""
        return {k: inj.compose_with_map(m) for k, inj in self.injections.items()}


def colimit_presentation(
    objects: Mapping[str, Presentation],
    arrows: Sequence[tuple] = (),
    name: str = "colim",
) -> Colimit:
    """``arrows`` holds triples ``(source name, target name, PresentationMap)``."""
    for s, t, f in arrows:
        if s not in objects or t not in objects:
            raise PresentationError(f"arrow {s} -> {t} refers to an unknown object")
        if f.source is not objects[s] or f.target is not objects[t]:
            if f.source.megagraph != objects[s].megagraph or f.target.megagraph != objects[t].megagraph:
                raise PresentationError(f"arrow {s} -> {t} does not match its endpoints")

    uf = _UnionFind()
    for k, p in objects.items():
        for c in p.colors:
            uf.find((k, c))
    for s, t, f in arrows:
        for c in objects[s].colors:
            uf.union((s, c), (t, f.color_map[c]))

    classes: dict = {}
    for k, p in objects.items():
        for c in p.colors:
            classes.setdefault(uf.find((k, c)), []).append((k, c))
    plain_count: dict = {}
    for members in classes.values():
        for c in {c for _, c in members}:
            plain_count[c] = plain_count.get(c, 0) + 1
    color_name: dict = {}
    for root, members in classes.items():
        plain = {c for _, c in members}
        if len(plain) == 1 and plain_count[next(iter(plain))] == 1:
            color_name[root] = next(iter(plain))
        else:
            color_name[root] = root
    col = lambda k, c: color_name[uf.find((k, c))]
    colors = sorted(set(color_name.values()), key=repr)

    gen_count: dict = {}
    for p in objects.values():
        for g in p.generators:
            gen_count[g.name] = gen_count.get(g.name, 0) + 1
    taken = set(colors)
    gen_name: dict = {}
    for k, p in objects.items():
        for g in p.generators:
            gen_name[(k, g.name)] = g.name if gen_count[g.name] == 1 and g.name not in taken else (k, g.name)
    gens = [
        Generator(gen_name[(k, g.name)], tuple(col(k, c) for c in g.source), tuple(col(k, c) for c in g.target))
        for k, p in objects.items()
        for g in p.generators
    ]

    def move(k: str, t):
        return rename_term(t, lambda c: col(k, c), lambda g: Gen(gen_name[(k, g)]))

    relations = []
    for k, p in objects.items():
        for lhs, rhs in p.relations:
            relations.append((move(k, lhs), move(k, rhs)))
    for s, t, f in arrows:
        for g in objects[s].generators:
            relations.append((Gen(gen_name[(s, g.name)]), move(t, f.gen_terms[g.name])))

    pres = Presentation(FreeMegagraph(colors, gens), relations, name)
    injections = {
        k: PresentationMap(
            p,
            pres,
            {c: col(k, c) for c in p.colors},
            {g.name: Gen(gen_name[(k, g.name)]) for g in p.generators},
        )
        for k, p in objects.items()
    }
    return Colimit(pres, injections, dict(objects), list(arrows))


def coproduct(a: Presentation, b: Presentation, names: tuple = ("A", "B")) -> Colimit:
    return colimit_presentation({names[0]: a, names[1]: b}, (), f"{a.name}+{b.name}")


def coequalizer(f: PresentationMap, g: PresentationMap, names: tuple = ("P", "Q")) -> Colimit:
    if f.source is not g.source or f.target is not g.target:
        raise PresentationError("coequalizer needs parallel maps")
    return colimit_presentation(
        {names[0]: f.source, names[1]: f.target}, [(names[0], names[1], f), (names[0], names[1], g)], "coeq"
    )


def pushout(f: PresentationMap, g: PresentationMap, names: tuple = ("Z", "A", "B")) -> Colimit:
    """The pushout of ``A <-f- Z -g-> B``."""
    if f.source is not g.source:
        raise PresentationError("pushout needs a span")
    z, a, b = names
    return colimit_presentation({z: f.source, a: f.target, b: g.target}, [(z, a, f), (z, b, g)], "pushout")


# ---------------------------------------------------------------------------
# universal property by enumeration


def _maps_equal(m1: PropMap, m2: PropMap) -> bool:
    T = m1.target
    if m1.color_map != m2.color_map:
        return False
    return all(T.equal(m1.gen_images[g.name], m2.gen_images[g.name]) for g in m1.megagraph.generators)


def cocones(colim: Colimit, T: Prop) -> list[dict]:
    """Families of prop maps out of every object that commute with the arrows."""
    names = list(colim.objects)
    per = [prop_maps(colim.objects[k], T) for k in names]
    out = []
    for combo in itertools.product(*per):
        fam = dict(zip(names, combo))
        if all(_maps_equal(fam[s], f.compose_with_map(fam[t])) for s, t, f in colim.arrows):
            out.append(fam)
    return out


@dataclass
class UniversalCheck:
    maps_out: int
    cocones: int
    injective: bool
    surjective: bool

    @property
    def ok(self) -> bool:
        return self.injective and self.surjective and self.maps_out == self.cocones


def check_universal(colim: Colimit, T: Prop) -> UniversalCheck:
    """Restriction along the injections must biject maps out of the colimit with cocones."""
    outs = prop_maps(colim.presentation, T)
    cones = cocones(colim, T)
    keys = lambda fam: tuple(fam[k].key() for k in colim.objects)
    images = [keys(colim.restrict(m)) for m in outs]
    cone_keys = {keys(fam) for fam in cones}
    return UniversalCheck(
        len(outs), len(cones), len(set(images)) == len(images), cone_keys <= set(images) and set(images) <= cone_keys
    )
