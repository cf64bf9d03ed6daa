"""Categories as operads with only linear operations, and the adjunction ``F_0 -| U_0``.

``U_0(O)`` keeps the one-input operations of an operad.  ``F_0(C)`` is the
operad whose unary operations are the morphisms of ``C`` and which has no
other operations.  A functor ``C -> U_0(O)`` is the same thing as an operad
map ``F_0(C) -> O``; :func:`check_category_adjunction` counts both sides
independently.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Mapping, Optional, Sequence

from ..kernel import Perm
from ..prop_core.maps import Structure, StructureMap, Target, enumerate_structure_maps
from ..prop_core.prop import PropError
from .operad import Operad, operad_maps


class Category:
    """A finite category: objects, hom lists, composition ``compose(g, f) = g o f`` and identities."""

    def __init__(self, objects: Sequence, homs: Mapping[tuple, Sequence], compose: Callable, identity: Callable,
                 name: str = "C"):
        self.objects = tuple(objects)
        self.homs = {k: list(v) for k, v in homs.items()}
        self._compose = compose
        self._identity = identity
        self.name = name
        self._profile = {f: k for k, fs in self.homs.items() for f in fs}

    def hom(self, a, b) -> list:
        return list(self.homs.get((a, b), []))

    def morphisms(self) -> list:
        return list(self._profile)

    def dom(self, f):
        return self._profile[f][0]

    def cod(self, f):
        return self._profile[f][1]

    def compose(self, g, f):
        return self._compose(g, f)

    def identity(self, a):
        return self._identity(a)

    def check(self) -> bool:
        for f in self.morphisms():
            a, b = self.dom(f), self.cod(f)
            if self.compose(self.identity(b), f) != f or self.compose(f, self.identity(a)) != f:
                return False
            for g in self.morphisms():
                if self.dom(g) != b:
                    continue
                gf = self.compose(g, f)
                if gf not in self.homs.get((a, self.cod(g)), []):
                    return False
                for h in self.morphisms():
                    if self.dom(h) == self.cod(g) and self.compose(h, gf) != self.compose(self.compose(h, g), f):
                        return False
        return True


def monoid_category(elements: Sequence, mult: Callable, unit, obj="*", name: str = "M") -> Category:
    """The one-object category of a finite monoid."""
    return Category((obj,), {(obj, obj): list(elements)}, mult, lambda a: unit, name)


class U0(Category):
    """``U_0(O)(a, b) = O(a; b)``."""

    def __init__(self, O: Operad):
        homs = {(a, b): O.hom((a,), b) for a in O.colors for b in O.colors}
        super().__init__(O.colors, homs, lambda g, f: O.compose(g, [f]), O.identity, f"U0({O.name})")
        self.operad = O


def operad_to_category(O: Operad) -> U0:
    return U0(O)


class F0(Operad):
    """``F_0(C)``: unary operations are morphisms of ``C``; every other hom set is empty."""

    def __init__(self, C: Category):
        self.category = C
        self.colors = C.objects
        self.name = f"F0({C.name})"

    def source(self, f) -> tuple:
        return (self.category.dom(f),)

    def target(self, f):
        return self.category.cod(f)

    def identity(self, c):
        return self.category.identity(c)

    def compose(self, g, fs):
        if len(fs) != 1:
            raise PropError("F0 has only unary operations")
        return self.category.compose(g, fs[0])

    def act(self, f, sigma):
        return f

    def hom(self, src, c) -> list:
        if len(src) != 1:
            return []
        return self.category.hom(src[0], c)


def category_to_operad(C: Category) -> F0:
    return F0(C)


def category_structure(C: Category) -> Structure:
    cons = []
    for a in C.objects:
        cons.append(("id", (a,), C.identity(a)))
    for f in C.morphisms():
        for g in C.morphisms():
            if C.dom(g) == C.cod(f):
                cons.append(("comp", (g, f), C.compose(g, f)))
    prof = {f: ((C.dom(f),), (C.cod(f),)) for f in C.morphisms()}
    return Structure(C.objects, C.morphisms(), prof, cons, {"id": (), "comp": (0, 1)})


def category_target(C: Category) -> Target:
    def apply(op, vals):
        return C.identity(vals[0]) if op == "id" else C.compose(vals[0], vals[1])

    return Target(
        C.objects,
        lambda s, d: C.hom(s[0], d[0]) if len(s) == 1 and len(d) == 1 else [],
        apply,
        lambda x, y: x == y,
        lambda y: ((C.dom(y),), (C.cod(y),)),
    )


def functors(C: Category, D: Category) -> list[StructureMap]:
    return enumerate_structure_maps(category_structure(C), category_target(D))


@dataclass
class CategoryAdjunctionCheck:
    operad_side: int  # |Hom_Operad(F_0 C, O)|
    category_side: int  # |Hom_Cat(C, U_0 O)|
    bijective: bool

    @property
    def ok(self) -> bool:
        return self.bijective and self.operad_side == self.category_side


def check_category_adjunction(C: Category, O: Operad, max_arity: int = 2) -> CategoryAdjunctionCheck:
    """Operad maps ``F_0(C) -> O`` against functors ``C -> U_0(O)``.

    Both sides use the same underlying data (a color map plus an image for
    each morphism of ``C``), so the explicit bijection is the identity on
    that data; the check is that the two independently enumerated sets agree.
    """
    left = operad_maps(F0(C), F0(C).elements(max_arity), O)
    right = functors(C, U0(O))
    lk = {(m.color_map, m.images) for m in left}
    rk = {(m.color_map, m.images) for m in right}
    return CategoryAdjunctionCheck(len(lk), len(rk), lk == rk)
