"""Permutative categories with free object monoids, and the functors ``L`` and ``U`` to and from props.

Objects are tuples of generating objects, ``oplus`` is concatenation, and
``swap(a, b): a + b -> b + a`` is the symmetry.  ``L(Q)`` has the color
lists of ``Q`` as objects and ``Q``'s morphisms as arrows.  ``U(C)`` is the
prop whose colors are the generating objects; its symmetric group actions
are composites with permutation isomorphisms built from ``swap``.
"""
from __future__ import annotations

import itertools
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Iterable, Sequence

from ..kernel import Perm, act_left, act_right, sigma_xy
from ..prop_core.prop import ArityError, Prop, PropError


class PermCategory(ABC):
    generators: tuple = ()
    name: str = "perm"

    @abstractmethod
    def hom(self, a: tuple, b: tuple) -> list: ...

    @abstractmethod
    def dom(self, f) -> tuple: ...

    @abstractmethod
    def cod(self, f) -> tuple: ...

    @abstractmethod
    def compose(self, g, f): ...

    @abstractmethod
    def oplus(self, f, g): ...

    @abstractmethod
    def identity(self, a: tuple): ...

    @abstractmethod
    def swap(self, a: tuple, b: tuple): ...

    def equal(self, f, g) -> bool:
        return f == g

    def objects(self, max_length: int) -> list[tuple]:
        return [o for n in range(max_length + 1) for o in itertools.product(self.generators, repeat=n)]

    def perm_iso(self, xs: Sequence, pi: Perm):
        """The isomorphism ``xs -> pi . xs`` built from adjacent swaps."""
        xs = tuple(xs)
        cur = list(range(len(xs)))  # current arrangement, as indices into xs
        goal = list(act_left(pi, cur))
        acc = self.identity(xs)
        # bubble the current arrangement into the goal one
        pos_goal = {v: k for k, v in enumerate(goal)}
        changed = True
        while changed:
            changed = False
            for k in range(len(cur) - 1):
                if pos_goal[cur[k]] > pos_goal[cur[k + 1]]:
                    objs = [xs[i] for i in cur]
                    step = self.oplus(
                        self.oplus(self.identity(tuple(objs[:k])), self.swap((objs[k],), (objs[k + 1],))),
                        self.identity(tuple(objs[k + 2 :])),
                    )
                    acc = self.compose(step, acc)
                    cur[k], cur[k + 1] = cur[k + 1], cur[k]
                    changed = True
        return acc


class LCategory(PermCategory):
    """``L(Q)``: objects are color lists, ``L(Q)(a, b) = Q(a; b)``."""

    def __init__(self, Q: Prop):
        self.prop = Q
        self.generators = tuple(Q.colors)
        self.name = f"L({Q.name})"

    def hom(self, a, b) -> list:
        return self.prop.hom(tuple(a), tuple(b))

    def dom(self, f) -> tuple:
        return tuple(self.prop.source(f))

    def cod(self, f) -> tuple:
        return tuple(self.prop.target(f))

    def compose(self, g, f):
        return self.prop.compose_v(g, f)

    def oplus(self, f, g):
        return self.prop.compose_h(f, g)

    def identity(self, a):
        return self.prop.identities(tuple(a))

    def swap(self, a, b):
        return self.prop.act(self.identity(tuple(a) + tuple(b)), tau=sigma_xy(len(b), len(a)))

    def equal(self, f, g) -> bool:
        return self.prop.equal(f, g)

    def unit(self, c) -> tuple:
        """``eta``: a color goes to its one-element list."""
        return (c,)


def prop_to_perm(Q: Prop) -> LCategory:
    return LCategory(Q)


class UProp(Prop):
    """``U(C)``: colors are the generating objects; ``U(C)(c; d) = C(c_1 + ... , d_1 + ...)``."""

    def __init__(self, C: PermCategory):
        self.category = C
        self.colors = tuple(C.generators)
        self.name = f"U({C.name})"

    def source(self, f) -> tuple:
        return tuple(self.category.dom(f))

    def target(self, f) -> tuple:
        return tuple(self.category.cod(f))

    def identity(self, c):
        return self.category.identity((c,))

    def unit(self):
        return self.category.identity(())

    def compose_v(self, f, g):
        if self.source(f) != self.target(g):
            raise PropError("cannot compose: profiles differ")
        return self.category.compose(f, g)

    def compose_h(self, f, g):
        return self.category.oplus(f, g)

    def act(self, f, sigma=None, tau=None):
        C = self.category
        if sigma is not None:
            s = self.source(f)
            f = C.compose(f, C.perm_iso(act_right(s, sigma), sigma))
        if tau is not None:
            f = C.compose(C.perm_iso(self.target(f), tau), f)
        return f

    def hom(self, src, dst) -> list:
        return self.category.hom(tuple(src), tuple(dst))

    def equal(self, f, g) -> bool:
        return self.category.equal(f, g)


def perm_to_prop(C: PermCategory) -> UProp:
    return UProp(C)


@dataclass
class PermCheck:
    involution: bool
    hexagon: bool
    unit: bool
    naturality: bool

    @property
    def ok(self) -> bool:
        return self.involution and self.hexagon and self.unit and self.naturality


def check_permutative(C: PermCategory, max_length: int = 2, morphisms: Iterable = ()) -> PermCheck:
    """The symmetry laws ``swap swap = id``, the hexagon, the unit law, and naturality on ``morphisms``.

    Instances beyond a finite prop's arity bound are skipped.
    """
    objs = C.objects(max_length)

    def eq(f, g):
        return C.equal(f, g)

    def safe(check):
        def run(*args):
            try:
                return check(*args)
            except ArityError:
                return True

        return run

    inv = safe(lambda a, b: eq(C.compose(C.swap(b, a), C.swap(a, b)), C.identity(a + b)))
    hexagon = safe(
        lambda a, b, c: eq(
            C.swap(a, b + c),
            C.compose(C.oplus(C.identity(b), C.swap(a, c)), C.oplus(C.swap(a, b), C.identity(c))),
        )
    )
    unit = safe(lambda a: eq(C.swap(a, ()), C.identity(a)) and eq(C.swap((), a), C.identity(a)))
    nat = safe(
        lambda f, g: eq(
            C.compose(C.swap(C.cod(f), C.cod(g)), C.oplus(f, g)), C.compose(C.oplus(g, f), C.swap(C.dom(f), C.dom(g)))
        )
    )
    ms = list(morphisms)
    return PermCheck(
        all(inv(a, b) for a in objs for b in objs),
        all(hexagon(a, b, c) for a in objs for b in objs for c in objs),
        all(unit(a) for a in objs),
        all(nat(f, g) for f in ms for g in ms),
    )
