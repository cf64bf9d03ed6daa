"""Brute-force enumeration of structure-preserving maps between finite structures.

A finite structure (a bounded piece of a prop, an operad or a category) is
described by its elements, their profiles, and a list of constraints
``(op, args, result)`` saying that applying ``op`` to ``args`` gives
``result``.  A map assigns to each color a color and to each element an
element of the target with the mapped profile; it is valid when every
constraint is respected in the target.  The search branches on one element
at a time and propagates every constraint whose arguments are assigned, so
anything generated by earlier choices is forced rather than guessed.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Mapping, Optional, Sequence

from ..kernel import Perm
from .prop import ArityError, Prop, PropError


@dataclass
class Structure:
    colors: tuple
    elements: list
    profile: dict  # element -> (source tuple, target tuple)
    constraints: list  # (op, args, result); args mix elements and plain data
    element_args: dict = field(default_factory=dict)  # op -> positions of element arguments
    color_args: dict = field(default_factory=lambda: {"id": (0,)})  # op -> positions of color arguments

    def mapped_profile(self, e, cmap: Mapping) -> tuple:
        s, t = self.profile[e]
        return tuple(cmap[c] for c in s), tuple(cmap[c] for c in t)


@dataclass
class Target:
    """How to evaluate constraint operations and list candidates in the codomain."""

    colors: tuple
    hom: Callable[[tuple, tuple], list]
    apply: Callable[[str, tuple], Any]
    equal: Callable[[Any, Any], bool]
    profile: Callable[[Any], tuple]


@dataclass(frozen=True)
class StructureMap:
    color_map: tuple  # sorted (color, image) pairs
    images: tuple  # (element, image) pairs in element order

    @property
    def colors(self) -> dict:
        return dict(self.color_map)

    def __call__(self, e):
        return dict(self.images)[e]


def branching_order(A: Structure, by_arg: Optional[dict] = None) -> list:
    """Elements in the order the search branches on them.

    Greedily, the next branch is the element whose choice forces the most
    other elements through the constraints (smaller profiles break ties).
    Forced elements follow right after the branch that forces them, so the
    search only ever guesses what propagation cannot supply.
    """
    if by_arg is None:
        by_arg = {}
        for k, (op, args, res) in enumerate(A.constraints):
            for pos in A.element_args.get(op, range(len(args))):
                by_arg.setdefault(args[pos], []).append(k)
    missing = []
    for op, args, res in A.constraints:
        missing.append(len({args[p] for p in A.element_args.get(op, range(len(args)))}))
    known: set = set()
    order: list = []

    def closure(e, counts: dict) -> list:
        # elements learned by adding ``e``; ``counts`` holds decremented entries of ``missing``
        seen = {e}
        stack = [e]
        learned = []
        while stack:
            x = stack.pop()
            learned.append(x)
            for k in set(by_arg.get(x, [])):
                left = counts.get(k, missing[k]) - 1
                counts[k] = left
                r = A.constraints[k][2]
                if left == 0 and r not in known and r not in seen:
                    seen.add(r)
                    stack.append(r)
        return learned

    def commit(e):
        counts: dict = {}
        for x in closure(e, counts):
            known.add(x)
            order.append(x)
        for k, v in counts.items():
            missing[k] = v

    for k, n in enumerate(missing):
        r = A.constraints[k][2]
        if n == 0 and r not in known:
            commit(r)
    size = {e: sum(len(side) for side in A.profile[e]) for e in A.elements}
    index = {e: i for i, e in enumerate(A.elements)}
    while len(known) < len(index):
        best = max(
            (e for e in A.elements if e not in known),
            key=lambda e: (len(closure(e, {})), -size[e], -index[e]),
        )
        commit(best)
    return order


def generated_elements(A: Structure, seeds: Iterable) -> set:
    """Everything reachable from ``seeds`` and the constants by the constraints of ``A``."""
    missing = [len({args[p] for p in A.element_args.get(op, range(len(args)))}) for op, args, _ in A.constraints]
    by_arg: dict = {}
    for k, (op, args, res) in enumerate(A.constraints):
        for pos in set(A.element_args.get(op, range(len(args)))):
            by_arg.setdefault(args[pos], []).append(k)
    out: set = set()
    stack = list(seeds) + [res for k, (_, _, res) in enumerate(A.constraints) if missing[k] == 0]
    while stack:
        x = stack.pop()
        if x in out:
            continue
        out.add(x)
        for k in by_arg.get(x, []):
            missing[k] -= 1
            if missing[k] == 0:
                stack.append(A.constraints[k][2])
    return out


def enumerate_structure_maps(
    A: Structure,
    B: Target,
    color_maps: Optional[Iterable[Mapping]] = None,
    limit: Optional[int] = None,
) -> list[StructureMap]:
    if color_maps is None:
        color_maps = (dict(zip(A.colors, imgs)) for imgs in itertools.product(B.colors, repeat=len(A.colors)))
    by_arg: dict = {}
    for k, (op, args, res) in enumerate(A.constraints):
        for pos in A.element_args.get(op, range(len(args))):
            by_arg.setdefault(args[pos], []).append(k)
    out: list[StructureMap] = []
    order = branching_order(A, by_arg)
    for cmap in color_maps:
        cmap = dict(cmap)
        cands: dict = {}

        def candidates(e):
            prof = A.mapped_profile(e, cmap)
            if prof not in cands:
                try:
                    cands[prof] = B.hom(*prof)
                except ArityError:
                    cands[prof] = []
            return cands[prof]

        def arg_images(op, args, img):
            pos = set(A.element_args.get(op, range(len(args))))
            cpos = set(A.color_args.get(op, ()))
            vals = []
            for i, a in enumerate(args):
                if i in pos:
                    if a not in img:
                        return None
                    vals.append(img[a])
                elif i in cpos:
                    vals.append(cmap[a])
                else:
                    vals.append(a)
            return tuple(vals)

        def propagate(img: dict, queue: list) -> bool:
            while queue:
                k = queue.pop()
                op, args, res = A.constraints[k]
                vals = arg_images(op, args, img)
                if vals is None:
                    continue
                try:
                    y = B.apply(op, vals)
                except (ArityError, PropError):
                    return False
                if res in img:
                    if not B.equal(img[res], y):
                        return False
                else:
                    if A.mapped_profile(res, cmap) != B.profile(y):
                        return False
                    img[res] = y
                    queue.extend(by_arg.get(res, []))
            return True

        start: dict = {}
        init = [k for k, (op, args, res) in enumerate(A.constraints) if not A.element_args.get(op, range(len(args)))]
        if not propagate(start, init):
            continue

        def go(img: dict) -> bool:
            for e in order:
                if e not in img:
                    break
            else:
                out.append(
                    StructureMap(
                        tuple(sorted(cmap.items(), key=lambda kv: repr(kv[0]))),
                        tuple((e, img[e]) for e in A.elements),
                    )
                )
                return limit is not None and len(out) >= limit
            for y in candidates(e):
                new = dict(img)
                new[e] = y
                if propagate(new, list(by_arg.get(e, []))):
                    if go(new):
                        return True
            return False

        if go(start):
            break
    return out


# ---------------------------------------------------------------------------
# props as structures


def prop_target(T: Prop) -> Target:
    def apply(op: str, vals: tuple):
        if op == "v":
            return T.compose_v(vals[0], vals[1])
        if op == "h":
            return T.compose_h(vals[0], vals[1])
        if op == "sigma":
            return T.act(vals[0], sigma=vals[1])
        if op == "tau":
            return T.act(vals[0], tau=vals[1])
        if op == "id":
            return T.identity(vals[0])
        if op == "unit":
            return T.unit()
        raise ValueError(op)

    return Target(
        tuple(T.colors), lambda s, d: T.hom(s, d), apply, T.equal, lambda y: (tuple(T.source(y)), tuple(T.target(y)))
    )


PROP_ELEMENT_ARGS = {"v": (0, 1), "h": (0, 1), "sigma": (0,), "tau": (0,), "id": (), "unit": ()}


def _adjacent(n: int) -> list[Perm]:
    out = []
    for i in range(1, n):
        imgs = list(range(1, n + 1))
        imgs[i - 1], imgs[i] = imgs[i], imgs[i - 1]
        out.append(Perm(imgs))
    return out


def prop_structure(
    T: Prop,
    elements: Sequence,
    colors: Optional[Sequence] = None,
    all_perms: bool = False,
) -> Structure:
    """The bounded structure of ``T`` on ``elements``: every operation whose inputs and output lie in the set.

    The result of an operation is looked up by hashing, so ``elements``
    must be canonical values.  Acting by adjacent transpositions is enough
    unless ``all_perms`` is set.
    """
    elems = list(elements)
    inset = set(elems)
    colors = tuple(T.colors if colors is None else colors)
    prof = {e: (tuple(T.source(e)), tuple(T.target(e))) for e in elems}
    cons: list = []

    def add(op, args, thunk):
        try:
            r = thunk()
        except ArityError:
            return
        if r in inset:
            cons.append((op, args, r))

    add("unit", (), T.unit)
    for c in colors:
        add("id", (c,), lambda c=c: T.identity(c))
    by_target: dict = {}
    for e in elems:
        by_target.setdefault(prof[e][1], []).append(e)
    for f in elems:
        s, t = prof[f]
        for g in by_target.get(s, []):
            add("v", (f, g), lambda f=f, g=g: T.compose_v(f, g))
        for g in elems:
            add("h", (f, g), lambda f=f, g=g: T.compose_h(f, g))
        ps = (lambda n: list(Perm.all(n))) if all_perms else _adjacent
        for p in ps(len(s)):
            add("sigma", (f, p), lambda f=f, p=p: T.act(f, sigma=p))
        for p in ps(len(t)):
            add("tau", (f, p), lambda f=f, p=p: T.act(f, tau=p))
    return Structure(colors, elems, prof, cons, PROP_ELEMENT_ARGS)


def enumerate_prop_maps(
    A: Prop,
    elements: Sequence,
    B: Prop,
    color_maps: Optional[Iterable[Mapping]] = None,
    colors: Optional[Sequence] = None,
) -> list[StructureMap]:
    """Maps from the bounded part of ``A`` on ``elements`` into ``B``, by brute force."""
    return enumerate_structure_maps(prop_structure(A, elements, colors), prop_target(B), color_maps)
