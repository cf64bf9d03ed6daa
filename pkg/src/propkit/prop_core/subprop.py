"""Subprops generated by a set of morphisms."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from ..kernel import Perm
from .prop import ArityError, Prop, PropError


@dataclass
class Closure:
    morphisms: set
    complete: bool
    rounds: int

    def __len__(self) -> int:
        return len(self.morphisms)

    def __contains__(self, f) -> bool:
        return f in self.morphisms


def _adjacent(n: int) -> list[Perm]:
    out = []
    for i in range(1, n):
        imgs = list(range(1, n + 1))
        imgs[i - 1], imgs[i] = imgs[i], imgs[i - 1]
        out.append(Perm(imgs))
    return out


def subprop_generated(
    T: Prop,
    S: Iterable,
    bound: int = 4,
    max_arity: int = 3,
    keep: Optional[Callable[[object], bool]] = None,
    colors: Optional[Iterable] = None,
) -> Closure:
    """Close ``S`` plus identities under both compositions and the two actions.

    Morphisms with more than ``max_arity`` inputs or outputs, or rejected by
    ``keep``, are discarded, so the result is the part of the generated
    subprop inside that window reachable in ``bound`` rounds.  Adjacent
    transpositions generate every symmetric group, so acting by them is
    enough.  ``complete`` is set when a round adds nothing new.  Morphisms
    must be hashable with equality agreeing with ``T.equal``.
    """
    S = list(S)
    if colors is None:
        cols: set = set()
        for f in S:
            cols.update(T.source(f))
            cols.update(T.target(f))
        if not S and T.colors is not None:
            cols = set(T.colors)
        colors = cols
    ok = lambda f: len(T.source(f)) <= max_arity and len(T.target(f)) <= max_arity and (keep is None or keep(f))

    elems: set = set()
    fresh: set = set()

    def add(f) -> None:
        if f not in elems and ok(f):
            elems.add(f)
            fresh.add(f)

    add(T.unit())
    for c in sorted(colors, key=repr):
        add(T.identity(c))
    for f in S:
        add(f)

    rounds = 0
    complete = False
    while rounds < bound:
        rounds += 1
        new, old = list(fresh), list(elems - fresh)
        fresh.clear()
        candidates = []
        for f in new:
            for s in _adjacent(len(T.source(f))):
                candidates.append(("act", f, s, None))
            for t in _adjacent(len(T.target(f))):
                candidates.append(("act", f, None, t))
        pairs = [(a, b) for a in new for b in new + old] + [(a, b) for a in old for b in new]
        for a, b in pairs:
            candidates.append(("h", a, b))
            if tuple(T.source(a)) == tuple(T.target(b)):
                candidates.append(("v", a, b))
        for cand in candidates:
            try:
                if cand[0] == "act":
                    add(T.act(cand[1], sigma=cand[2], tau=cand[3]))
                elif cand[0] == "h":
                    a, b = cand[1], cand[2]
                    if len(T.source(a)) + len(T.source(b)) > max_arity or len(T.target(a)) + len(T.target(b)) > max_arity:
                        continue
                    add(T.compose_h(a, b))
                else:
                    add(T.compose_v(cand[1], cand[2]))
            except ArityError:
                continue
        if not fresh:
            complete = True
            break
    return Closure(elems, complete, rounds)
