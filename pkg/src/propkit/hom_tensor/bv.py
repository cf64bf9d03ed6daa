"""Boardman-Vogt tensor product of presented operads, and its comparison with the prop tensor product.

An operad presentation is a :class:`Presentation` whose generators all have
exactly one output; the free prop on it is presented by the same data.  The
BV tensor ``O (x)_BV P`` has the same parametrized copies as the prop tensor
product, but imposes interchange in its operadic form: for
``phi: (a_1..a_n) -> b`` and ``psi: (c_1..c_p) -> d``

    gamma((b, psi); (phi, c_1), ..., (phi, c_p))
        = gamma((phi, d); (a_1, psi), ..., (a_n, psi)) . pi

where ``pi`` reorders inputs ``(a_i, c_j)`` from ``i``-major to ``j``-major.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from ..free_prop.terms import Act, Gen, Term, VComp, hcomp_terms
from ..kernel import perm_from_lists
from ..prop_core.presentation import Presentation, PresentationError, prop_maps
from ..prop_core.prop import Prop
from .tensor import _sharp_parts, tensor_presentation


def check_operad_presentation(O: Presentation) -> None:
    for g in O.generators:
        if len(g.target) != 1:
            raise PresentationError(f"operad generator {g.name!r} must have exactly one output")


def operad_presentation(colors, generators, relations=(), name: str = "O") -> Presentation:
    """Generators are ``(name, inputs, output)`` with a single output color."""
    gens = [(n, tuple(src), (out,)) for n, src, out in generators]
    return Presentation.make(colors, gens, relations, name)


def bv_relations(O: Presentation, P: Presentation) -> list[tuple[Term, Term]]:
    out = []
    for phi in O.generators:
        a, (b,) = phi.source, phi.target
        for psi in P.generators:
            c, (d,) = psi.source, psi.target
            n, p = len(a), len(c)
            lhs = VComp(Gen((b, psi.name)), hcomp_terms([Gen((phi.name, cj)) for cj in c]))
            body = VComp(Gen((phi.name, d)), hcomp_terms([Gen((ai, psi.name)) for ai in a]))
            # inputs of the right side are (i, j) in i-major order; the left side wants j-major
            before = [(i, j) for i in range(n) for j in range(p)]
            after = [(i, j) for j in range(p) for i in range(n)]
            pi = perm_from_lists(before, after)
            rhs = body if pi.is_identity() else Act(pi, None, body)
            out.append((lhs, rhs))
    return out


def bv_tensor(O: Presentation, P: Presentation, name: Optional[str] = None) -> Presentation:
    check_operad_presentation(O)
    check_operad_presentation(P)
    colors, gens, rels = _sharp_parts(O, P)
    return Presentation.make(colors, gens, rels + bv_relations(O, P), name or f"{O.name}(x)BV{P.name}")


def free_prop_presentation(O: Presentation) -> Presentation:
    """``F(O)`` for a presented operad: the same generators and relations, read as a prop presentation."""
    check_operad_presentation(O)
    return O


@dataclass
class BVCheck:
    target: str
    bv_side: int  # |Hom(F(O (x)_BV P), T)|
    prop_side: int  # |Hom(F(O) (x) F(P), T)|
    same_maps: bool

    @property
    def ok(self) -> bool:
        return self.bv_side == self.prop_side and self.same_maps


def bv_compat_check(O: Presentation, P: Presentation, targets: Sequence[Prop]) -> list[BVCheck]:
    """Count prop maps out of both sides into each target.

    The two presentations share colors and generators, so the explicit
    bijection is the identity on generator data; besides the counts, the
    check confirms that the two sets of assignments coincide.
    """
    bv = free_prop_presentation(bv_tensor(O, P))
    pt = tensor_presentation(free_prop_presentation(O), free_prop_presentation(P))
    out = []
    for T in targets:
        left = {m.key() for m in prop_maps(bv, T)}
        right = {m.key() for m in prop_maps(pt, T)}
        out.append(BVCheck(T.name, len(left), len(right), left == right))
    return out
