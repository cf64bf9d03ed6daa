"""The free prop ``F(O)`` on an operad and the adjunction ``F -| U``.

An element of ``F(O)(a_1..a_n; b_1..b_m)`` is a pair ``(theta, <f_j>)`` with
``theta: {1..n} -> {1..m}`` and ``f_j`` in ``O(<a_i>_{theta(i)=j}; b_j)``,
the inputs of each fiber taken in increasing index order.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from ..kernel import Perm, act_left, act_right, format_colors, perm_from_lists
from ..prop_core.maps import StructureMap, enumerate_prop_maps
from ..prop_core.prop import Prop, PropError
from .operad import Operad, UnderlyingOperad, operad_maps


@dataclass(frozen=True)
class FOpElement:
    source: tuple
    target: tuple
    theta: tuple  # 1-based images
    comps: tuple

    def fiber(self, j: int) -> list[int]:
        """Input positions (1-based, increasing) sent to output ``j``."""
        return [i + 1 for i, t in enumerate(self.theta) if t == j]

    def __repr__(self) -> str:
        return f"FOp({format_colors(self.source)}->{format_colors(self.target)}; theta={self.theta}; {self.comps})"


class FOpProp(Prop):
    def __init__(self, operad: Operad):
        self.operad = operad
        self.colors = tuple(operad.colors)
        self.name = f"F({operad.name})"

    def _make(self, src, dst, theta, comps) -> FOpElement:
        return FOpElement(tuple(src), tuple(dst), tuple(theta), tuple(comps))

    def source(self, f: FOpElement) -> tuple:
        return f.source

    def target(self, f: FOpElement) -> tuple:
        return f.target

    def identity(self, c) -> FOpElement:
        return self._make((c,), (c,), (1,), (self.operad.identity(c),))

    def unit(self) -> FOpElement:
        return self._make((), (), (), ())

    def eta(self, f) -> FOpElement:
        """The unit of the adjunction: an operad element as a one-output element."""
        O = self.operad
        src = tuple(O.source(f))
        return self._make(src, (O.target(f),), (1,) * len(src), (f,))

    def compose_h(self, f: FOpElement, g: FOpElement) -> FOpElement:
        m = len(f.target)
        return self._make(
            f.source + g.source, f.target + g.target, f.theta + tuple(t + m for t in g.theta), f.comps + g.comps
        )

    def compose_v(self, psi: FOpElement, phi: FOpElement) -> FOpElement:
        """``psi o phi``: ``phi`` is ``(theta, <f_j>)`` and ``psi`` is ``(chi, <g_k>)``."""
        if psi.source != phi.target:
            raise PropError(f"cannot compose: {format_colors(psi.source)} != {format_colors(phi.target)}")
        O = self.operad
        theta, chi = phi.theta, psi.theta
        new_theta = tuple(chi[t - 1] for t in theta)
        comps = []
        for k in range(1, len(psi.target) + 1):
            js = [j for j in range(1, len(phi.target) + 1) if chi[j - 1] == k]
            h = O.compose(psi.comps[k - 1], [phi.comps[j - 1] for j in js])
            # inputs of h come fiber by fiber; reorder them increasingly
            grouped = [i for j in js for i in phi.fiber(j)]
            h = O.act(h, perm_from_lists(grouped, sorted(grouped)))
            comps.append(h)
        return self._make(phi.source, psi.target, new_theta, comps)

    def act(self, f: FOpElement, sigma: Perm | None = None, tau: Perm | None = None) -> FOpElement:
        O = self.operad
        if sigma is not None:
            if sigma.degree != len(f.source):
                raise PropError("degree mismatch")
            src = act_right(f.source, sigma)
            theta = tuple(f.theta[sigma(i) - 1] for i in range(1, len(src) + 1))
            comps = []
            for j in range(1, len(f.target) + 1):
                new_fiber = [i for i in range(1, len(src) + 1) if theta[i - 1] == j]
                old_positions = [sigma(i) for i in new_fiber]
                gamma_j = perm_from_lists(sorted(old_positions), old_positions)
                comps.append(O.act(f.comps[j - 1], gamma_j))
            f = self._make(src, f.target, theta, comps)
        if tau is not None:
            if tau.degree != len(f.target):
                raise PropError("degree mismatch")
            f = self._make(
                f.source, act_left(tau, f.target), tuple(tau(t) for t in f.theta), act_left(tau, f.comps)
            )
        return f

    def equal(self, f: FOpElement, g: FOpElement) -> bool:
        if (f.source, f.target, f.theta) != (g.source, g.target, g.theta):
            return False
        return all(self.operad.equal(a, b) for a, b in zip(f.comps, g.comps))

    def hom(self, src, dst) -> list:
        src, dst = tuple(src), tuple(dst)
        O = self.operad
        out = []
        for theta in itertools.product(range(1, len(dst) + 1), repeat=len(src)):
            fibers = [[src[i] for i in range(len(src)) if theta[i] == j] for j in range(1, len(dst) + 1)]
            choices = [O.hom(fib, b) for fib, b in zip(fibers, dst)]
            for comps in itertools.product(*choices):
                out.append(self._make(src, dst, theta, comps))
        return out


def operad_to_prop(O: Operad) -> FOpProp:
    return FOpProp(O)


def uf_identity_check(O: Operad, max_arity: int = 2, F: Optional[Prop] = None) -> bool:
    """Whether ``eta: O -> U(F(O))`` is a bijection on homs compatible with composition, actions and identities.

    ``F`` defaults to ``F(O)``; passing a (possibly corrupted) tabulation of
    it tests the comparison against that instead.
    """
    FO = FOpProp(O)
    F = FO if F is None else F
    UF = UnderlyingOperad(F)
    for n in range(max_arity + 1):
        for src in itertools.product(O.colors, repeat=n):
            for c in O.colors:
                os_ = O.hom(src, c)
                ufs = UF.hom(src, c)
                if len(os_) != len(ufs) or {FO.eta(f) for f in os_} != set(ufs):
                    return False
    elems = O.elements(max_arity)
    by_target: dict = {}
    for f in elems:
        by_target.setdefault(O.target(f), []).append(f)
    for c in O.colors:
        if FO.eta(O.identity(c)) != UF.identity(c):
            return False
    for g in elems:
        for fs in itertools.product(*(by_target.get(a, []) for a in O.source(g))):
            if sum(len(O.source(f)) for f in fs) > max_arity:
                continue
            if not F.equal(FO.eta(O.compose(g, fs)), UF.compose(FO.eta(g), [FO.eta(f) for f in fs])):
                return False
        for p in Perm.all(len(O.source(g))):
            if not F.equal(FO.eta(O.act(g, p)), UF.act(FO.eta(g), p)):
                return False
    return True


# ---------------------------------------------------------------------------
# the adjunction Hom(F(O), T) = Hom(O, U(T)) on finite instances


def extend_operad_map(O: Operad, T: Prop, k: StructureMap):
    """``Psi(k)``: the prop map ``F(O) -> T`` determined by an operad map ``O -> U(T)``."""
    cmap = k.colors
    images = dict(k.images)

    def apply(x: FOpElement):
        parts = [images[f] for f in x.comps]
        grouped = [i for j in range(1, len(x.target) + 1) for i in x.fiber(j)]
        whole = T.compose_h_all(parts) if parts else T.unit()
        return T.act(whole, sigma=perm_from_lists(grouped, list(range(1, len(grouped) + 1))))

    return cmap, apply


@dataclass
class AdjunctionCheck:
    left: int  # |Hom(F(O), T)| on the bounded window
    right: int  # |Hom(O, U(T))|
    phi_psi_identity: bool
    psi_phi_identity: bool
    psi_lands_in_left: bool

    @property
    def ok(self) -> bool:
        return self.left == self.right and self.phi_psi_identity and self.psi_phi_identity and self.psi_lands_in_left


def fop_elements(O: Operad, max_arity: int) -> list:
    F = FOpProp(O)
    out = []
    for n in range(max_arity + 1):
        for src in itertools.product(O.colors, repeat=n):
            for m in range(max_arity + 1):
                for dst in itertools.product(O.colors, repeat=m):
                    out.extend(F.hom(src, dst))
    return out


def check_operad_adjunction(O: Operad, T: Prop, max_arity: int = 2) -> AdjunctionCheck:
    """Enumerate both hom sets independently and compare them through explicit inverse maps."""
    F = FOpProp(O)
    f_elems = fop_elements(O, max_arity)
    o_elems = O.elements(max_arity)
    left = enumerate_prop_maps(F, f_elems, T, colors=O.colors)
    right = operad_maps(O, o_elems, UnderlyingOperad(T))

    def phi(K: StructureMap) -> tuple:
        imgs = dict(K.images)
        return (K.color_map, tuple((f, imgs[F.eta(f)]) for f in o_elems))

    def psi(k: StructureMap) -> tuple:
        _, apply = extend_operad_map(O, T, k)
        return (k.color_map, tuple((x, apply(x)) for x in f_elems))

    left_keys = {(K.color_map, K.images) for K in left}
    right_keys = {(k.color_map, k.images) for k in right}
    psi_of_right = [psi(k) for k in right]
    lands = all(p in left_keys for p in psi_of_right)
    phi_psi = all(phi(StructureMap(*p)) == (k.color_map, k.images) for p, k in zip(psi_of_right, right))
    psi_phi = all(psi(StructureMap(*phi(K))) == (K.color_map, K.images) for K in left)
    return AdjunctionCheck(len(left_keys), len(right_keys), phi_psi, psi_phi, lands)
