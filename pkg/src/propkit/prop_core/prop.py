"""The abstract prop interface.

Morphisms are opaque values owned by a prop.  The operations follow one
convention throughout:

* ``compose_v(f, g)`` is ``f o_v g`` (``g`` first) and needs ``source(f) == target(g)``;
* ``compose_h(f, g)`` places ``f`` before ``g`` in both lists;
* ``act(f, sigma, tau)`` is ``sigma^* tau_* f`` with source ``source(f) . sigma``
  and target ``tau . target(f)``;
* ``unit()`` is the empty horizontal composite with empty profile.
"""
from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Iterable, Optional, Sequence

from ..kernel import Perm


class PropError(ValueError):
    pass


class ArityError(PropError):
    """A finite prop was asked for a profile beyond its arity bound."""


class Prop(ABC):
    colors: Optional[tuple] = None
    name: str = "prop"

    @abstractmethod
    def source(self, f) -> tuple: ...

    @abstractmethod
    def target(self, f) -> tuple: ...

    @abstractmethod
    def identity(self, c): ...

    @abstractmethod
    def unit(self): ...

    @abstractmethod
    def compose_v(self, f, g): ...

    @abstractmethod
    def compose_h(self, f, g): ...

    @abstractmethod
    def act(self, f, sigma: Perm | None = None, tau: Perm | None = None): ...

    def hom(self, src: Sequence, dst: Sequence) -> list:
        raise PropError(f"{self.name} does not have enumerable hom sets")

    def equal(self, f, g) -> bool:
        return f == g

    def profile(self, f) -> tuple[tuple, tuple]:
        return tuple(self.source(f)), tuple(self.target(f))

    # derived operations ---------------------------------------------------
    def compose_h_all(self, fs: Iterable):
        acc = None
        for f in fs:
            acc = f if acc is None else self.compose_h(acc, f)
        return self.unit() if acc is None else acc

    def identities(self, colors: Sequence):
        return self.compose_h_all(self.identity(c) for c in colors)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"
