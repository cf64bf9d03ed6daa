"""Permutations and ordered color lists.

Conventions used everywhere in the package:

* a permutation is stored by its one-line images, ``images[i-1] = sigma(i)``;
* ``compose(a, b)`` applies ``b`` first, so ``compose(a, b)(i) == a(b(i))``;
* the right action on a list is ``xs . sigma = (x_{sigma(1)}, ..., x_{sigma(n)})``;
* the left action is ``sigma . xs = (x_{sigma^-1(1)}, ..., x_{sigma^-1(n)})``.

With these, ``right(right(xs, s), t) == right(xs, compose(s, t))`` and
``left(s, left(t, xs)) == left(compose(s, t), xs)``.
"""
from __future__ import annotations

import itertools
from functools import cached_property
from typing import Iterable, Iterator, Sequence, TypeVar

T = TypeVar("T")

ColorList = tuple


class PermError(ValueError):
    pass


class Perm:
    """A permutation of ``[1, n]`` given by one-line images."""

    __slots__ = ("images", "__dict__")

    def __init__(self, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise PermError(f"not a permutation of [1,{len(images)}]: {images}")
        self.images = images

    @classmethod
    def _from_zero(cls, zero: Sequence[int]) -> "Perm":
        p = object.__new__(cls)
        p.images = tuple(i + 1 for i in zero)
        return p

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(range(1, n + 1))

    @classmethod
    def parse(cls, text: str) -> "Perm":
        """Parse the one-line form ``"(3 4 5 1 2)"``; ``"()"`` is the empty permutation."""
        body = text.strip()
        if not (body.startswith("(") and body.endswith(")")):
            raise PermError(f"expected '(i j ...)', got {text!r}")
        return cls(int(tok) for tok in body[1:-1].replace(",", " ").split())

    @classmethod
    def all(cls, n: int) -> Iterator["Perm"]:
        """Every permutation of degree ``n`` in lexicographic order of images."""
        for imgs in itertools.permutations(range(1, n + 1)):
            yield cls(imgs)

    @property
    def degree(self) -> int:
        return len(self.images)

    @cached_property
    def zero(self) -> tuple[int, ...]:
        """0-based images."""
        return tuple(i - 1 for i in self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def is_identity(self) -> bool:
        return all(img == i + 1 for i, img in enumerate(self.images))

    def inverse(self) -> "Perm":
        inv = [0] * self.degree
        for i, img in enumerate(self.zero):
            inv[img] = i
        return Perm._from_zero(inv)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self) -> int:
        return hash(("Perm", self.images))

    def __lt__(self, other: "Perm") -> bool:
        return (self.degree, self.images) < (other.degree, other.images)

    def __repr__(self) -> str:
        return f"Perm({self})"

    def __str__(self) -> str:
        return "(" + " ".join(str(i) for i in self.images) + ")"

    # group structure -------------------------------------------------
    def __mul__(self, other: "Perm") -> "Perm":
        return perm_compose(self, other)

    def __add__(self, other: "Perm") -> "Perm":
        return perm_direct_sum(self, other)


def _check_perm(p: Perm | None, n: int) -> Perm:
    if p is None:
        return Perm.identity(n)
    if p.degree != n:
        raise PermError(f"permutation of degree {p.degree} applied where degree {n} is needed")
    return p


def perm_compose(a: Perm, b: Perm) -> Perm:
    """``a . b``: apply ``b`` first, then ``a``."""
    if a.degree != b.degree:
        raise PermError(f"degree mismatch: {a.degree} vs {b.degree}")
    az = a.zero
    return Perm._from_zero([az[j] for j in b.zero])


def perm_direct_sum(a: Perm, b: Perm) -> Perm:
    """Block-diagonal ``a x b`` in ``Sigma_{n+p}``."""
    n = a.degree
    return Perm._from_zero(list(a.zero) + [n + j for j in b.zero])


def sigma_xy(x: int, y: int) -> Perm:
    """The block swap with ``[1,y] -> [x+1,x+y]`` and ``[y+1,x+y] -> [1,x]`` increasing."""
    if x < 0 or y < 0:
        raise PermError("sigma_xy needs nonnegative sizes")
    return Perm(list(range(x + 1, x + y + 1)) + list(range(1, x + 1)))


def block_transpose(n: int, p: int) -> Perm:
    """Position ``(j-1)*n + i`` goes to ``(i-1)*p + j``.

    As a left action it turns a list of ``p`` blocks of length ``n`` into a
    list of ``n`` blocks of length ``p`` (the transpose of the grid).
    """
    if n < 0 or p < 0:
        raise PermError("block sizes must be nonnegative")
    images = [0] * (n * p)
    for j in range(p):
        for i in range(n):
            images[j * n + i] = i * p + j
    return Perm._from_zero(images)


def block_permutation(sigma: Perm, sizes: Sequence[int]) -> Perm:
    """Lift ``sigma`` to act on blocks.

    ``sizes[i]`` is the length of block ``i+1`` of the *input* list.  Acting
    on the left, the result moves whole blocks exactly as ``sigma`` moves
    single entries: ``left(P, B_1 + ... + B_n) == B_{s^-1(1)} + ... + B_{s^-1(n)}``.
    """
    sigma = _check_perm(sigma, len(sizes))
    starts = list(itertools.accumulate([0] + list(sizes[:-1]))) if sizes else []
    inv = sigma.inverse().zero
    # new list: block at new position k is old block inv[k]
    images = [0] * sum(sizes)
    pos = 0
    for k in range(len(sizes)):
        old = inv[k]
        for off in range(sizes[old]):
            # left action: new[pos] = old[P^-1(pos)], so P(old index) = pos
            images[starts[old] + off] = pos
            pos += 1
    return Perm._from_zero(images)


def act_right(xs: Sequence[T], sigma: Perm | None) -> tuple[T, ...]:
    """``xs . sigma = (x_{sigma(1)}, ..., x_{sigma(n)})``."""
    sigma = _check_perm(sigma, len(xs))
    return tuple(xs[j] for j in sigma.zero)


def act_left(sigma: Perm | None, xs: Sequence[T]) -> tuple[T, ...]:
    """``sigma . xs = (x_{sigma^-1(1)}, ..., x_{sigma^-1(n)})``."""
    sigma = _check_perm(sigma, len(xs))
    out: list = [None] * len(xs)
    for i, j in enumerate(sigma.zero):
        out[j] = xs[i]
    return tuple(out)


def act_on_list(sigma: Perm, xs: Sequence[T], side: str = "right") -> tuple[T, ...]:
    if side == "right":
        return act_right(xs, sigma)
    if side == "left":
        return act_left(sigma, xs)
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


def perm_from_lists(before: Sequence[T], after: Sequence[T]) -> Perm:
    """The permutation ``sigma`` with ``act_right(before, sigma) == after``.

    Entries must be distinct.
    """
    if len(before) != len(after):
        raise PermError("lists of different lengths")
    index = {x: i for i, x in enumerate(before)}
    if len(index) != len(before) or set(index) != set(after):
        raise PermError("lists are not rearrangements of distinct entries")
    return Perm._from_zero([index[x] for x in after])


def sorting_perm(keys: Sequence) -> Perm:
    """``sigma`` such that ``act_right(keys, sigma)`` is sorted (stable)."""
    return Perm._from_zero(sorted(range(len(keys)), key=lambda i: keys[i]))


def format_colors(colors: Sequence) -> str:
    return ",".join(format_color(c) for c in colors)


def format_color(c) -> str:
    """Tuples (product colors) print as ``<a.b>``."""
    if isinstance(c, tuple):
        return "<" + ".".join(format_color(x) for x in c) + ">"
    return str(c)


def parse_color(text: str):
    text = text.strip()
    if not text.startswith("<"):
        return text
    depth, parts, cur = 0, [], []
    for ch in text[1:-1]:
        if ch == "<":
            depth += 1
        elif ch == ">":
            depth -= 1
        if ch == "." and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return tuple(parse_color(p) for p in parts)


def parse_colors(text: str) -> tuple:
    text = text.strip()
    if text in ("", "-"):
        return ()
    return tuple(parse_color(tok) for tok in text.split(","))
