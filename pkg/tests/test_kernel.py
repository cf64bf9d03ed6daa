from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from propkit.kernel import (
    Perm,
    PermError,
    act_left,
    act_right,
    block_permutation,
    block_transpose,
    format_color,
    format_colors,
    parse_color,
    parse_colors,
    perm_compose,
    perm_direct_sum,
    perm_from_lists,
    sigma_xy,
    sorting_perm,
)


@st.composite
def perms(draw, max_degree=6, degree=None):
    n = draw(st.integers(0, max_degree)) if degree is None else degree
    return Perm(draw(st.permutations(list(range(1, n + 1)))))


def test_compose_examples():
    p = Perm([2, 3, 1])
    assert perm_compose(Perm.identity(3), p) == p
    assert perm_compose(p, p.inverse()).is_identity()
    assert perm_compose(Perm([2, 1, 3]), Perm([1, 3, 2])) == Perm([2, 3, 1])


def test_group_axioms_exhaustive_up_to_degree_5():
    for n in range(6):
        group = list(Perm.all(n))
        e = Perm.identity(n)
        sample = group if n <= 3 else group[:: max(1, len(group) // 12)]
        for a in group:
            assert a * e == a == e * a
            assert (a * a.inverse()).is_identity()
        for a, b, c in itertools.product(sample, repeat=3):
            assert (a * b) * c == a * (b * c)


def test_direct_sum():
    assert perm_direct_sum(Perm.identity(2), Perm.identity(3)) == Perm.identity(5)
    assert Perm([2, 1]) + Perm([1]) == Perm([2, 1, 3])
    for n in range(4):
        for p in range(5 - n):
            for a in Perm.all(n):
                for b in Perm.all(p):
                    assert (a + b).inverse() == a.inverse() + b.inverse()


def test_sigma_xy():
    for n in range(5):
        assert sigma_xy(0, n).is_identity()
    assert sigma_xy(2, 3).images == (3, 4, 5, 1, 2)
    for x in range(6):
        for y in range(6):
            assert (sigma_xy(x, y) * sigma_xy(y, x)).is_identity()
            imgs = sigma_xy(x, y).images
            assert list(imgs[:y]) == sorted(imgs[:y]) and list(imgs[y:]) == sorted(imgs[y:])
    with pytest.raises(PermError):
        sigma_xy(-1, 2)


def test_block_transpose():
    for p in range(5):
        assert block_transpose(1, p).is_identity()
    assert block_transpose(2, 2).images == (1, 3, 2, 4)
    for n in range(5):
        for p in range(5):
            assert block_transpose(n, p).inverse() == block_transpose(p, n)


def test_block_transpose_turns_rows_into_columns():
    grid = [(i, j) for j in range(3) for i in range(2)]  # 3 blocks of length 2
    moved = act_left(block_transpose(2, 3), grid)
    assert moved == tuple((i, j) for i in range(2) for j in range(3))


def test_list_actions():
    xs = ("a", "b", "c")
    assert act_right(xs, Perm.identity(3)) == xs == act_left(None, xs)
    assert act_right(("a", "b"), Perm([2, 1])) == ("b", "a")
    for s in Perm.all(3):
        for t in Perm.all(3):
            assert act_right(act_right(xs, s), t) == act_right(xs, s * t)
            assert act_left(s, act_left(t, xs)) == act_left(s * t, xs)
    with pytest.raises(PermError):
        act_right(xs, Perm.identity(2))


def test_actions_on_sources_and_targets_commute():
    # the interchange of the two actions: on an arrow they act on different lists
    for n in range(4):
        for s in Perm.all(n):
            for t in Perm.all(n):
                arrow = (tuple(range(n)), tuple("abcd"[:n]))
                one = (act_right(arrow[0], s), act_left(t, arrow[1]))
                two_src = act_right(arrow[0], s)
                two_tgt = act_left(t, arrow[1])
                assert one == (two_src, two_tgt)


@given(perms())
def test_inverse_round_trip(p):
    assert p.inverse().inverse() == p
    assert (p * p.inverse()).is_identity()


@given(st.lists(st.integers(), unique=True, max_size=7), st.randoms())
def test_perm_from_lists(before, rnd):
    after = list(before)
    rnd.shuffle(after)
    sigma = perm_from_lists(before, after)
    assert act_right(before, sigma) == tuple(after)


def test_perm_from_lists_errors():
    with pytest.raises(PermError):
        perm_from_lists([1, 2], [1, 3])
    with pytest.raises(PermError):
        perm_from_lists([1, 1], [1, 1])


@given(st.lists(st.integers(0, 4), max_size=8))
def test_sorting_perm(keys):
    assert list(act_right(keys, sorting_perm(keys))) == sorted(keys)


@given(st.lists(st.integers(0, 3), min_size=1, max_size=4), st.data())
def test_block_permutation_moves_blocks(sizes, data):
    sigma = data.draw(perms(degree=len(sizes)))
    blocks = [[(b, k) for k in range(size)] for b, size in enumerate(sizes)]
    flat = [x for blk in blocks for x in blk]
    moved = act_left(block_permutation(sigma, sizes), flat)
    expected = [x for blk in act_left(sigma, blocks) for x in blk]
    assert list(moved) == expected


def test_parse_and_format():
    assert Perm.parse("(3 4 5 1 2)") == sigma_xy(2, 3)
    assert Perm.parse("()") == Perm.identity(0)
    assert str(Perm([2, 1])) == "(2 1)"
    with pytest.raises(PermError):
        Perm.parse("3 4")
    with pytest.raises(PermError):
        Perm([1, 1])
    c = ("a", ("b", "c"))
    assert format_color(c) == "<a.<b.c>>"
    assert parse_color(format_color(c)) == c
    assert parse_colors(format_colors(["x", ("y", "z")])) == ("x", ("y", "z"))
    assert parse_colors("-") == ()
