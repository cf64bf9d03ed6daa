"""Build morphisms of a free prop, normalize them and evaluate them in a finite prop.

Run with ``python3 demos/free_prop_tour.py``.
"""
from __future__ import annotations

from propkit.free_prop import FreeProp
from propkit.free_prop.freeprop import enumerate_hom
from propkit.free_prop.extend import PropMap
from propkit.kernel import Perm
from propkit.megagraph import FreeMegagraph, Generator
from propkit.prop_core.finite import EndProp


def main() -> None:
    X = FreeMegagraph(["c"], [Generator("m", ("c", "c"), ("c",))])
    F = FreeProp(X)
    m = F.generator("m")
    left = F.compose_v(m, F.compose_h(m, F.identity("c")))
    right = F.compose_v(m, F.compose_h(F.identity("c"), m))
    print("left bracketing equals right bracketing:", F.equal(left, right))
    swapped = F.act(m, sigma=Perm([2, 1]))
    print("m equals m with swapped inputs:", F.equal(m, swapped))

    for n in range(1, 5):
        count = len(enumerate_hom(F, ("c",) * n, ("c",), n - 1))
        print(f"binary trees with {n} labelled leaves: {count}")

    # evaluate in End({0,1,2}) with m read as addition mod 3
    E = EndProp({"c": (0, 1, 2)})
    add = E.make(("c", "c"), ("c",), lambda v: ((v[0] + v[1]) % 3,))
    K = PropMap(X, E, {"c": "c"}, {"m": add})
    value = K(left)
    print("((x + y) + z) at (1, 2, 2):", E.apply(value, (1, 2, 2)))


if __name__ == "__main__":
    main()
