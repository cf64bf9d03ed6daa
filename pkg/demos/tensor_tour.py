"""Bilinear maps, the internal hom and the tensor product of two small presentations.

Run with ``python3 demos/tensor_tour.py``.
"""
from __future__ import annotations

from propkit.hom_tensor import HomProp, bilin_convert, enumerate_bilinear, tensor_presentation
from propkit.prop_core.finite import EndProp
from propkit.prop_core.presentation import Presentation, prop_maps


def main() -> None:
    magma = Presentation.make(["c"], [("m", ("c", "c"), ("c",))], name="magma")
    inv = Presentation.make(
        ["x"], [("u", ("x",), ("x",))], [("vcomp(gen(u),gen(u))", "id(x)")], name="involution"
    )
    T = EndProp({"c": (0, 1)})

    print(f"prop maps magma -> End: {len(prop_maps(magma, T))}")
    print(f"prop maps involution -> End: {len(prop_maps(inv, T))}")

    P = tensor_presentation(magma, inv)
    print("tensor product presentation:")
    print(P.to_text())

    bilin = enumerate_bilinear(magma, inv, T)
    print(f"bilinear maps: {len(bilin)}, prop maps out of the tensor product: {len(prop_maps(P, T))}")

    H = HomProp(inv, T)
    for chi in bilin:
        K = bilin_convert(chi, "to_left", magma, inv, T, H)
        back = bilin_convert(K, "from_left", magma, inv, T)
        assert back.key() == chi.key()
    print("every bilinear map curries to magma -> Hom(involution, End) and back")


if __name__ == "__main__":
    main()
