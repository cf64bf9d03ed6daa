"""Natural transformations, the internal hom prop, bilinear maps and tensor products."""
from .bilinear import BilinearMap, bilin_convert, check_bilinear, enumerate_bilinear
from .bv import bv_compat_check, bv_tensor, operad_presentation
from .nat import HomProp, NatTrans, check_natural_on_set, check_octagon, hom_prop
from .tensor import (
    associator_maps,
    check_associativity,
    check_inverse_pair,
    induced_map,
    left_unit_maps,
    restrict_to_bilinear,
    sharp_presentation,
    symmetry_map,
    tensor_presentation,
    unit_presentation,
)

__all__ = [
    "BilinearMap", "HomProp", "NatTrans", "associator_maps", "bilin_convert", "bv_compat_check", "bv_tensor",
    "check_associativity", "check_bilinear", "check_inverse_pair", "check_natural_on_set", "check_octagon",
    "enumerate_bilinear", "hom_prop", "induced_map", "left_unit_maps", "operad_presentation",
    "restrict_to_bilinear", "sharp_presentation", "symmetry_map", "tensor_presentation", "unit_presentation",
]
