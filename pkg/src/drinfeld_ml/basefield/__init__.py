from .gf import GF, FFElem, default_modulus, embed, get_field, is_irreducible, is_irreducible_trial
from .poly import Poly, poly_gcd
from .ratfunc import RatFunc, RatFuncField
from .spec import FINITE, RATFUNC, FieldSpec, Place, frobenius, pth_root, specialize

__all__ = [
    "GF", "FFElem", "default_modulus", "embed", "get_field", "is_irreducible",
    "is_irreducible_trial", "Poly", "poly_gcd", "RatFunc", "RatFuncField",
    "FINITE", "RATFUNC", "FieldSpec", "Place", "frobenius", "pth_root", "specialize",
]
