"""Exact arithmetic: F_q, polynomials over F_q[T], rational functions, quotient rings."""
from .fields import FieldCtx, FqElem, field_suite
from .mpoly import MPoly, PolyRing
from .polyalg import (bareiss_det, charpoly_mult, content, mgcd, poly_gcd, prem,
                      primitive_part, resultant, squarefree_decomposition,
                      squarefree_part)
from .quotient import QElem, QuotientRing
from .ratfunc import RatFunc, RatFuncField, frobenius_power

__all__ = [
    "FieldCtx", "FqElem", "field_suite", "MPoly", "PolyRing", "bareiss_det",
    "charpoly_mult", "content", "mgcd", "poly_gcd", "prem", "primitive_part",
    "resultant", "squarefree_decomposition", "squarefree_part", "QElem",
    "QuotientRing", "RatFunc", "RatFuncField", "frobenius_power",
]
