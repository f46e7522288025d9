"""Tensor-product decompositions of weight modules over the Hopf-Ore extension kG(chi^-1, a, 0)."""

from .characters import Character, Context, GroupSpec, build_context, coset_canonical, make_context
from .labels import Decomposition, Nil, NonNil, canonicalize, dim_of, parse_label, print_label
from .scalars import Scalar, cyclotomic_field, parse_scalar, q_binom

__all__ = [
    "Character", "Context", "GroupSpec", "build_context", "coset_canonical", "make_context",
    "Decomposition", "Nil", "NonNil", "canonicalize", "dim_of", "parse_label", "print_label",
    "Scalar", "cyclotomic_field", "parse_scalar", "q_binom",
]
