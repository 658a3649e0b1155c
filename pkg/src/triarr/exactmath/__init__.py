"""Exact arithmetic substrate: prime fields, GF(p) and integer linear algebra, forms."""

from .field import PrimeField, find_field, is_prime, primitive_root
from .forms import BinForm, HomForm3, monomials, mono_index, n_monomials, restrict_to_line
from .lattice import diagonalize, hnf_rows, in_lattice, integer_kernel
from .linalg import det, kernel, rank, rref

kernel_fp = kernel

__all__ = [
    "BinForm", "HomForm3", "PrimeField", "det", "find_field", "hnf_rows", "in_lattice",
    "diagonalize", "integer_kernel", "is_prime", "kernel", "kernel_fp", "mono_index", "monomials",
    "n_monomials", "primitive_root", "rank", "restrict_to_line", "rref",
]
