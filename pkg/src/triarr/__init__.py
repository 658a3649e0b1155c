"""Triangular line arrangements: combinatorics, freeness and realization."""

from .arrangement import (RUA, Line, TrSignature, add_lines, complement_in, concrete_equation,
                          delete_lines, full_monomial, make_rua, rescale, tr_signature, triangle)

__version__ = "0.1.0"

__all__ = ["RUA", "Line", "TrSignature", "add_lines", "complement_in", "concrete_equation",
           "delete_lines", "full_monomial", "make_rua", "rescale", "tr_signature", "triangle"]
