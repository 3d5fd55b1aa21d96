"""Exact invariant theory of ternary forms over Q."""

from .discriminant import (
    CianiMatrix,
    InvariantValue,
    ciani_discriminant,
    ciani_form,
    differential_weight,
    discriminant,
    invariant_weight,
)
from .forms import GL3Matrix, TernaryForm, gl3_act, monomials, substitute
from .resultant import macaulay_resultant

__all__ = [
    "CianiMatrix",
    "GL3Matrix",
    "InvariantValue",
    "TernaryForm",
    "ciani_discriminant",
    "ciani_form",
    "differential_weight",
    "discriminant",
    "gl3_act",
    "invariant_weight",
    "macaulay_resultant",
    "monomials",
    "substitute",
]
