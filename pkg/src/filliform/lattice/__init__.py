"""Integral symmetric bilinear forms: invariants, enumeration, roots, isometry."""

from .forms import (
    CharCovector,
    Form,
    FormInvariants,
    char_base,
    direct_sum,
    dual_pairing,
    invariants,
    is_characteristic,
    is_even,
    is_negative_definite,
    nondegenerate_part,
    standard_form,
)
from .geometry import adjunction_genus, complement_quotient, minimal_part, orthogonal_complement
from .isometry import is_isometric
from .roots import GlueResult, RootSystemId, overlattice_glue, root_system, simple_roots
from .shadow import ShadowStats, shadow, short_vectors, vectors_of_norm

__all__ = [
    "CharCovector",
    "Form",
    "FormInvariants",
    "GlueResult",
    "RootSystemId",
    "ShadowStats",
    "adjunction_genus",
    "char_base",
    "complement_quotient",
    "direct_sum",
    "dual_pairing",
    "invariants",
    "is_characteristic",
    "is_even",
    "is_isometric",
    "is_negative_definite",
    "minimal_part",
    "nondegenerate_part",
    "orthogonal_complement",
    "overlattice_glue",
    "root_system",
    "shadow",
    "short_vectors",
    "simple_roots",
    "standard_form",
    "vectors_of_norm",
]
