"""Finite residuated lattices: gluing constructions, rotations, chain
amalgamation, and the supporting verification toolkit."""

from ._backend import BACKEND
from .core import (
    UNDEF,
    SUNDEF,
    FiniteRL,
    Morphism,
    NotResiduated,
    Verdict,
    Violation,
    are_isomorphic,
    enumerate_irls,
    find_embeddings,
    find_homomorphisms,
    godel_chain,
    hasse_text,
    homomorphic_image,
    residuals_from_mul,
    subalgebra_generated,
    table_equal,
    verify_axioms,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "UNDEF",
    "SUNDEF",
    "FiniteRL",
    "Morphism",
    "NotResiduated",
    "Verdict",
    "Violation",
    "are_isomorphic",
    "enumerate_irls",
    "find_embeddings",
    "find_homomorphisms",
    "godel_chain",
    "hasse_text",
    "homomorphic_image",
    "residuals_from_mul",
    "subalgebra_generated",
    "table_equal",
    "verify_axioms",
    "__version__",
]
