"""Equational properties and structure theory built on the constructions.

terms      the term/equation language and exhaustive evaluation
structure  preservation suites, congruence-filter lattices, subalgebras
gl2        2-potent chain recognition, generation, amalgamation
"""

from .terms import (
    Equation, EquationReport, Term, TermError, check_equation,
    commutativity, divisibility, eval_equation, gl2_law, n_potency,
    parse_equation, parse_equation_file, parse_term, prelinearity,
    semilinearity, term_values,
)
from .structure import (
    FilterLatticeReport, GluingSDIReport, GluingView, ImageReport,
    PreservationCheck, PreservationReport, SDIReport, SubalgebraCase,
    classify_subalgebra, filter_lattice_of_gluing, gluing_sdi_check,
    image_of_gluing, inner_algebra, is_subdirectly_irreducible,
    preservation_suite, view_of,
)
from .gl2 import (
    AmalgamDecision, GL2Chain, GenerationReport, VFormation,
    brute_force_amalgam, brute_force_one_amalgams, gl2_amalgam_decide,
    gl2_chain_from_blocks, gl2_chains, gl2_generate, gl2_violation,
    recognize_gl2, vformation,
)

__all__ = [
    "Equation", "EquationReport", "Term", "TermError", "check_equation",
    "commutativity", "divisibility", "eval_equation", "gl2_law",
    "n_potency", "parse_equation", "parse_equation_file", "parse_term",
    "prelinearity", "semilinearity", "term_values",
    "FilterLatticeReport", "GluingSDIReport", "GluingView", "ImageReport",
    "PreservationCheck", "PreservationReport", "SDIReport",
    "SubalgebraCase", "classify_subalgebra", "filter_lattice_of_gluing",
    "gluing_sdi_check", "image_of_gluing", "inner_algebra",
    "is_subdirectly_irreducible", "preservation_suite", "view_of",
    "AmalgamDecision", "GL2Chain", "GenerationReport", "VFormation",
    "brute_force_amalgam", "brute_force_one_amalgams",
    "gl2_amalgam_decide", "gl2_chain_from_blocks", "gl2_chains",
    "gl2_generate", "gl2_violation", "recognize_gl2", "vformation",
]
