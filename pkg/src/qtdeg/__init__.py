"""Mapping degrees between quasitoric 4-manifolds.

Decides which integers occur as degrees of maps between connected sums of
CP^2, anti-CP^2 and S^2 x S^2, by combining fast obstructions, symbolic
classification laws with constructive certificates, and an exhaustive
Gram-matrix search that is complete for definite intersection forms.
"""

from .charpair import CharPair, cohomology_form, identify_manifold, validate_pair
from .classify import (
    ConjectureReport,
    DegreeAnswer,
    DegreeSet,
    block_sum_certificates,
    compose_certificates,
    conjecture_scan,
    degree_set,
    realize,
    stabilize_certificate,
    universal_dominator,
)
from .manifold import (
    QuasitoricSum,
    connected_sum,
    format_spec,
    intersection_matrix,
    make_sum,
    parse_spec,
    reverse_orientation,
)
from .numtheory import (
    diff_two_squares,
    factorize,
    is_perfect_square,
    sum_four_squares,
    sum_three_squares,
    sum_two_squares,
)
from .obstructions import Obstruction, run_all
from .quadform import (
    congruence,
    determinant,
    direct_sum,
    inertia,
    parity,
    smith_normal_form,
)
from .search import (
    Budget,
    Certificate,
    SearchOutcome,
    enumerate_norm_vectors,
    find_certificate,
    verify_certificate,
)

__version__ = "0.1.0"

__all__ = [
    "Budget",
    "Certificate",
    "CharPair",
    "ConjectureReport",
    "DegreeAnswer",
    "DegreeSet",
    "Obstruction",
    "QuasitoricSum",
    "SearchOutcome",
    "block_sum_certificates",
    "cohomology_form",
    "compose_certificates",
    "congruence",
    "conjecture_scan",
    "connected_sum",
    "degree_set",
    "determinant",
    "diff_two_squares",
    "direct_sum",
    "enumerate_norm_vectors",
    "factorize",
    "find_certificate",
    "format_spec",
    "identify_manifold",
    "inertia",
    "intersection_matrix",
    "is_perfect_square",
    "make_sum",
    "parity",
    "parse_spec",
    "realize",
    "reverse_orientation",
    "run_all",
    "smith_normal_form",
    "stabilize_certificate",
    "sum_four_squares",
    "sum_three_squares",
    "sum_two_squares",
    "universal_dominator",
    "validate_pair",
    "verify_certificate",
]
