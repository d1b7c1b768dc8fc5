"""Intersection numbers of closed curves on the pair of pants.

Free homotopy classes are cyclic reduced words in ``a, A, b, B`` (``A`` and
``B`` are inverses). The combinatorial engine counts linked pairs of rays;
an independent exact hyperbolic oracle counts crossing lifts.
"""

__version__ = "0.1.0"

from .engine import intersection, pants_structure, self_intersection
from .errors import (
    CapUnverifiedError,
    NotConvergedError,
    PantsCurvesError,
    ResourceLimitError,
    TrivialClassError,
    WordSyntaxError,
)
from .lab import (
    classes_with_si,
    classify_two_intersections,
    equiv_class_222,
    k_equivalent,
    refinement_check,
    scan_triples,
    triple_of,
)
from .oracle import oracle_intersection, oracle_self_intersection
from .words import (
    CurveClass,
    canonical_class,
    enumerate_classes,
    is_boundary_parallel,
    parse_word,
    pretty,
)

__all__ = [
    "CapUnverifiedError",
    "CurveClass",
    "NotConvergedError",
    "PantsCurvesError",
    "ResourceLimitError",
    "TrivialClassError",
    "WordSyntaxError",
    "canonical_class",
    "classes_with_si",
    "classify_two_intersections",
    "enumerate_classes",
    "equiv_class_222",
    "intersection",
    "is_boundary_parallel",
    "k_equivalent",
    "oracle_intersection",
    "oracle_self_intersection",
    "pants_structure",
    "parse_word",
    "pretty",
    "refinement_check",
    "scan_triples",
    "self_intersection",
    "triple_of",
]
