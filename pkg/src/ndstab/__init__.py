"""Exact symbolic-numeric stabilizability tests and stable polynomials for nD systems."""

from .groebner import GroebnerBasis, Ideal, NotZeroDimensionalError, groebner, normal_form, quotient_dimension
from .interval import ComplexBox, RatInterval, Sign, box_eval, circle_enclosure, classify, interval_ops
from .poly import (
    MultiPoly,
    UniPoly,
    arith,
    circle_distance_poly,
    complex_split,
    evaluate,
    gcd_univariate,
    l1_norm,
    resultant,
    squarefree_decomposition,
    substitute,
)
from .roots import IsolationError, IsolationResult, count_circle_roots, isolate, real_root_isolation, refine
from .rur import EmptyVarietyError, UnivariateRepresentation, radicalize, univ_r
from .stabilizability import StabilizabilityVerdict, circle_count, is_stabilizable
from .stabilization import (
    ApproxSpectrum,
    Certificate,
    NotStabilizableError,
    StabilityResult,
    approx_spectrum,
    build_stable,
    certify_stable,
    stable_polynomial,
)
from .textform import format_poly, parse_poly

__version__ = "0.1.0"
