"""Exact-arithmetic birational invariants on polyhedral divisor-lattice models.

The package computes the threshold invariant a(X, L) and the face invariant
b(X, L) on rational polyhedral models of Neron-Severi lattices, evaluates
the numeric adjoint-positivity criteria, and reproduces the balanced-line-
bundle classification for the builtin Fano threefold database.
"""

from .cones import (
    Cone,
    cone_from_facets,
    cone_from_generators,
    contains,
    minimal_supported_face,
    nonneg_combination,
    span_rank,
)
from .classifier import (
    BalancedVerdict,
    Comparison,
    ComparisonOutcome,
    Witness,
    classify,
    curve_violation_scan,
    verify_all,
)
from .criteria import (
    Certificate,
    CertificateKind,
    angehrn_siu_threshold,
    bend_and_break_bound,
    curve_degree_bound,
    deformation_floor,
    reider_effective,
    reider_separates,
    siu_bound,
    wbab_degree_bound,
)
from .database import (
    ExtremalRay,
    FactKind,
    FanoRecord,
    GeometricFact,
    builtin_record,
    load_builtin,
    load_file,
    save_file,
    validate,
)
from .errors import FanobalanceError, LowConfidenceWarning
from .intersection import (
    CurveClass,
    DivisorClass,
    IntersectionTensor,
    anticanonical_from_rays,
    divisor,
    eval_product,
    pair,
    surface_restriction_form,
)
from .invariants import (
    InvariantReport,
    VarietyModel,
    ZariskiDecomposition,
    a_invariant,
    b_invariant,
    b_via_vertical_divisors,
    compute_report,
    curve_a,
    is_rigid_adjoint,
    surface_invariants_kappa0,
    surface_invariants_kappa1,
    zariski_decompose,
)
from .linalg import qvec

__version__ = "0.1.0"

__all__ = [
    "BalancedVerdict",
    "Certificate",
    "CertificateKind",
    "Comparison",
    "ComparisonOutcome",
    "Cone",
    "CurveClass",
    "DivisorClass",
    "ExtremalRay",
    "FactKind",
    "FanoRecord",
    "FanobalanceError",
    "GeometricFact",
    "IntersectionTensor",
    "InvariantReport",
    "LowConfidenceWarning",
    "VarietyModel",
    "Witness",
    "ZariskiDecomposition",
    "a_invariant",
    "angehrn_siu_threshold",
    "anticanonical_from_rays",
    "b_invariant",
    "b_via_vertical_divisors",
    "bend_and_break_bound",
    "builtin_record",
    "classify",
    "compute_report",
    "cone_from_facets",
    "cone_from_generators",
    "contains",
    "curve_a",
    "curve_degree_bound",
    "curve_violation_scan",
    "deformation_floor",
    "divisor",
    "eval_product",
    "is_rigid_adjoint",
    "load_builtin",
    "load_file",
    "minimal_supported_face",
    "nonneg_combination",
    "pair",
    "qvec",
    "reider_effective",
    "reider_separates",
    "save_file",
    "siu_bound",
    "span_rank",
    "surface_invariants_kappa0",
    "surface_invariants_kappa1",
    "surface_restriction_form",
    "validate",
    "verify_all",
    "wbab_degree_bound",
    "zariski_decompose",
]
