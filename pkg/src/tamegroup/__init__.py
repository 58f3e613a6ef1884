"""Exact computation of tame isotropy groups of polynomial derivations.

Coefficients live in a cyclotomic field Q(zeta_m); polynomials are sparse
and exact.  The main entry points are re-exported here.
"""

from .algebra import (
    antiderivative,
    common_factor_check,
    depress,
    divides,
    power_decompose,
    scaling_order,
    shift_invariance,
    univariate_gcd,
)
from .commutant import (
    AffineFamily,
    ExplicitGenerators,
    OffsetFamily,
    ScalingFamily,
    StabilityWitness,
    Translations,
    affine_axis_commutant,
    axis_commutant,
    closed_form_tame_group,
    elementary_stable_witness,
    scalar_axis_commutant,
    translation_commutant,
)
from .errors import (
    DomainError,
    HypothesisFailure,
    Inconclusive,
    NotCommuting,
    PreconditionViolation,
    TemplateMismatch,
)
from .field import QQ, CoefficientField, FieldScalar
from .maps import (
    Derivation,
    ElementaryAuto,
    Endomorphism,
    TameWord,
    apply,
    classify_shape,
    commutes,
    compose_word,
    conjugate,
    derive,
    elementary_inverse,
    word_inverse,
)
from .parse import ParseError, format_poly, parse_derivation, parse_elementary, parse_endomorphism, parse_poly
from .poly import MultiPoly, PolyRing
from .simplicity import (
    darboux_fixed_cofactor,
    first_integrals,
    principal_stable,
    shamsuddin_decide,
    shamsuddin_ode_solve,
    two_var_prefilter,
)
from .verify import verify_theorem

__version__ = "1.0.0"

__all__ = [
    "AffineFamily",
    "CoefficientField",
    "Derivation",
    "DomainError",
    "ElementaryAuto",
    "Endomorphism",
    "ExplicitGenerators",
    "FieldScalar",
    "HypothesisFailure",
    "Inconclusive",
    "MultiPoly",
    "NotCommuting",
    "OffsetFamily",
    "ParseError",
    "PolyRing",
    "PreconditionViolation",
    "QQ",
    "ScalingFamily",
    "StabilityWitness",
    "TameWord",
    "TemplateMismatch",
    "Translations",
    "affine_axis_commutant",
    "antiderivative",
    "apply",
    "axis_commutant",
    "classify_shape",
    "closed_form_tame_group",
    "common_factor_check",
    "commutes",
    "compose_word",
    "conjugate",
    "darboux_fixed_cofactor",
    "depress",
    "derive",
    "divides",
    "elementary_inverse",
    "elementary_stable_witness",
    "first_integrals",
    "format_poly",
    "parse_derivation",
    "parse_elementary",
    "parse_endomorphism",
    "parse_poly",
    "power_decompose",
    "principal_stable",
    "scalar_axis_commutant",
    "scaling_order",
    "shamsuddin_decide",
    "shamsuddin_ode_solve",
    "shift_invariance",
    "translation_commutant",
    "two_var_prefilter",
    "univariate_gcd",
    "verify_theorem",
    "word_inverse",
]
