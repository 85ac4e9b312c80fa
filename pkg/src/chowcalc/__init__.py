"""Exact intersection-theory calculator: graded rings, characteristic
classes, projective bundles, blow-ups, and the Mukai-flop verification."""

from .blowup import (
    BlowupClass,
    BlowupRing,
    EmbeddingData,
    ValidationReport,
    cw_top,
    embedding_validate,
    key_formula_check,
    linear_blowup,
    load_embedding,
)
from .chern import (
    BundleClass,
    CharClass,
    binomial,
    chern_character,
    dual_bundle,
    mukai_vector,
    power_sums,
    segre_classes,
    sqrt_one_series,
    tensor_by_line,
    todd_class,
    whitney_sum,
)
from .errors import ConsistencyError
from .flop import (
    CorrectionClass,
    FlopContext,
    SigmaVector,
    e_class,
    eta_prime_push,
    eta_push_h_power,
    flop_context,
    sigma_top_product,
    term_A,
    term_B,
    term_C,
    verify_foundations,
    verify_multiplicativity,
    zstar_correction,
)
from .projbundle import (
    PBElement,
    ProjBundleRing,
    binomial_identity_check,
    binomial_identity_sum,
)
from .report import CheckResult, Report
from .rings import GradedElement, GradedRing, RingSpec, ring_make

__all__ = [
    "BlowupClass",
    "BlowupRing",
    "BundleClass",
    "CharClass",
    "CheckResult",
    "ConsistencyError",
    "CorrectionClass",
    "EmbeddingData",
    "FlopContext",
    "GradedElement",
    "GradedRing",
    "PBElement",
    "ProjBundleRing",
    "Report",
    "RingSpec",
    "SigmaVector",
    "ValidationReport",
    "binomial",
    "binomial_identity_check",
    "binomial_identity_sum",
    "chern_character",
    "cw_top",
    "dual_bundle",
    "e_class",
    "embedding_validate",
    "eta_prime_push",
    "eta_push_h_power",
    "flop_context",
    "key_formula_check",
    "linear_blowup",
    "load_embedding",
    "mukai_vector",
    "power_sums",
    "ring_make",
    "segre_classes",
    "sigma_top_product",
    "sqrt_one_series",
    "tensor_by_line",
    "term_A",
    "term_B",
    "term_C",
    "todd_class",
    "verify_foundations",
    "verify_multiplicativity",
    "whitney_sum",
    "zstar_correction",
]

__version__ = "0.1.0"
