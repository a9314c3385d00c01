"""Weighted (shift-dependent) entropies of non-negative lifetime distributions."""

from .bounds import (
    BoundReport,
    ClassificationReport,
    bound_global,
    bound_past_upper,
    bound_residual_lower,
    classify,
)
from .characterization import (
    ReconstructionInput,
    g_paper,
    reconstruct_hazard,
    reconstruct_survival_curve,
)
from .distributions import (
    BetaDist,
    Distribution,
    Exponential,
    GammaDist,
    PiecewiseConstant,
    TriangularDown,
    TriangularUp,
    Uniform,
    parse_dist,
)
from .entropies import (
    EntropyCurve,
    MeasureKind,
    closed_form_weighted_entropy,
    differential_entropy,
    entropy_curve,
    evaluate,
    mean_past_lifetime,
    mean_residual_value,
    past_entropy,
    residual_entropy,
    weighted_entropy,
    weighted_past_entropy,
    weighted_residual_entropy,
)
from .identities import IdentityReport, Verdict
from .numerics import QuadratureConfig, differentiate, find_root, integrate
from .transforms import MonotoneTransform, TransformedDistribution

__version__ = "0.1.0"

__all__ = [
    "BetaDist",
    "BoundReport",
    "ClassificationReport",
    "Distribution",
    "EntropyCurve",
    "Exponential",
    "GammaDist",
    "IdentityReport",
    "MeasureKind",
    "MonotoneTransform",
    "PiecewiseConstant",
    "QuadratureConfig",
    "ReconstructionInput",
    "TransformedDistribution",
    "TriangularDown",
    "TriangularUp",
    "Uniform",
    "Verdict",
    "bound_global",
    "bound_past_upper",
    "bound_residual_lower",
    "classify",
    "closed_form_weighted_entropy",
    "differential_entropy",
    "differentiate",
    "entropy_curve",
    "evaluate",
    "find_root",
    "g_paper",
    "integrate",
    "mean_past_lifetime",
    "mean_residual_value",
    "parse_dist",
    "past_entropy",
    "reconstruct_hazard",
    "reconstruct_survival_curve",
    "residual_entropy",
    "weighted_entropy",
    "weighted_past_entropy",
    "weighted_residual_entropy",
]
