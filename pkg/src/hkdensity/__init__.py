"""Hilbert-Kunz density functions and F-thresholds of graded pairs on curves."""

from hkdensity.errors import (
    BudgetExceededError,
    HKError,
    InconsistentHNError,
    InvariantViolation,
    ValidationError,
)
from hkdensity.hn import (
    CurveData,
    GeneratorDegrees,
    HNData,
    StrongHNData,
    SyzygyInput,
    bundle_stats,
    frobenius_pullback,
    hn_of_generator_degrees,
    validate_syzygy_hn,
)
from hkdensity.piecewise import PiecewiseLinear
from hkdensity.density import (
    EnvelopePair,
    density_of_bundle,
    finite_level_envelope,
    h1_semistable,
    integrate,
    pair_density,
    pair_envelope,
    support_endpoint,
)
from hkdensity.reduction import (
    alpha_infinity_report,
    check_threshold_denominator,
    klein_threshold,
    peel_mu_reduction,
    threshold_alpha,
    verify_theorem_e,
)

__version__ = "0.1.0"
