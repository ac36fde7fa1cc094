"""Binned Bell inequalities for qudits and truncated two-mode squeezed states."""

from ._binbell import (
    BinningSpec,
    CoefficientTensor,
    CutoffError,
    EnumerationLimitError,
    PhaseOptimizationResult,
    PhaseSettings,
    TightnessReport,
    bell_expectation,
    bell_operator,
    bell_operator_norm,
    build_coefficients,
    bw,
    count_max_configs,
    cv,
    facet_threshold,
    joint_probability,
    lr_max,
    m_formula,
    optimal_t1_phases,
    optimize_phases,
    t1_cosine_form,
    tightness_certificate,
    verify_operator_identity,
)

__version__ = "0.1.0"
