"""Maxima of 2x2 principal minors of random matrices: limit laws,
Monte Carlo sampling and kernel diagnostics."""

from ._minormax import (
    BudgetError,
    Diagnostic,
    DomainError,
    GXi,
    Gumbel,
    NormConstants,
    PairMaxResult,
    QuadratureError,
    SeriesCheck,
    chores_limits,
    describe,
    diag_max,
    eta,
    feng_consistency_delta,
    goe_pair_max,
    gumbel_cdf,
    gxi_cdf,
    inner_integral,
    ks_distance,
    law_cdf,
    law_for,
    law_quantile,
    log_std_normal_sf,
    lower_incomplete_gamma,
    norm_constants,
    q_tp,
    q_x,
    run_mc,
    series_identity_check,
    std_normal_sf,
    top_eig_2x2,
    wishart_pair_max,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
