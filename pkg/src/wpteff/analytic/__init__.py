"""Closed forms, special functions and extreme-value results."""

from .evt import EvtParams, limiting_cdf, limiting_mean, standard_frechet_cdf, standard_gumbel_cdf
from .heterogeneous import (
    HetTailConstants,
    avg_rr_het,
    avg_rr_het_approx,
    cdf_pout_het,
    equivalent_distance,
    frechet_scale,
    frechet_scale_lambert,
    frechet_scale_quantile,
    frechet_scale_unenlarged,
    mean_os_het_numeric,
    mean_os_het_numeric_many,
    pdf_pout_het,
    scaling_law_het,
    sf_pout_het,
    tail_approx_het,
)
from .homogeneous import (
    avg_os_hom_asymptotic,
    avg_os_hom_exact,
    avg_rr_hom,
    gumbel_constants,
    hom_power_pdf_cdf,
    hom_scale,
    scaling_law_hom,
)
from .special import (
    EULER_GAMMA,
    NumericalError,
    adaptive_quad,
    gamma_interval,
    harmonic_number,
    lower_incomplete_gamma,
    upper_incomplete_gamma,
)
from .vonmises import von_mises_analytic, von_mises_diagnostic
