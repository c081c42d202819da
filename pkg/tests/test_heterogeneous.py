import math
import warnings

import numpy as np
import pytest
from scipy import integrate

from wpteff import SystemParams
from wpteff.analytic import (HetTailConstants, avg_rr_het, avg_rr_het_approx, avg_rr_hom, cdf_pout_het,
                             equivalent_distance, frechet_scale, frechet_scale_lambert, frechet_scale_quantile,
                             frechet_scale_unenlarged, mean_os_het_numeric, mean_os_het_numeric_many,
                             pdf_pout_het, scaling_law_het, sf_pout_het, tail_approx_het)
from wpteff.analytic.heterogeneous import incomplete_gamma_derivative

# single-UE CDF by integrating the exponential fading law over the annulus (scipy quad)
CDF_ORACLE = {
    1e-4: 0.2126822262442294,
    1e-2: 0.9045078638169628,
    0.1: 0.9728328214551837,
    1.0: 0.9942462945231597,
    10.0: 0.9997575605721629,
}
SF_ORACLE = {
    1e-4: 0.7873177737557706,
    1e-2: 0.09549213618303716,
    0.1: 0.027167178544816407,
    1.0: 0.005753705476840304,
    10.0: 0.0002424394278371156,
}
# E[max of N] by quadrature of 1 - F^N with the scipy-integrated survival
OS_ORACLE = {2: 0.05588516496592437, 5: 0.1350775886626958, 10: 0.2589776393993407}


@pytest.mark.parametrize("x", sorted(CDF_ORACLE))
def test_cdf_and_sf_against_distance_integral(ref50, x):
    assert cdf_pout_het(x, ref50) == pytest.approx(CDF_ORACLE[x], rel=1e-10)
    assert sf_pout_het(x, ref50) == pytest.approx(SF_ORACLE[x], rel=1e-10)


def test_cdf_limits(ref50):
    assert cdf_pout_het(0.0, ref50) == 0.0
    assert sf_pout_het(0.0, ref50) == 1.0
    assert sf_pout_het(1e4, ref50) < 1e-200


def test_pdf_is_derivative_of_cdf(ref50):
    for x in (1e-3, 0.05, 2.0):
        h = 1e-6 * x
        fd = (cdf_pout_het(x + h, ref50) - cdf_pout_het(x - h, ref50)) / (2 * h)
        assert pdf_pout_het(x, ref50) == pytest.approx(fd, rel=1e-6)


def test_round_robin_mean(ref50):
    assert avg_rr_het(ref50) == pytest.approx(0.02836774340608597, rel=1e-13)
    # alpha = 4 makes the simplified form exact
    assert abs(avg_rr_het_approx(ref50) / avg_rr_het(ref50) - 1) < 1e-12


def test_round_robin_mean_for_other_alpha():
    p = SystemParams.reference(50.0, alpha=3.0)
    direct = integrate.quad(lambda d: p.c * d ** -3.0 * 2 * d / (30 ** 2 - 2 ** 2), 2, 30, epsrel=1e-14)[0]
    assert avg_rr_het(p) == pytest.approx(direct, rel=1e-12)


def test_equivalent_distance(ref50):
    d_bar = equivalent_distance(ref50)
    assert d_bar == pytest.approx(7.745966692414834, rel=1e-14)
    assert round(d_bar, 5) == 7.74597
    assert abs(avg_rr_hom(ref50, d_bar) / avg_rr_het_approx(ref50) - 1) < 1e-12


def test_frechet_scale_variants(ref50):
    evt = frechet_scale(ref50, 50)
    assert evt.shape == 0.5
    assert evt.b2 == pytest.approx(50 * 0.02836774340608597, rel=1e-12)
    assert evt.b2 == pytest.approx(1.41838717, rel=1e-8)
    assert frechet_scale_unenlarged(ref50, 50) == pytest.approx(evt.b2 / 2, rel=1e-12)
    assert scaling_law_het(ref50, 50) == pytest.approx(evt.b2, rel=1e-14)
    # the quantile scale solves survival = 1/N
    bq = frechet_scale_quantile(ref50, 50)
    assert sf_pout_het(bq, ref50) == pytest.approx(1 / 50, rel=1e-9)
    assert frechet_scale_quantile(ref50, 1) == 0.0
    assert frechet_scale_lambert(ref50, 50) > 0


def test_tail_approximation_tracks_survival_far_out(ref50):
    t = HetTailConstants.from_params(ref50)
    x = 20.0 / t.r1
    assert tail_approx_het(x, ref50) == pytest.approx(sf_pout_het(x, ref50), rel=0.1)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        tail_approx_het(0.1 / t.r1, ref50)
    assert any(issubclass(w.category, RuntimeWarning) for w in caught)


def test_tail_constants(ref50):
    t = HetTailConstants.from_params(ref50)
    assert t.r1 == pytest.approx(2 ** 4 / ref50.c, rel=1e-14)
    assert t.r2 == pytest.approx(30 ** 4 / ref50.c, rel=1e-14)


@pytest.mark.parametrize("n", sorted(OS_ORACLE))
def test_opportunistic_mean_quadrature(ref50, n):
    assert mean_os_het_numeric(ref50, n, 1e-10) == pytest.approx(OS_ORACLE[n], rel=1e-8)


def test_opportunistic_mean_many_matches_single(ref50):
    ns = [1, 3, 8]
    many = mean_os_het_numeric_many(ref50, ns, 1e-9)
    for n, v in zip(ns, many):
        assert v == pytest.approx(mean_os_het_numeric(ref50, n, 1e-9), rel=1e-8)
    assert many[0] == pytest.approx(avg_rr_het(ref50), rel=1e-8)
    with pytest.raises(ValueError):
        mean_os_het_numeric_many(ref50, ns, 1e-12)


def test_incomplete_gamma_derivative_matches_finite_difference():
    a, b, x = 1.5, 2.0, 0.7
    g = lambda s: integrate.quad(lambda t: t ** (a - 1) * math.exp(-t), b * s, np.inf, epsrel=1e-14)[0]
    h = 1e-5
    assert incomplete_gamma_derivative(a, b, x) == pytest.approx((g(x + h) - g(x - h)) / (2 * h), rel=1e-7)
