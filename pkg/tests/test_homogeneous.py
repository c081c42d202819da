import math

import numpy as np
import pytest
from scipy import integrate

from wpteff.analytic import (EULER_GAMMA, avg_os_hom_asymptotic, avg_os_hom_exact, avg_rr_hom, gumbel_constants,
                             hom_power_pdf_cdf, hom_scale, limiting_mean, scaling_law_hom)


def test_round_robin_mean_at_10m(ref50):
    assert avg_rr_hom(ref50, 10.0) == pytest.approx(0.010212387626190568, rel=1e-13)


def test_round_robin_mean_rejects_distance_outside_annulus(ref50):
    with pytest.raises(ValueError):
        avg_rr_hom(ref50, 40.0)


def test_pdf_integrates_to_cdf(ref50):
    b = hom_scale(ref50, 10.0)
    x = 3 * b
    area = integrate.quad(lambda t: hom_power_pdf_cdf(t, ref50, 10.0)[0], 0, x, epsrel=1e-13)[0]
    assert area == pytest.approx(hom_power_pdf_cdf(x, ref50, 10.0)[1], rel=1e-12)
    with pytest.raises(ValueError):
        hom_power_pdf_cdf(-1.0, ref50, 10.0)


def test_exact_opportunistic_mean_is_harmonic(ref50):
    b = hom_scale(ref50, 10.0)
    assert avg_os_hom_exact(ref50, 10.0, 50) == pytest.approx(b * 4.499205338329425, rel=1e-14)
    assert avg_os_hom_exact(ref50, 10.0, 50) == pytest.approx(0.04594762892484595, rel=1e-13)
    # direct integral of the survival of the maximum of 7 exponentials
    n = 7
    direct = integrate.quad(lambda x: 1 - (1 - math.exp(-x / b)) ** n, 0, np.inf, epsrel=1e-12)[0]
    assert avg_os_hom_exact(ref50, 10.0, n) == pytest.approx(direct, rel=1e-10)


def test_gumbel_constants_and_asymptotic_mean(ref50):
    evt = gumbel_constants(ref50, 10.0, 50)
    assert evt.b1 == pytest.approx(0.010212387626190568, rel=1e-13)
    assert evt.a1 == pytest.approx(0.03995109533400724, rel=1e-13)
    assert avg_os_hom_asymptotic(ref50, 10.0, 50) == pytest.approx(0.04584584544789101, rel=1e-13)
    assert limiting_mean(evt) == pytest.approx(evt.a1 + EULER_GAMMA * evt.b1, rel=1e-15)
    gap = abs(avg_os_hom_asymptotic(ref50, 10.0, 50) - avg_os_hom_exact(ref50, 10.0, 50))
    assert gap / avg_os_hom_exact(ref50, 10.0, 50) < 0.003


def test_log_scaling_law(ref50):
    assert scaling_law_hom(ref50, 10.0, 1) == 0.0
    assert scaling_law_hom(ref50, 10.0, 20) == pytest.approx(hom_scale(ref50, 10.0) * math.log(20), rel=1e-14)
