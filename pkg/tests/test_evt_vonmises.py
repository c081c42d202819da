import math

import pytest

from wpteff.analytic import (EvtParams, HetTailConstants, NumericalError, hom_scale, limiting_cdf, limiting_mean,
                             standard_frechet_cdf, standard_gumbel_cdf, von_mises_analytic, von_mises_diagnostic)
from wpteff.channel import Scenario


def test_standard_cdfs():
    assert standard_gumbel_cdf(0.0) == pytest.approx(math.exp(-1))
    assert standard_frechet_cdf(1.0, 0.5) == pytest.approx(math.exp(-1))
    assert standard_frechet_cdf(4.0, 0.5) == pytest.approx(math.exp(-0.5))


def test_limiting_cdf_and_mean():
    g = EvtParams.gumbel(2.0, 0.5)
    assert limiting_cdf(g, 2.0) == pytest.approx(math.exp(-1))
    assert g.normalize(3.0) == pytest.approx(2.0)
    f = EvtParams.frechet(3.0, 0.5)
    assert limiting_cdf(f, 0.0) == 0.0
    assert limiting_cdf(f, -1.0) == 0.0
    assert limiting_mean(f) == math.inf
    assert limiting_mean(EvtParams.frechet(3.0, 3.0)) == pytest.approx(3.0 * math.gamma(1 - 1 / 3))


def test_homogeneous_hazard_is_constant(ref50):
    scen = Scenario.homogeneous(10.0)
    b = hom_scale(ref50, 10.0)
    for x in (0.1 * b, b, 30 * b):
        assert von_mises_diagnostic(ref50, scen, x) == pytest.approx(1 / b, rel=1e-12)
    assert von_mises_analytic(ref50, scen, b) == pytest.approx(1 / b, rel=1e-14)
    with pytest.raises(ValueError):
        von_mises_diagnostic(ref50, scen, 0.0)


def test_heterogeneous_diagnostic_regimes(ref50):
    scen = Scenario.heterogeneous()
    t = HetTailConstants.from_params(ref50)
    mid = von_mises_diagnostic(ref50, scen, 3e-3)
    assert mid == pytest.approx(0.5, abs=0.05)
    far = 100.0
    assert von_mises_diagnostic(ref50, scen, far) == pytest.approx(von_mises_analytic(ref50, scen, far), rel=1e-5)
    # far tail grows like r1 x instead of settling at 2/alpha
    assert von_mises_diagnostic(ref50, scen, far) / (t.r1 * far) == pytest.approx(1.0, rel=0.1)


def test_diagnostic_reports_underflow(ref50):
    with pytest.raises(NumericalError):
        von_mises_diagnostic(ref50, Scenario.heterogeneous(), 1e6)
