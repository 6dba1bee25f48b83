import math

import numpy as np
import pytest

from wulff_tension import (
    DomainError,
    decay_rate,
    green_bessel,
    make_pair,
    numeric_saddle,
    oz_correlation_asymptotic,
    oz_visits_asymptotic,
    saddle,
)
from wulff_tension.asymptotics import f_m, laplace_estimate, reduce_angle, saddle_u


def test_reduce_angle():
    assert reduce_angle(0.3) == pytest.approx(0.3)
    assert reduce_angle(math.pi / 2 - 0.3) == pytest.approx(0.3)
    assert reduce_angle(-0.3) == pytest.approx(0.3)
    assert reduce_angle(math.pi + 0.3) == pytest.approx(0.3)


@pytest.mark.parametrize("phi", [0.0, 0.2, math.pi / 4])
@pytest.mark.parametrize("m", [0.1, 0.5, 0.95])
def test_closed_form_is_stationary(phi, m):
    sd = saddle(phi, m)
    assert sd.grad_norm < 1e-6
    assert sd.hess_det < 0
    assert f_m(sd.u_star, sd.theta1_star, sd.theta2_star, phi, m) == pytest.approx(sd.f_star, abs=1e-12)


def test_axis_rate():
    # on the axis the level set cosh y1 + 1 = 2/m gives the rate directly
    m = 0.5
    assert saddle_u(0.0, m) == pytest.approx(1 / math.sqrt(1 - m))
    assert decay_rate((1, 0), m) == pytest.approx(math.acosh(2 / m - 1), rel=1e-14)


def test_decay_rate_matches_surface_tension():
    # the Green decay rate at m(beta) is the surface tension at beta
    p = make_pair(0.7)
    from wulff_tension import tau

    for x in [(1, 0), (3, 4), (1, 1)]:
        assert decay_rate(x, p.m) == pytest.approx(tau(x, p).tau, rel=1e-10)


def test_numeric_saddle_matches_closed_form():
    sd = saddle(0.4, 0.6)
    chk = numeric_saddle(0.4, 0.6)
    assert np.allclose(chk.point, [sd.u_star, sd.theta1_star, sd.theta2_star], atol=1e-7)
    assert chk.hess_det == pytest.approx(sd.hess_det, rel=1e-5)
    with pytest.raises(DomainError):
        numeric_saddle(0.0, 0.5)


def test_oz_ratio_converges():
    errs = [abs(oz_visits_asymptotic((n, 0), 0.5) / green_bessel((n, 0), 0.5).value - 1)
            for n in (10, 20, 40, 80)]
    assert all(a > b for a, b in zip(errs, errs[1:]))
    off_axis = oz_visits_asymptotic((60, 80), 0.7) / green_bessel((60, 80), 0.7).value
    assert off_axis == pytest.approx(1.0, abs=0.01)


def test_laplace_estimate_from_numeric_harness():
    ratio = laplace_estimate((30, 40), 0.5) / green_bessel((30, 40), 0.5).value
    assert ratio == pytest.approx(1.0, abs=0.01)


def test_correlation_proxy_positive():
    assert oz_correlation_asymptotic((10, 5), make_pair(0.8)) > 0


def test_domain_errors():
    with pytest.raises(DomainError):
        saddle(0.1, 1.0)
    with pytest.raises(DomainError):
        oz_visits_asymptotic((0, 0), 0.5)


def test_hessian_angle_entries():
    # d^2/dtheta^2 of c log sin^2(theta) is -2 c / sin^2(theta) for both angles
    phi, m = 0.5, 0.6
    chk = numeric_saddle(phi, m)
    u, t1, t2 = chk.point
    h11 = -0.5 * m * u * math.cos(t1) - 2 * math.cos(phi) / math.sin(t1) ** 2
    h22 = -0.5 * m * u * math.cos(t2) - 2 * math.sin(phi) / math.sin(t2) ** 2
    assert chk.hessian[1, 1] == pytest.approx(h11, rel=1e-6)
    assert chk.hessian[2, 2] == pytest.approx(h22, rel=1e-6)
