import math
from fractions import Fraction
from math import comb

import pytest
from scipy.special import ellipk

from wulff_tension import (
    DomainError,
    green,
    green_bessel,
    green_quadrature,
    green_series,
    hitting_laplace,
    ising_correlation_asymptotic,
    ising_prefactor,
    make_pair,
)
from wulff_tension.asymptotics import decay_rate, ising_prefactor_tanh


def exact_series(x, m, k_max):
    # rotating by 45 degrees splits the walk into two independent +-1 walks
    x1, x2 = x
    m = Fraction(m)
    total = Fraction(0)
    for k in range(k_max + 1):
        u, v = k + x1 + x2, k + x1 - x2
        if u % 2 or u < 0 or v < 0 or u > 2 * k or v > 2 * k:
            continue
        total += m**k * comb(k, u // 2) * comb(k, v // 2) / Fraction(4) ** k
    return float(total)


@pytest.mark.parametrize("x", [(0, 0), (1, 0), (2, 1), (3, -3), (0, 5)])
def test_series_matches_binomial_oracle(x):
    gv = green_series(x, 0.5, k_max=60)
    assert gv.value == pytest.approx(exact_series(x, Fraction(1, 2), 60), rel=1e-14, abs=1e-300)


@pytest.mark.parametrize("m", [0.2, 0.5, 0.8, 0.95])
def test_origin_is_elliptic_integral(m):
    # G(0) = (2/pi) K(k = m); scipy takes the parameter k^2
    ref = 2 / math.pi * ellipk(m * m)
    for method in ("series", "quadrature"):
        assert green((0, 0), m, method).value == pytest.approx(ref, rel=1e-11)


def test_reference_value_at_half():
    assert green_series((0, 0), 0.5).value == pytest.approx(1.073182, abs=1e-6)


@pytest.mark.parametrize("method", ["series", "quadrature", "bessel"])
def test_discrete_harmonic_relation(method):
    m = 0.7
    x = (3, 2)

    def g(y):
        return green(y, m, method).value

    nbrs = [(4, 2), (2, 2), (3, 3), (3, 1)]
    assert g(x) == pytest.approx(m / 4 * sum(g(y) for y in nbrs), rel=1e-11)


def test_symmetry_is_exact_for_series():
    m = 0.6
    ref = green_series((4, 1), m).value
    for y in ((1, 4), (-4, 1), (4, -1), (-1, -4)):
        assert green_series(y, m).value == ref


def test_three_routes_agree():
    for m in (0.3, 0.9):
        s = green_series((5, 2), m)
        b = green_bessel((5, 2), m)
        q = green_quadrature((5, 2), m, 1024)
        assert b.value == pytest.approx(s.value, rel=1e-10)
        assert q.value == pytest.approx(s.value, rel=1e-8)


def test_capped_series_error_bound_is_honest():
    # a short truncation at m close to 1: the tail bound must cover the gap
    s = green_series((5, 2), 0.99, k_max=400)
    b = green_bessel((5, 2), 0.99)
    assert 0 < b.value - s.value <= s.err_est


def test_default_truncation_is_capped():
    from wulff_tension.green import SERIES_KMAX_CAP, default_kmax

    assert default_kmax(0.999) == SERIES_KMAX_CAP
    assert default_kmax(0.5, (70, 0)) == 70


def test_decay_rate_extraction():
    m = 0.5
    n = 200
    slope = math.log(green_bessel((n, 0), m).value / green_bessel((2 * n, 0), m).value) / n
    # subtract the r^-1/2 prefactor correction
    slope -= 0.5 * math.log(2) / n
    assert slope == pytest.approx(decay_rate((1, 0), m), rel=1e-3)


def test_hitting_first_step_identity():
    # G(0) = 1 + m G(e1) by the first-step decomposition
    m = 0.8
    g0 = green_series((0, 0), m).value
    h = hitting_laplace((1, 0), m)
    assert h.value == pytest.approx((g0 - 1) / (m * g0), rel=1e-12)
    assert hitting_laplace((1, 0), make_pair(1.0)).value < 1


def test_hitting_methods_agree():
    a = hitting_laplace((7, 3), 0.9, "series").value
    b = hitting_laplace((7, 3), 0.9, "bessel").value
    assert a == pytest.approx(b, rel=1e-11)


def test_domain_errors():
    with pytest.raises(DomainError):
        green_quadrature((1, 0), 0.9995)
    with pytest.raises(DomainError):
        green_quadrature((1, 0), 0.5, 100)
    with pytest.raises(DomainError):
        green_bessel((0, 0), 0.5)
    with pytest.raises(DomainError):
        green_series((1.5, 0), 0.5)
    with pytest.raises(DomainError):
        green_series((1, 0), 1.0)
    with pytest.raises(DomainError):
        hitting_laplace((0, 0), 0.5)
    with pytest.raises(DomainError):
        ising_prefactor(0.6)


def test_killed_immediately():
    assert green_series((0, 0), 0.0).value == 1.0
    assert green_series((1, 0), 0.0).value == 0.0


def test_prefactor_forms_agree():
    for b in (0.1, 0.3, 0.43):
        assert ising_prefactor(b) == pytest.approx(ising_prefactor_tanh(b), rel=1e-12)


def test_correlation_proxy():
    p = make_pair(0.8)
    v = ising_correlation_asymptotic((10, 0), p)
    assert v == pytest.approx(ising_prefactor(p.beta_low) * green_bessel((10, 0), p.m).value)


def test_hitting_small_m_single_path():
    assert hitting_laplace((1, 0), 1e-3).value / (1e-3 / 4) == pytest.approx(1.0, abs=1e-3)
    assert hitting_laplace((1, 0), 0.5).value == pytest.approx(0.136383, abs=1e-6)
