import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wulff_tension import BETA_C, DomainError, make_pair, onsager_axis, solve_s, tau, wulff_boundary
from wulff_tension.rate import log_mgf

coord = st.floats(-5, 5, allow_nan=False)
betas = st.floats(0.45, 2.0)


def test_reference_value():
    # frozen from the closed form; equals the axis formula 2b + log tanh b
    assert tau((1, 0), 0.6).tau == pytest.approx(0.5783351148015349, abs=1e-12)
    assert onsager_axis(0.6) == pytest.approx(1.2 + math.log(math.tanh(0.6)), abs=1e-15)


def test_diagonal_closed_form():
    # on the diagonal both terms coincide: 2 (sqrt(1 + s^2/2) - 1) = excess
    p = make_pair(0.8)
    s = math.sqrt(2.0 * ((1 + p.excess / 2) ** 2 - 1))
    x = (1 / math.sqrt(2), 1 / math.sqrt(2))
    assert tau(x, p).tau == pytest.approx(math.sqrt(2) * math.asinh(s / math.sqrt(2)), rel=1e-12)


def test_alternative_form_is_inconsistent():
    # a variant with arcsinh(sqrt(1 + s^2 x^2)) does not reproduce the axis law
    for b in (0.5, 0.8, 1.5):
        p = make_pair(b)
        s = solve_s((1, 0), p)
        variant = math.asinh(math.sqrt(1 + s * s))
        assert abs(variant - onsager_axis(b)) > 1e-3
        assert tau((1, 0), p).tau == pytest.approx(onsager_axis(b), abs=1e-12)


@settings(max_examples=60)
@given(coord, coord, betas, st.floats(0.1, 10))
def test_positive_homogeneity(x1, x2, b, c):
    if math.hypot(x1, x2) < 1e-3:
        return
    p = make_pair(b)
    assert tau((c * x1, c * x2), p).tau == pytest.approx(c * tau((x1, x2), p).tau, rel=1e-10)


@settings(max_examples=60)
@given(coord, coord, coord, coord, betas)
def test_triangle_inequality(a1, a2, b1, b2, b):
    if min(math.hypot(a1, a2), math.hypot(b1, b2), math.hypot(a1 + b1, a2 + b2)) < 1e-3:
        return
    p = make_pair(b)
    lhs = tau((a1 + b1, a2 + b2), p).tau
    assert lhs <= tau((a1, a2), p).tau + tau((b1, b2), p).tau + 1e-10


@given(coord, coord, betas)
def test_lattice_symmetries(x1, x2, b):
    if math.hypot(x1, x2) < 1e-3:
        return
    p = make_pair(b)
    t = tau((x1, x2), p).tau
    for y in ((-x1, x2), (x1, -x2), (x2, x1)):
        assert tau(y, p).tau == pytest.approx(t, rel=1e-12)


def test_zero_vector_and_critical():
    assert tau((0, 0), 0.6).tau == 0.0
    with pytest.raises(DomainError):
        solve_s((0, 0), 0.6)
    assert tau((1, 2), BETA_C).tau == 0.0


def test_wulff_boundary_is_level_set():
    p = make_pair(0.7)
    shape = wulff_boundary(p, 64)
    assert len(shape) == 64
    for y in shape.points:
        assert log_mgf(y) == pytest.approx(p.lam, abs=1e-12)


def test_support_function_of_wulff_shape_is_tau():
    # tau(x) = max over the Wulff shape of x . y (polar duality)
    p = make_pair(0.9)
    pts = wulff_boundary(p, 4096).points
    for a in np.linspace(0, 2 * math.pi, 11):
        x = np.array([math.cos(a), math.sin(a)])
        assert np.max(pts @ x) == pytest.approx(tau(x, p).tau, rel=1e-5)


def test_degenerate_shape_at_critical():
    shape = wulff_boundary(BETA_C, 64)
    assert shape.degenerate
    assert np.all(np.abs(shape.points) < 1e-6)
    with pytest.raises(DomainError):
        wulff_boundary(0.6, 3)


def test_unnormalized_diagonal_value():
    tv = tau((1, 1), 0.6)
    assert tv.s == pytest.approx(0.423487, abs=1e-6)
    assert tv.tau == pytest.approx(2 * math.asinh(tv.s), rel=1e-14)
    assert tv.tau == pytest.approx(0.8235057378353038, abs=1e-12)


def test_axis_intercept_of_wulff_shape():
    p = make_pair(0.6)
    y1 = wulff_boundary(p, 8).points[0][0]
    assert y1 == pytest.approx(math.acosh(2 * math.exp(p.lam) - 1), rel=1e-12)
    assert y1 == pytest.approx(tau((1, 0), p).tau, rel=1e-12)
