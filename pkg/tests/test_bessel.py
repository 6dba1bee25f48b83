import math

import mpmath
import pytest

from wulff_tension.bessel import log_bessel_i


@pytest.mark.parametrize("n", [0, 1, 5, 40, 300])
@pytest.mark.parametrize("z", [1e-3, 0.5, 10.0, 30.0, 200.0, 2000.0])
def test_against_mpmath(n, z):
    ref = float(mpmath.log(mpmath.besseli(n, z)))
    assert log_bessel_i(n, z) == pytest.approx(ref, rel=1e-12, abs=1e-12)


def test_zero_argument():
    assert log_bessel_i(0, 0.0) == 0.0
    assert log_bessel_i(3, 0.0) == -math.inf


def test_no_underflow_deep_in_the_tail():
    v = log_bessel_i(1000, 1.0)
    ref = float(mpmath.log(mpmath.besseli(1000, 1.0)))
    assert v == pytest.approx(ref, rel=1e-12)
