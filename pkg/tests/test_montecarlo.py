import pytest

from wulff_tension import DomainError, green_series, hitting_laplace, simulate_hit, simulate_visits
from wulff_tension.montecarlo import CHUNK


def test_visits_within_four_sigma():
    est = simulate_visits((2, 1), 0.8, 200_000, seed=3)
    ref = green_series((2, 1), 0.8).value
    assert abs(est.mean - ref) <= 4 * est.stderr
    assert est.statistic == "visits" and est.truncated == 0


def test_hit_within_four_sigma():
    est = simulate_hit((3, 0), 0.9, 200_000, seed=5)
    ref = hitting_laplace((3, 0), 0.9).value
    assert abs(est.mean - ref) <= 4 * est.stderr


def test_seed_determinism_and_worker_independence():
    n = 3 * CHUNK + 17
    a = simulate_visits((1, 1), 0.7, n, seed=9, workers=1)
    b = simulate_visits((1, 1), 0.7, n, seed=9, workers=3)
    c = simulate_visits((1, 1), 0.7, n, seed=10, workers=1)
    assert a == b
    assert a.mean != c.mean


def test_prefix_consistency():
    # sample i has the same stream regardless of n_samples
    a = simulate_hit((1, 0), 0.5, 10, seed=1)
    b = simulate_hit((1, 0), 0.5, 1, seed=1)
    assert b.mean in (0.0, 1.0)
    assert b.stderr == 0.0
    assert a.n_samples == 10


def test_zero_survival():
    est = simulate_visits((0, 0), 0.0, 1000)
    assert est.mean == 1.0 and est.stderr == 0.0


def test_domain_errors():
    with pytest.raises(DomainError):
        simulate_hit((0, 0), 0.5, 10)
    with pytest.raises(DomainError):
        simulate_visits((1, 0), 1.0, 10)
    with pytest.raises(DomainError):
        simulate_visits((1, 0), 0.5, 0)
