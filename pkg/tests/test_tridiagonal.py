import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from robin_ball.tridiagonal import eigvalsh_smallest, gershgorin_bounds, inverse_iteration, sturm_count


def _dense(d, e):
    return np.diag(d) + np.diag(e, 1) + np.diag(e, -1)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 60), st.integers(0, 2**32 - 1))
def test_matches_numpy(n, seed):
    rng = np.random.default_rng(seed)
    d, e = rng.normal(size=n), rng.normal(size=n - 1)
    count = max(1, n // 2)
    ref = np.linalg.eigvalsh(_dense(d, e))[:count]
    assert eigvalsh_smallest(d, e, count) == pytest.approx(ref, abs=1e-10)


def test_sturm_count_and_bounds():
    rng = np.random.default_rng(3)
    d, e = rng.normal(size=40), rng.normal(size=39)
    lam = np.linalg.eigvalsh(_dense(d, e))
    lo, hi = gershgorin_bounds(d, e)
    assert lo <= lam[0] and lam[-1] <= hi
    for x in (-1.0, 0.0, 0.7, 2.0):
        assert sturm_count(d, e, x) == int(np.sum(lam < x))


def test_laplacian_clusters_and_zero_offdiagonal():
    n = 200
    d, e = np.full(n, 2.0), np.full(n - 1, -1.0)
    exact = 2 - 2 * np.cos(np.arange(1, 11) * np.pi / (n + 1))
    assert eigvalsh_smallest(d, e, 10) == pytest.approx(exact, abs=1e-12)
    # a decoupled matrix with a repeated eigenvalue
    d2, e2 = np.array([1.0, 1.0, 3.0]), np.array([0.0, 0.0])
    assert eigvalsh_smallest(d2, e2, 3) == pytest.approx([1.0, 1.0, 3.0], abs=1e-14)


def test_inverse_iteration():
    rng = np.random.default_rng(11)
    d, e = rng.normal(size=30), rng.normal(size=29)
    a = _dense(d, e)
    lam = eigvalsh_smallest(d, e, 3)
    for x in lam:
        v = inverse_iteration(d, e, x)
        assert np.linalg.norm(a @ v - x * v) <= 1e-9 * np.linalg.norm(v)
