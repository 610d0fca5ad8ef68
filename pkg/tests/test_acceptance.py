"""Acceptance criteria, one test each.  Every test prints a single
``ACCEPTANCE n: PASS|FAIL`` line.  Run directly with ``python3 tests/test_acceptance.py``."""
import contextlib
import math
import sys
import time

import mpmath as mp
import numpy as np
import pytest

from robin_ball.ball_spectrum import (
    BallProblem,
    branch_eigenvalue,
    defining_residual,
    multiplicity,
    negative_count,
    radial_eigenfunction,
    solve_positive_root,
)
from robin_ball.bessel_zeros import bessel_zero, bessel_zeros
from robin_ball.interval_spectrum import IntervalProblem, alpha_plus_trig, alpha_minus_trig, alpha_hyp, solve_interval
from robin_ball.oracle import (
    fd_negative_count,
    fd_radial_eigenvalues,
    guardrail,
    harmonic_dimension_bruteforce,
    richardson_order,
)
from robin_ball.special_functions import bessel_i, bessel_i_scaled, bessel_j
from robin_ball.tables import table1, table2

TABLE1 = {
    ("k", 2, 0): [1.25578, 1.59945, 1.78866, 1.90808, 1.98981, 2.38090, 2.40242],
    ("k", 3, 0): [1.57080, 2.02876, 2.28893, 2.45564, 2.57043, 3.11019, 3.13845],
    ("k", 2, 1): [2.40483, 2.73462, 2.94960, 3.09890, 3.20752, 3.79360, 3.82788],
    ("k", 3, 1): [2.74371, 3.14159, 3.40561, 3.59088, 3.72638, 4.44850, 4.48892],
    ("ratio", 2, None): [3.66726, 2.92316, 2.71938, 2.63768, 2.59846, 2.53875, 2.53874],
    ("ratio", 3, None): [3.05095, 2.39794, 2.21373, 2.13832, 2.10166, 2.04575, 2.04575],
}
TABLE2 = {
    ("k", 2, 1): [1.76104, 1.57883, 1.35660, 1.06842, 0.62721],
    ("k", 3, 1): [1.98891, 1.77934, 1.52553, 1.19873, 0.70207],
    ("k_hat", 2, 0): [0.45286, 0.80454, 1.06569, 1.29403, 1.50599],
    ("k_hat", 3, 0): [0.55323, 0.97767, 1.28784, 1.55477, 1.79867],
    ("ratio", 2, None): [-15.12204, -3.85102, -1.62047, -0.68170, -0.17345],
    ("ratio", 3, None): [-12.92465, -3.31233, -1.40319, -0.59444, -0.15236],
}


@contextlib.contextmanager
def criterion(n, capsys, title):
    start = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        with capsys.disabled():
            print(f"\nACCEPTANCE {n}: FAIL  {title}  ({type(exc).__name__}: {exc})")
        raise
    with capsys.disabled():
        print(f"\nACCEPTANCE {n}: PASS  {title}  ({time.perf_counter() - start:.2f} s)")


def _compare(table, published):
    entries = 0
    for (q, dim, l), expect in published.items():
        got = table.row(q, dim, l).values
        assert len(got) == len(expect)
        for g, e in zip(got, expect):
            assert abs(round(g, 5) - e) <= 5e-6, (q, dim, l, g, e)
            entries += 1
    return entries


def test_criterion_1_table1(capsys):
    with criterion(1, capsys, "Table 1: 28 k-values and 14 ratios to 5 decimals, < 5 s"):
        t0 = time.perf_counter()
        table = table1()
        elapsed = time.perf_counter() - t0
        assert _compare(table, TABLE1) == 42
        assert round(table.row("k", 2, 0).values[0], 5) == 1.25578
        assert round(table.row("ratio", 2).values[-1], 5) == 2.53874
        assert elapsed < 5.0, elapsed


def test_criterion_2_table2(capsys):
    with criterion(2, capsys, "Table 2: 20 values and 10 ratios to 5 decimals, < 2 s"):
        t0 = time.perf_counter()
        table = table2()
        elapsed = time.perf_counter() - t0
        assert _compare(table, TABLE2) == 30
        assert round(table.row("k_hat", 2, 0).values[2], 5) == 1.06569
        assert round(table.row("ratio", 3).values[0], 5) == -12.92465
        assert elapsed < 2.0, elapsed


def test_criterion_3_interval_remark(capsys):
    with criterion(3, capsys, "interval alpha = -3: mu1 = -10.52118, mu2 = -6.63412"):
        mu1, mu2 = (p.mu for p in solve_interval(IntervalProblem(-3.0), 2))
        assert abs(round(mu1, 5) - -10.52118) <= 5e-6, mu1
        assert abs(round(mu2, 5) - -6.63412) <= 5e-6, mu2


def test_criterion_4_ppw_limit(capsys):
    with criterion(4, capsys, "PPW ratio 2.5387 and k_{nu,1}(alpha) -> j_{nu,1}"):
        ratio = bessel_zero(1, 1) ** 2 / bessel_zero(0, 1) ** 2
        assert abs(ratio - 2.5387) <= 5e-5, ratio
        alphas = (0.1, 1.0, 10.0, 100.0, 1000.0)
        for dim in (2, 3):
            problem_nu = BallProblem(dim, 1.0).nu
            j1 = bessel_zero(problem_nu, 1)
            ks = [solve_positive_root(BallProblem(dim, a), 0, 1) for a in alphas]
            assert all(b > a for a, b in zip(ks, ks[1:])), ks
            assert all(k < j1 for k in ks)
            # the gap at alpha = 1000 is about j/alpha
            assert 0 < j1 - ks[-1] < 1.01 * j1 / 1000
        k = solve_positive_root(BallProblem(2, 1000.0), 0, 1)
        assert abs(round(k, 5) - 2.40242) <= 5e-6, k


def test_criterion_5_oracle(capsys):
    with criterion(5, capsys, "oracle at n = 4096 within 1e-3, order in [1.8, 2.2], < 60 s"):
        t0 = time.perf_counter()
        worst_err, orders = 0.0, []
        for dim in (2, 3):
            for alpha in (1.0, 2.0, -0.5, -0.9):
                problem = BallProblem(dim, alpha)
                for l in range(4):
                    exact = [branch_eigenvalue(problem, l, m).mu for m in range(1, 6)]
                    fd = {n: fd_radial_eigenvalues(problem, l, n, 5) for n in (1024, 2048, 4096)}
                    for i, mu in enumerate(exact):
                        err = abs(fd[4096][i] - mu)
                        worst_err = max(worst_err, err)
                        assert err <= 1e-3, (dim, alpha, l, i + 1, err)
                        p = richardson_order(fd[1024][i], fd[2048][i], fd[4096][i])
                        assert 1.8 <= p <= 2.2, (dim, alpha, l, i + 1, p)
                        orders.append(p)
        elapsed = time.perf_counter() - t0
        assert elapsed < 60.0, elapsed
        with capsys.disabled():
            print(f"\n  max |err| {worst_err:.2e}, orders in [{min(orders):.3f}, {max(orders):.3f}]", end="")


NEGATIVE_LAW = {
    -0.5: (1, False),
    -1.0: (1, True),
    -1.5: (2, False),
    -2.0: (2, True),
    -2.5: (3, False),
    -3.7: (4, False),
    -6.0: (6, True),
}


def test_criterion_6_negative_count(capsys):
    with criterion(6, capsys, "negative-count law and oracle count at n = 2048"):
        for alpha, expect in NEGATIVE_LAW.items():
            for dim in (2, 3):
                problem = BallProblem(dim, alpha)
                assert negative_count(problem) == expect, (dim, alpha)
                branches = range(math.ceil(-alpha))
                found = sum(fd_negative_count(problem, l, 2048) for l in branches)
                assert found == expect[0], (dim, alpha, found)
                # the next branch holds no negative eigenvalue; for integer alpha it
                # holds the zero eigenvalue, which the grid only resolves to O(h**2)
                nxt = math.ceil(-alpha)
                if expect[1]:
                    zero = fd_radial_eigenvalues(problem, nxt, 2048, 1)[0]
                    assert abs(zero) <= guardrail(0.0, 2048, dim=dim, l=nxt), zero
                    nxt += 1
                assert fd_negative_count(problem, nxt, 2048) == 0


def _closed_j(nu, x):
    x = mp.mpf(x)
    s, c, f = mp.sin(x), mp.cos(x), mp.sqrt(2 / (mp.pi * x))
    return {0.5: f * s, 1.5: f * (s / x - c), 2.5: f * ((3 / x**2 - 1) * s - 3 * c / x)}[nu]


def _closed_i(nu, x):
    x = mp.mpf(x)
    s, c, f = mp.sinh(x), mp.cosh(x), mp.sqrt(2 / (mp.pi * x))
    return {0.5: f * s, 1.5: f * (c - s / x), 2.5: f * ((3 / x**2 + 1) * s - 3 * c / x)}[nu]


def test_criterion_7_property_suites(capsys):
    with criterion(7, capsys, "residuals, interlacing, monotonicity, recurrences, closed forms, multiplicities"):
        for dim in (2, 3):
            nu = BallProblem(dim, 1.0).nu
            for l in range(11):
                p = nu + l
                j = bessel_zeros(p, 20)
                jn = bessel_zeros(p + 1, 20)
                for alpha in (-l + 0.1, 0.5, 1.0, 5.0, 100.0):
                    problem = BallProblem(dim, alpha)
                    ks = []
                    for m in range(1, 21):
                        rec = branch_eigenvalue(problem, l, m)
                        assert defining_residual(problem, rec) <= 1e-9, (dim, l, m, alpha)
                        k = rec.k
                        if m == 1:
                            assert 0 <= k < j[0], (dim, l, alpha, k)
                        else:
                            assert j[m - 2] < k < j[m - 1], (dim, l, m, alpha, k)
                            if alpha > 0:
                                assert jn[m - 2] < k, (dim, l, m, alpha, k)
                        ks.append(k)
                    assert all(b > a for a, b in zip(ks, ks[1:]))
                # negative class residuals
                for alpha in (-l - 0.3, -l - 4.0):
                    problem = BallProblem(dim, alpha)
                    rec = branch_eigenvalue(problem, l, 1)
                    assert rec.mu < 0 and defining_residual(problem, rec) <= 1e-9
            # l-monotonicity: m >= 2 whenever alpha >= -l, m = 1 for alpha > 0
            for alpha in (0.5, 1.0, 5.0, 100.0):
                problem = BallProblem(dim, alpha)
                for m in range(1, 21):
                    ks = [branch_eigenvalue(problem, l, m).k for l in range(11)]
                    assert all(b > a for a, b in zip(ks, ks[1:])), (dim, alpha, m)
            for alpha in (-0.5, -3.0):
                problem = BallProblem(dim, alpha)
                for m in range(2, 21):
                    ks = [branch_eigenvalue(problem, l, m).k for l in range(11)]
                    assert all(b > a for a, b in zip(ks, ks[1:])), (dim, alpha, m)

        # one-dimensional branch monotonicity, 1000 samples per branch window
        for w in range(6):
            ks = np.linspace(w * math.pi, (w + 1) * math.pi, 1002)[1:-1]
            for fn in (alpha_plus_trig, alpha_minus_trig):
                vals = [fn(k) for k in ks]
                assert all(b > a for a, b in zip(vals, vals[1:]))
        ss = np.linspace(1e-3, 30.0, 1000)
        for branch in ("plus", "minus"):
            vals = [alpha_hyp(s, branch) for s in ss]
            assert all(b < a for a, b in zip(vals, vals[1:]))

        # Bessel recurrences
        for nu in np.linspace(1.0, 40.0, 14):
            for x in np.geomspace(1e-2, 200.0, 25):
                a, b, c = bessel_j(nu - 1, x), bessel_j(nu, x), bessel_j(nu + 1, x)
                assert abs(a + c - 2 * nu / x * b) <= 1e-10 * max(abs(a), abs(c), 1.0)
                a, b, c = (bessel_i_scaled(v, x) for v in (nu - 1, nu, nu + 1))
                assert abs(a - c - 2 * nu / x * b) <= 1e-10 * a

        # half-integer closed forms
        with mp.workdps(40):
            for nu in (0.5, 1.5, 2.5):
                for x in np.concatenate([np.geomspace(1e-3, 1.0, 30), np.linspace(1.0, 100.0, 200)]):
                    cj, ci = _closed_j(nu, x), _closed_i(nu, x)
                    assert float(abs(bessel_j(nu, x) - cj) / abs(cj)) <= 1e-11, (nu, x)
                    assert float(abs(bessel_i(nu, x) - ci) / abs(ci)) <= 1e-11, (nu, x)

        for dim in range(2, 7):
            for l in range(7):
                assert harmonic_dimension_bruteforce(dim, l) == multiplicity(dim, l), (dim, l)


def test_criterion_8_eigenfunction_structure(capsys):
    with criterion(8, capsys, "l = 0 profiles: m - 1 sign changes, m = 1 strictly positive"):
        r = np.linspace(0.0, 1.0, 10_000)
        for dim in (2, 3, 5):
            for alpha in (1.0, 0.0, -0.5, -3.0):
                problem = BallProblem(dim, alpha)
                for m in (1, 2, 3, 4):
                    rec = branch_eigenvalue(problem, 0, m)
                    v = np.array([radial_eigenfunction(rec, x) for x in r])
                    s = np.sign(v[v != 0.0])
                    changes = int(np.sum(s[1:] != s[:-1]))
                    assert changes == m - 1, (dim, alpha, m, changes)
                    if m == 1:
                        assert np.all(v[:-1] > 0), (dim, alpha)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
