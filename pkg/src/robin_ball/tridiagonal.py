"""
Smallest eigenvalues of a real symmetric tridiagonal matrix.

The matrix has diagonal ``d`` (length n) and off-diagonal ``e`` (length n-1).
Each eigenvalue is isolated by Sturm counts (the number of negative pivots of
the LDL^T factorisation of T - x I), then refined by Newton's method on
det(T - x I), whose logarithmic derivative comes out of the same pivot pass.
Every Newton iterate also updates the isolating bracket, and a step that
leaves it is replaced by bisection.
"""
from __future__ import annotations

import math
import sys

import numpy as np

from .exceptions import ConvergenceError

__all__ = ["sturm_count", "eigvalsh_smallest", "inverse_iteration", "gershgorin_bounds"]

_EPS = sys.float_info.epsilon


def _prepare(d, e):
    d = [float(v) for v in np.asarray(d, dtype=float)]
    e = np.asarray(e, dtype=float)
    if len(e) != len(d) - 1:
        raise ValueError(f"off-diagonal has length {len(e)}, expected {len(d) - 1}")
    e2 = [0.0] + [float(v) * float(v) for v in e]
    scale = max(max(abs(v) for v in d), max(e2) ** 0.5 if len(e2) > 1 else 0.0, 1e-300)
    pivmin = max(sys.float_info.min, _EPS * _EPS * scale * scale) if len(e2) > 1 else sys.float_info.min
    return d, e2, pivmin


def _pass(d, e2, pivmin, x):
    """(number of eigenvalues < x, d/dx log|det(T - x I)|)."""
    count = 0
    q = 1.0
    dq = 0.0
    s = 0.0
    for di, ei2 in zip(d, e2):
        r = ei2 / q
        dq = -1.0 + r / q * dq
        q = di - x - r
        if -pivmin < q < pivmin:
            q = -pivmin
        if q < 0.0:
            count += 1
        s += dq / q
    return count, s


def sturm_count(d, e, x: float) -> int:
    """Number of eigenvalues of the tridiagonal matrix strictly below x."""
    dl, e2, pivmin = _prepare(d, e)
    return _pass(dl, e2, pivmin, float(x))[0]


def gershgorin_bounds(d, e) -> tuple[float, float]:
    d = np.asarray(d, dtype=float)
    a = np.abs(np.asarray(e, dtype=float))
    rad = np.zeros_like(d)
    rad[:-1] += a
    rad[1:] += a
    return float(np.min(d - rad)), float(np.max(d + rad))


def eigvalsh_smallest(d, e, count: int, *, abstol: float = 0.0, maxiter: int = 200) -> list[float]:
    """The ``count`` smallest eigenvalues, ascending, to about machine precision."""
    n = len(d)
    if not 1 <= count <= n:
        raise ValueError(f"count must lie in [1, {n}], got {count}")
    dl, e2, pivmin = _prepare(d, e)
    glo, ghi = gershgorin_bounds(d, e)
    span = max(abs(glo), abs(ghi))
    glo -= 2.0 * _EPS * span + 2.0 * pivmin
    ghi += 2.0 * _EPS * span + 2.0 * pivmin

    # lo[i] / hi[i] bracket the i-th eigenvalue: count(lo) <= i < count(hi)
    lo = [glo] * count
    hi = [ghi] * count
    clo = [0] * count
    chi = [n] * count

    def record(x, c):
        for j in range(count):
            if c <= j:
                if x > lo[j]:
                    lo[j], clo[j] = x, c
            elif x < hi[j]:
                hi[j], chi[j] = x, c

    out = []
    for i in range(count):
        x = None
        prev_step = math.inf
        for _ in range(maxiter):
            a, b = lo[i], hi[i]
            tol = abstol + 2.0 * _EPS * max(abs(a), abs(b)) + pivmin
            if b - a <= tol:
                x = 0.5 * (a + b)
                break
            if x is None or not a < x < b:
                x = 0.5 * (a + b)
            c, s = _pass(dl, e2, pivmin, x)
            record(x, c)
            # Newton only once (lo, hi) holds eigenvalue i alone
            if clo[i] == i and chi[i] == i + 1 and s != 0.0 and math.isfinite(s):
                xn = x - 1.0 / s
                if lo[i] < xn < hi[i]:
                    step = abs(xn - x)
                    # stop at tolerance, or once tiny steps stop shrinking (rounding floor)
                    if step <= tol or (step < 1e-8 * max(1.0, abs(x)) and step > 0.5 * prev_step):
                        x = xn
                        break
                    prev_step = step
                    x = xn
                    continue
            x = None
        else:
            raise ConvergenceError(f"eigenvalue {i} did not converge in [{lo[i]!r}, {hi[i]!r}]")
        out.append(x)
    return out


def inverse_iteration(d, e, lam: float, *, iterations: int = 3) -> np.ndarray:
    """Unit eigenvector for the (simple, converged) eigenvalue ``lam``."""
    d = np.asarray(d, dtype=float)
    e = np.asarray(e, dtype=float)
    n = len(d)
    shift = lam - 4.0 * _EPS * max(1.0, abs(lam), float(np.max(np.abs(d))))
    y = np.ones(n) / math.sqrt(n)
    # an uneven start vector, unlikely to be orthogonal to the target
    y[1::2] *= 0.5
    for _ in range(iterations):
        y = _solve_shifted(d, e, shift, y)
        y /= np.linalg.norm(y)
    return y


def _solve_shifted(d, e, shift, rhs):
    # Thomas algorithm with a floor on the pivots; T - shift I is nearly singular by design
    n = len(d)
    dl = (d - shift).tolist()
    el = e.tolist()
    b = rhs.tolist()
    tiny = _EPS * max(1.0, max(abs(v) for v in dl))
    for i in range(n):
        if i > 0:
            m = el[i - 1] / dl[i - 1]
            dl[i] -= m * el[i - 1]
            b[i] -= m * b[i - 1]
        if abs(dl[i]) < tiny:
            dl[i] = tiny
    x = [0.0] * n
    x[-1] = b[-1] / dl[-1]
    for i in range(n - 2, -1, -1):
        x[i] = (b[i] - el[i] * x[i + 1]) / dl[i]
    return np.asarray(x)
