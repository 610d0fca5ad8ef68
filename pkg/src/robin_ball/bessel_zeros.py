"""Positive zeros j_{nu,m} of J_nu.

Zeros are located in order of m.  Consecutive zeros of J_nu are more than
3.1 apart for every nu >= 0 (the smallest gap, j_{0,2} - j_{0,1}, is
3.1153), and j_{nu,1} > nu, so stepping by 1 from nu, or from the previous
zero, finds each sign change without skipping one.  The sign-change
interval is narrowed by bisection and the zero polished by Newton seeded
with McMahon's expansion.
"""
from __future__ import annotations

import math
import threading

from .exceptions import ConvergenceError, DomainError
from .rootfind import safeguarded_newton
from .special_functions import X_MAX, _as_nu, _j

__all__ = ["bessel_zero", "bessel_zeros", "zero_bracket", "mcmahon_guess"]

_STEP = 1.0
_BRACKET_WIDTH = 0.25

_lock = threading.Lock()
_brackets: dict[float, list[tuple[float, float]]] = {}
_zeros: dict[float, list[float]] = {}


def mcmahon_guess(nu: float, m: int) -> float:
    """McMahon's large-m approximation to j_{nu,m}."""
    beta = (m + 0.5 * nu - 0.25) * math.pi
    mu = 4.0 * nu * nu
    b8 = 8.0 * beta
    return (
        beta
        - (mu - 1.0) / b8
        - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8**3)
    )


def _check(order, m) -> float:
    nu = _as_nu(order)
    if int(m) != m or m < 1:
        raise DomainError(f"zero index m must be an integer >= 1, got {m!r}")
    return nu


def _next_bracket(nu: float, start: float) -> tuple[float, float]:
    a = start
    fa = _j(nu, a)
    while True:
        b = a + _STEP
        if b > X_MAX:
            raise DomainError(f"zero of J_{nu:g} beyond X_MAX={X_MAX:g}")
        fb = _j(nu, b)
        if fa == 0.0:
            # landed exactly on the zero; widen symmetrically
            return a - 0.5 * _BRACKET_WIDTH, a + 0.5 * _BRACKET_WIDTH
        if fa * fb < 0.0 or fb == 0.0:
            break
        a, fa = b, fb
    while b - a > _BRACKET_WIDTH:
        c = 0.5 * (a + b)
        fc = _j(nu, c)
        if fc == 0.0:
            return c - 0.25 * _BRACKET_WIDTH, c + 0.25 * _BRACKET_WIDTH
        if fa * fc < 0.0:
            b = c
        else:
            a, fa = c, fc
    return a, b


def _polish(nu: float, a: float, b: float, m: int) -> float:
    def f(x):
        return _j(nu, x)

    def df(x):
        return -_j(nu + 1.0, x) + nu / x * _j(nu, x)

    guess = mcmahon_guess(nu, m)
    if a < guess < b:
        # shrink the bracket around the McMahon seed before Newton
        s = f(guess)
        if s * f(a) > 0:
            a = guess
        else:
            b = guess
    try:
        return safeguarded_newton(f, df, a, b, coarse=1e-6)
    except ConvergenceError as exc:
        raise ConvergenceError(f"j_{{{nu:g},{m}}}: {exc}") from None


def _extend(nu: float, m: int) -> None:
    brackets = _brackets.setdefault(nu, [])
    zeros = _zeros.setdefault(nu, [])
    while len(zeros) < m:
        start = nu if not zeros else zeros[-1] + 0.5
        a, b = _next_bracket(nu, start)
        zeros.append(_polish(nu, a, b, len(zeros) + 1))
        brackets.append((a, b))


def zero_bracket(order, m: int) -> tuple[float, float]:
    """Interval (a, b) with J_nu(a) J_nu(b) < 0 containing j_{nu,m} and no other zero."""
    nu = _check(order, m)
    with _lock:
        _extend(nu, m)
        return _brackets[nu][m - 1]


def bessel_zero(order, m: int) -> float:
    """m-th positive zero j_{nu,m} of J_nu (absolute error <= 1e-10)."""
    nu = _check(order, m)
    with _lock:
        _extend(nu, m)
        return _zeros[nu][m - 1]


def bessel_zeros(order, count: int) -> list[float]:
    """The first ``count`` zeros j_{nu,1} < ... < j_{nu,count}."""
    nu = _check(order, max(count, 1))
    with _lock:
        _extend(nu, count)
        return list(_zeros[nu][:count])
