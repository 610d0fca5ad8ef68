"""Bracketed root finding: bisection down to a coarse width, then Newton kept
inside the bracket."""
from __future__ import annotations

import math

from .exceptions import ConvergenceError


def _sign(v: float) -> int:
    return (v > 0) - (v < 0)


def safeguarded_newton(
    f,
    df,
    lo: float,
    hi: float,
    *,
    sign_lo: int | None = None,
    sign_hi: int | None = None,
    coarse: float = 1e-3,
    maxiter: int = 200,
) -> float:
    """Return the single root of ``f`` in the open interval (lo, hi).

    ``f`` must change sign exactly once in the interval.  Endpoint signs may
    be passed in when ``f`` is awkward to evaluate there (a pole, or an
    exact zero of a factor); otherwise they are computed.  A Newton step that
    would leave the current bracket is replaced by a bisection step.
    """
    if not lo < hi:
        raise ValueError(f"empty bracket ({lo}, {hi})")
    s_lo = _sign(f(lo)) if sign_lo is None else sign_lo
    s_hi = _sign(f(hi)) if sign_hi is None else sign_hi
    if s_lo == 0:
        return lo
    if s_hi == 0:
        return hi
    if s_lo == s_hi:
        raise ConvergenceError(f"no sign change on ({lo!r}, {hi!r})")

    if lo == 0.0:
        # a root may sit many decades below hi (tiny Robin parameters); close in
        # by factors of 1000 so that the bisection and Newton stages start near it
        while hi > 1e-290:
            y = hi * 1e-3
            s = _sign(f(y))
            if s == 0:
                break  # underflow: cannot tell, fall back to plain bisection
            if s == s_lo:
                lo = y
                break
            hi = y

    it = 0
    while hi - lo > coarse * max(1.0, abs(lo)):
        mid = 0.5 * (lo + hi)
        s = _sign(f(mid))
        if s == 0:
            return mid
        if s == s_lo:
            lo = mid
        else:
            hi = mid
        it += 1
        if it > maxiter:
            raise ConvergenceError("bisection did not reach the Newton stage")

    x = 0.5 * (lo + hi)
    for _ in range(maxiter):
        fx = f(x)
        s = _sign(fx)
        if s == 0:
            return x
        if s == s_lo:
            lo = x
        else:
            hi = x
        d = df(x)
        step = fx / d if d != 0.0 and math.isfinite(d) else math.inf
        xn = x - step
        if not lo < xn < hi:
            xn = 0.5 * (lo + hi)
        if abs(xn - x) <= 1e-15 * abs(xn) or hi - lo <= 1e-15 * abs(hi):
            return xn
        x = xn
    raise ConvergenceError(f"Newton did not settle in ({lo!r}, {hi!r})")
