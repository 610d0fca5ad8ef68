"""
Robin spectrum of -u'' = mu u on (0, 1) with

    -u'(0) + alpha u(0) = 0,      u'(1) + alpha u(1) = 0.

For mu = k**2 > 0 the eigenvalues are the solutions of alpha = alpha_+(k) or
alpha = alpha_-(k), where

    alpha_+-(k) = -k cot k +- k / |sin k|.

On the window (j pi, (j+1) pi) these reduce to half-angle forms:

    j even:  alpha_+ =  k tan(k/2),   alpha_- = -k cot(k/2)
    j odd:   alpha_+ = -k cot(k/2),   alpha_- =  k tan(k/2)

alpha_+ increases from 0 to +inf on every window; alpha_- increases from -2
to 0 on the first window and from -inf to 0 on the others.  For
mu = -s**2 < 0 the relations are alpha = -s tanh(s/2) (range (-inf, 0)) and
alpha = -s coth(s/2) (range (-inf, -2)).

Each window and each hyperbolic branch therefore holds at most one root; the
solver collects them all and sorts.  alpha = 0 and alpha = -2 are exact
special cases with the extra eigenvalue mu = 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .exceptions import DomainError, PoleError
from .rootfind import safeguarded_newton

__all__ = [
    "IntervalProblem",
    "IntervalEigenpair",
    "alpha_plus_trig",
    "alpha_minus_trig",
    "alpha_plus_trig_deriv",
    "alpha_minus_trig_deriv",
    "alpha_hyp",
    "alpha_hyp_deriv",
    "solve_interval",
    "interval_eigenfunction",
    "interval_eigenfunction_deriv",
    "boundary_residuals",
]

BRANCHES = ("alpha_plus_trig", "alpha_minus_trig", "alpha_plus_hyp", "alpha_minus_hyp", "zero")


@dataclass(frozen=True)
class IntervalProblem:
    alpha: float

    def __post_init__(self):
        if not math.isfinite(self.alpha):
            raise DomainError(f"alpha must be finite, got {self.alpha!r}")


@dataclass(frozen=True)
class IntervalEigenpair:
    """mu_m with its branch and eigenfunction coefficients.

    The eigenfunction is ``a * C(x) + b * S(x)`` where (C, S) is
    (cos kx, sin kx) on the trigonometric branches, (exp(-sx), exp(sx)) on
    the hyperbolic ones and (1, x) for the zero branch.
    """

    m: int
    mu: float
    branch: str
    k: float
    alpha: float
    a: float
    b: float

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "mu": self.mu,
            "branch": self.branch,
            "k": self.k,
            "alpha": self.alpha,
            "a": self.a,
            "b": self.b,
        }


# --------------------------------------------------------------------------
# branch relations
# --------------------------------------------------------------------------


def _check_k(k: float) -> int:
    if not k > 0:
        raise DomainError(f"k must be positive, got {k!r}")
    j = math.floor(k / math.pi)
    if abs(k - j * math.pi) <= 1e-12 * max(1.0, k) or abs(k - (j + 1) * math.pi) <= 1e-12 * max(1.0, k):
        raise PoleError(f"k={k!r} is a multiple of pi")
    return j


def _tan_form(k: float) -> float:
    return k * math.tan(0.5 * k)


def _cot_form(k: float) -> float:
    return -k / math.tan(0.5 * k)


def _tan_form_deriv(k: float) -> float:
    t = math.tan(0.5 * k)
    return t + 0.5 * k * (1.0 + t * t)


def _cot_form_deriv(k: float) -> float:
    s = math.sin(0.5 * k)
    return -1.0 / math.tan(0.5 * k) + 0.5 * k / (s * s)


def alpha_plus_trig(k: float) -> float:
    """-k cot k + k / |sin k|, strictly increasing from 0 to +inf on each window."""
    j = _check_k(k)
    return _tan_form(k) if j % 2 == 0 else _cot_form(k)


def alpha_minus_trig(k: float) -> float:
    """-k cot k - k / |sin k|; from -2 to 0 on (0, pi), from -inf to 0 later."""
    j = _check_k(k)
    return _cot_form(k) if j % 2 == 0 else _tan_form(k)


def alpha_plus_trig_deriv(k: float) -> float:
    """(1 - cos k)(k + sin k) / sin**2 k on even windows, (1 + cos k)(k - sin k) / sin**2 k on odd ones."""
    j = _check_k(k)
    return _tan_form_deriv(k) if j % 2 == 0 else _cot_form_deriv(k)


def alpha_minus_trig_deriv(k: float) -> float:
    j = _check_k(k)
    return _cot_form_deriv(k) if j % 2 == 0 else _tan_form_deriv(k)


def alpha_hyp(s: float, branch: str) -> float:
    """-s tanh(s/2) for branch 'plus', -s coth(s/2) for 'minus'; s = sqrt(-mu)."""
    if not s > 0:
        raise DomainError(f"s must be positive, got {s!r}")
    if branch == "plus":
        return -s * math.tanh(0.5 * s)
    if branch == "minus":
        return -s / math.tanh(0.5 * s)
    raise DomainError(f"branch must be 'plus' or 'minus', got {branch!r}")


def alpha_hyp_deriv(s: float, branch: str) -> float:
    """d alpha_hyp / ds (negative: both relations increase with mu = -s**2)."""
    if not s > 0:
        raise DomainError(f"s must be positive, got {s!r}")
    if branch == "plus":
        t = math.tanh(0.5 * s)
        return -t - 0.5 * s * (1.0 - t * t)
    if branch == "minus":
        sh = math.sinh(0.5 * s)
        return -1.0 / math.tanh(0.5 * s) + 0.5 * s / (sh * sh)
    raise DomainError(f"branch must be 'plus' or 'minus', got {branch!r}")


# --------------------------------------------------------------------------
# solver
# --------------------------------------------------------------------------


def _window_root(alpha: float, j: int, use_tan: bool) -> float:
    lo, hi = j * math.pi, (j + 1) * math.pi
    if use_tan:
        f, df = (lambda k: _tan_form(k) - alpha), _tan_form_deriv
    else:
        f, df = (lambda k: _cot_form(k) - alpha), _cot_form_deriv
    # both forms increase across the window; the endpoints are a zero or a pole
    return safeguarded_newton(f, df, lo, hi, sign_lo=-1, sign_hi=1)


def _hyp_root(alpha: float, branch: str) -> float:
    f = lambda s: alpha_hyp(s, branch) - alpha  # noqa: E731
    df = lambda s: alpha_hyp_deriv(s, branch)  # noqa: E731
    lo, hi = 0.0, 1.0
    while f(hi) >= 0.0:
        lo, hi = hi, 2.0 * hi
    # f decreases in s from its s -> 0 limit (above zero) to -inf
    return safeguarded_newton(f, df, lo, hi, sign_lo=1, sign_hi=-1)


def _trig_pair(m: int, k: float, alpha: float, branch: str) -> IntervalEigenpair:
    # u = (k/alpha) cos kx + sin kx; scaled by alpha/k when that keeps it O(1)
    if abs(alpha) >= k:
        a, b = k / alpha, 1.0
    else:
        a, b = 1.0, alpha / k
    return IntervalEigenpair(m, k * k, branch, k, alpha, a, b)


def _hyp_pair(m: int, s: float, alpha: float, branch: str) -> IntervalEigenpair:
    # u = exp(-sx) - ((alpha + s)/(alpha - s)) exp(sx); alpha - s < 0 here
    return IntervalEigenpair(m, -s * s, branch, s, alpha, 1.0, -(alpha + s) / (alpha - s))


def solve_interval(problem: IntervalProblem, count: int) -> list[IntervalEigenpair]:
    """The first ``count`` eigenvalues, ascending, with eigenfunctions."""
    if int(count) != count or count < 1:
        raise DomainError(f"count must be a positive integer, got {count!r}")
    alpha = problem.alpha
    found: list[tuple[float, str, float]] = []  # (mu, branch, k or s)

    if alpha == 0.0:
        pairs = [IntervalEigenpair(1, 0.0, "zero", 0.0, 0.0, 1.0, 0.0)]
        for m in range(2, count + 1):
            k = (m - 1) * math.pi
            pairs.append(IntervalEigenpair(m, k * k, "alpha_plus_trig", k, 0.0, 1.0, 0.0))
        return pairs

    if alpha < 0.0:
        s = _hyp_root(alpha, "plus")
        found.append((-s * s, "alpha_plus_hyp", s))
        if alpha < -2.0:
            s = _hyp_root(alpha, "minus")
            found.append((-s * s, "alpha_minus_hyp", s))
        elif alpha == -2.0:
            found.append((0.0, "zero", 0.0))

    # every window holds exactly one root once alpha != 0, except window 0
    # for alpha <= -2; mu in window j exceeds j**2 pi**2
    j = 0
    while len(found) < count or j * j * math.pi**2 < max(mu for mu, _, _ in found):
        if alpha > 0.0:
            k = _window_root(alpha, j, use_tan=(j % 2 == 0))
            found.append((k * k, "alpha_plus_trig", k))
        elif j > 0 or alpha > -2.0:
            k = _window_root(alpha, j, use_tan=(j % 2 == 1))
            found.append((k * k, "alpha_minus_trig", k))
        j += 1

    found.sort(key=lambda t: t[0])
    pairs = []
    for m, (mu, branch, k) in enumerate(found[:count], start=1):
        if branch == "zero":
            pairs.append(IntervalEigenpair(m, 0.0, "zero", 0.0, alpha, 1.0, -2.0))
        elif branch.endswith("hyp"):
            pairs.append(_hyp_pair(m, k, alpha, branch))
        else:
            pairs.append(_trig_pair(m, k, alpha, branch))
    return pairs


# --------------------------------------------------------------------------
# eigenfunctions
# --------------------------------------------------------------------------


def _basis(pair: IntervalEigenpair, x: float):
    k = pair.k
    if pair.branch == "zero":
        return 1.0, x, 0.0, 1.0
    if pair.branch.endswith("hyp"):
        em, ep = math.exp(-k * x), math.exp(k * x)
        return em, ep, -k * em, k * ep
    c, s = math.cos(k * x), math.sin(k * x)
    return c, s, -k * s, k * c


def _check_x(x: float) -> float:
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"x must lie in [0, 1], got {x!r}")
    return x


def interval_eigenfunction(pair: IntervalEigenpair, x: float) -> float:
    """Closed-form eigenfunction of ``pair`` at x in [0, 1]."""
    c, s, _, _ = _basis(pair, _check_x(x))
    return pair.a * c + pair.b * s


def interval_eigenfunction_deriv(pair: IntervalEigenpair, x: float) -> float:
    _, _, dc, ds = _basis(pair, _check_x(x))
    return pair.a * dc + pair.b * ds


def boundary_residuals(pair: IntervalEigenpair) -> tuple[float, float]:
    """(|-u'(0) + alpha u(0)|, |u'(1) + alpha u(1)|) relative to max |u| at the ends."""
    a = pair.alpha
    u0, u1 = interval_eigenfunction(pair, 0.0), interval_eigenfunction(pair, 1.0)
    d0, d1 = interval_eigenfunction_deriv(pair, 0.0), interval_eigenfunction_deriv(pair, 1.0)
    scale = max(abs(u0), abs(u1), abs(d0), abs(d1), 1e-300)
    return abs(-d0 + a * u0) / scale, abs(d1 + a * u1) / scale
