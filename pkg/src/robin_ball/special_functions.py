"""
Bessel functions of the first kind J_nu and modified Bessel functions I_nu
for real order nu >= 0 and real argument x >= 0.

Evaluation regimes (cross-checked against each other in the test-suite):

* ascending power series when x*x <= 4*(nu + 1), where the terms decay from
  the first one and nothing cancels badly;
* large-argument (Hankel) expansion.  For J it is applied at the two lowest
  orders f, f + 1 (f the fractional part of nu) once x >= max(25, nu), then
  carried up to nu by forward recurrence, which is stable below the turning
  point.  For I it is applied directly when x >= max(25, nu**2 / 2);
* Miller backward recurrence everywhere else, normalised with

      (x/2)**f = sum_k (f + 2k) Gamma(f + k) / k! * J_{f+2k}(x)
      exp(x)  = Gamma(f) (x/2)**-f sum_k (f + k) C_k^(f)(1) I_{f+k}(x)

  The second sum has only positive terms, so the I recurrence is stable for
  every x.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exceptions import BesselOverflowError, DomainError

__all__ = [
    "X_MAX",
    "NU_MAX",
    "Order",
    "bessel_j",
    "bessel_j_deriv",
    "bessel_i",
    "bessel_i_scaled",
    "bessel_i_deriv",
    "bessel_i_ratio",
]

X_MAX = 1.0e4
NU_MAX = 200.0

_RESCALE = 1.0e250
_LOG_MAX = math.log(1.7976931348623157e308)


@dataclass(frozen=True)
class Order:
    """A real Bessel order, optionally tagged with the ball data it came from.

    For the unit ball in R^N and angular index l the order is N/2 - 1 + l.
    Use :meth:`ball` to build it; the value is formed with exact rational
    arithmetic before conversion to float.
    """

    nu: float
    dim: int | None = None
    angular: int | None = None

    def __post_init__(self):
        if not math.isfinite(self.nu) or self.nu < 0:
            raise DomainError(f"Bessel order must be finite and >= 0, got {self.nu!r}")
        if self.dim is not None and self.angular is not None:
            exact = Fraction(self.dim, 2) - 1 + self.angular
            if float(exact) != self.nu:
                raise DomainError(
                    f"order {self.nu} inconsistent with dim={self.dim}, l={self.angular}"
                )

    @classmethod
    def ball(cls, dim: int, angular: int = 0) -> "Order":
        if dim < 1 or angular < 0:
            raise DomainError(f"need dim >= 1 and l >= 0, got dim={dim}, l={angular}")
        return cls(float(Fraction(dim, 2) - 1 + angular), dim, angular)

    def __float__(self):
        return float(self.nu)


def _as_nu(order) -> float:
    nu = order.nu if isinstance(order, Order) else float(order)
    if not math.isfinite(nu) or nu < 0 or nu > NU_MAX:
        raise DomainError(f"order must lie in [0, {NU_MAX:g}], got {nu!r}")
    return nu


def _check_x(x) -> float:
    x = float(x)
    if not math.isfinite(x) or x < 0:
        raise DomainError(f"argument must be finite and >= 0, got {x!r}")
    if x > X_MAX:
        raise DomainError(f"argument {x!r} exceeds X_MAX={X_MAX:g}")
    return x


def _power_over_gamma(half: float, nu: float) -> float:
    """(x/2)**nu / Gamma(nu + 1) without intermediate overflow."""
    if nu == 0.0:
        return 1.0
    if nu < 160.0:
        p = half**nu
        if 1e-290 < p < 1e290:
            return p / math.gamma(nu + 1.0)
    return math.exp(nu * math.log(half) - math.lgamma(nu + 1.0))


# --------------------------------------------------------------------------
# J_nu
# --------------------------------------------------------------------------


def _j_series_sum(nu: float, x: float) -> float:
    q = -0.25 * x * x
    term = total = 1.0
    k = 0
    while True:
        k += 1
        term *= q / (k * (nu + k))
        total += term
        if abs(term) <= 1e-17 * abs(total):
            return total


def _j_series(nu: float, x: float) -> float:
    return _power_over_gamma(0.5 * x, nu) * _j_series_sum(nu, x)


def _hankel_pq(nu: float, x: float):
    """P and Q of the large-argument expansion, or None if it does not converge."""
    mu = 4.0 * nu * nu
    p, q = 1.0, 0.0
    term = 1.0
    prev = math.inf
    for k in range(1, 400):
        term *= (mu - (2 * k - 1) ** 2) / (k * 8.0 * x)
        a = abs(term)
        if a == 0.0:
            return p, q
        if a > prev and k > nu + 1:
            return None
        prev = a
        sign = -1.0 if (k // 2) % 2 else 1.0
        if k % 2:
            q += sign * term
        else:
            p += sign * term
        if a < 1e-17:
            return p, q
    return None


def _use_hankel(nu: float, x: float) -> bool:
    return x >= 25.0 and x >= 0.5 * nu * nu


def _j_hankel(nu: float, x: float):
    pq = _hankel_pq(nu, x)
    if pq is None:
        return None
    p, q = pq
    # chi = x - (nu/2 + 1/4) pi, with the phase reduced before combining with x
    phase = math.fmod((0.5 * nu + 0.25) * math.pi, 2.0 * math.pi)
    c = math.cos(x) * math.cos(phase) + math.sin(x) * math.sin(phase)
    s = math.sin(x) * math.cos(phase) - math.cos(x) * math.sin(phase)
    return math.sqrt(2.0 / (math.pi * x)) * (p * c - q * s)


def _fraction(nu: float, n0: int) -> float:
    """Fractional part of nu for the Miller weights.

    Below 1e-17 it is dropped: d/dnu of J and I is bounded, so the change is
    under half an ulp, while Gamma(f) and 1/f would overflow.
    """
    f = nu - n0
    return 0.0 if f < 1e-17 else f


def _miller_start(nu: float, x: float) -> int:
    top = max(nu, x)
    return int(top + 12.0 * top ** (1.0 / 3.0) + 40.0)


def _j_miller(nu: float, x: float, extra: int = 0):
    """J_{nu}, ..., J_{nu+extra} at x by backward recurrence."""
    n0 = int(nu)
    f = _fraction(nu, n0)
    big = _miller_start(nu + extra, x)
    big += big % 2  # end on an even index so the normalisation sum is aligned

    # weights g_j = Gamma(f + j) / j! for the even terms k = 2j
    jmax = big // 2
    g = math.exp(math.lgamma(f + jmax) - math.lgamma(jmax + 1.0))
    total = 0.0
    keep = [0.0] * (extra + 1)
    upper, cur = 0.0, 1e-280
    k = big
    while True:
        if n0 <= k <= n0 + extra:
            keep[k - n0] = cur
        if k % 2 == 0:
            j = k // 2
            if j == 0:
                total += math.gamma(f + 1.0) * cur
            else:
                total += (f + k) * g * cur
                g *= j / (f + (j - 1)) if j > 1 or f > 0 else 1.0
        if k == 0:
            break
        lower = 2.0 * (f + k) / x * cur - upper
        upper, cur = cur, lower
        k -= 1
        if abs(cur) > _RESCALE:
            cur /= _RESCALE
            upper /= _RESCALE
            total /= _RESCALE
            keep = [v / _RESCALE for v in keep]
    scale = (0.5 * x) ** f / total
    return [v * scale for v in keep]


def _j_forward(nu: float, x: float) -> float:
    n0 = int(nu)
    f = nu - n0
    lo = _j_hankel(f, x)
    if n0 == 0:
        return lo
    hi = _j_hankel(f + 1.0, x)
    for k in range(1, n0):
        lo, hi = hi, 2.0 * (f + k) / x * hi - lo
    return hi


def _j(nu: float, x: float) -> float:
    if x == 0.0:
        return 1.0 if nu == 0.0 else 0.0
    if x * x <= 4.0 * (nu + 1.0):
        return _j_series(nu, x)
    if x >= 25.0 and x >= nu:
        return _j_forward(nu, x)
    return _j_miller(nu, x)[0]


def bessel_j(order, x) -> float:
    """Bessel function of the first kind J_nu(x), nu in [0, 200], 0 <= x <= X_MAX.

    >>> bessel_j(0, 0.0)
    1.0
    """
    return _j(_as_nu(order), _check_x(x))


def bessel_j_deriv(order, x) -> float:
    """J_nu'(x) from J_nu'(x) = -J_{nu+1}(x) + (nu/x) J_nu(x).

    At x = 0 the limit of the power series is returned: 0 for nu = 0 or nu > 1,
    1/2 for nu = 1, and +inf for 0 < nu < 1 where the derivative is unbounded.
    """
    nu = _as_nu(order)
    x = _check_x(x)
    if x == 0.0:
        if nu == 0.0 or nu > 1.0:
            return 0.0
        return 0.5 if nu == 1.0 else math.inf
    return -_j(nu + 1.0, x) + nu / x * _j(nu, x)


# --------------------------------------------------------------------------
# I_nu, carried internally as exp(-x) I_nu(x)
# --------------------------------------------------------------------------


def _i_series_scaled(nu: float, x: float) -> float:
    q = 0.25 * x * x
    term = total = 1.0
    k = 0
    while True:
        k += 1
        term *= q / (k * (nu + k))
        total += term
        if term <= 1e-17 * total:
            break
    return _power_over_gamma(0.5 * x, nu) * total * math.exp(-x)


def _i_hankel_scaled(nu: float, x: float):
    mu = 4.0 * nu * nu
    total = term = 1.0
    prev = math.inf
    for k in range(1, 400):
        term *= -(mu - (2 * k - 1) ** 2) / (k * 8.0 * x)
        a = abs(term)
        if a > prev and k > nu + 1:
            return None
        prev = a
        total += term
        if a < 1e-17:
            return total / math.sqrt(2.0 * math.pi * x)
    return None


def _i_miller_scaled(nu: float, x: float, extra: int = 0):
    """exp(-x) I_{nu}, ..., exp(-x) I_{nu+extra} by backward recurrence."""
    n0 = int(nu)
    f = _fraction(nu, n0)
    big = n0 + extra + int(12.0 * math.sqrt(x) + 8.0 * x ** (1.0 / 3.0) + 40.0)

    # weights w_k = Gamma(f) (f + k) Gamma(k + 2f) / (k! Gamma(2f)); w_0 = Gamma(f + 1),
    # and for f = 0 the limit is w_k = 2 for k >= 1.
    if f == 0.0:
        w = [1.0] + [2.0] * big
    else:
        d = 1.0
        gf = math.gamma(f)
        w = [math.gamma(f + 1.0)]
        for k in range(1, big + 1):
            d *= (k - 1.0 + 2.0 * f) / k
            w.append(gf * (f + k) * d)

    total = 0.0
    keep = [0.0] * (extra + 1)
    upper, cur = 0.0, 1e-280
    k = big
    while True:
        if n0 <= k <= n0 + extra:
            keep[k - n0] = cur
        total += w[k] * cur
        if k == 0:
            break
        lower = 2.0 * (f + k) / x * cur + upper
        upper, cur = cur, lower
        k -= 1
        if cur > _RESCALE:
            cur /= _RESCALE
            upper /= _RESCALE
            total /= _RESCALE
            keep = [v / _RESCALE for v in keep]
    scale = (0.5 * x) ** f / total
    return [v * scale for v in keep]


def _i_scaled(nu: float, x: float) -> float:
    if x == 0.0:
        return 1.0 if nu == 0.0 else 0.0
    if x * x <= 4.0 * (nu + 1.0):
        return _i_series_scaled(nu, x)
    if _use_hankel(nu, x):
        v = _i_hankel_scaled(nu, x)
        if v is not None:
            return v
    return _i_miller_scaled(nu, x)[0]


def bessel_i_scaled(order, x) -> float:
    """exp(-x) * I_nu(x); finite and overflow-free for every x <= X_MAX."""
    return _i_scaled(_as_nu(order), _check_x(x))


def bessel_i(order, x) -> float:
    """Modified Bessel function I_nu(x).

    Raises BesselOverflowError when the value exceeds the double range; use
    :func:`bessel_i_scaled` for large arguments.
    """
    nu = _as_nu(order)
    x = _check_x(x)
    s = _i_scaled(nu, x)
    if s > 0.0 and math.log(s) + x > _LOG_MAX:
        raise BesselOverflowError(f"I_{nu:g}({x:g}) overflows; use bessel_i_scaled")
    return s * math.exp(x)


def bessel_i_deriv(order, x) -> float:
    """I_nu'(x) from I_nu'(x) = I_{nu+1}(x) + (nu/x) I_nu(x)."""
    nu = _as_nu(order)
    x = _check_x(x)
    if x == 0.0:
        if nu == 0.0 or nu > 1.0:
            return 0.0
        if nu == 1.0:
            return 0.5
        raise DomainError(f"I_{nu:g}' is unbounded at x = 0")
    s = _i_scaled(nu + 1.0, x) + nu / x * _i_scaled(nu, x)
    if s > 0.0 and math.log(s) + x > _LOG_MAX:
        raise BesselOverflowError(f"I_{nu:g}'({x:g}) overflows")
    return s * math.exp(x)


def bessel_i_ratio(order, x) -> float:
    """I_{nu+1}(x) / I_nu(x) from scaled values; lies in [0, 1) for x >= 0."""
    nu = _as_nu(order)
    x = _check_x(x)
    if x == 0.0:
        return 0.0
    return _i_scaled(nu + 1.0, x) / _i_scaled(nu, x)
