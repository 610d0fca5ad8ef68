"""
Robin spectrum of the Laplacian on the unit ball of R^N, N >= 2:

    -Lap u = mu u  in B,      du/dn + alpha u = 0  on the sphere.

Separating u = v(r) G_l(xi), with G_l a degree-l spherical harmonic and
nu = N/2 - 1, every eigenvalue belongs to one angular branch l and is one of

* mu = k**2,  k > 0 a root of  f(k) = k J_{nu+l+1}(k) - (alpha + l) J_{nu+l}(k),
  radial profile r**-nu J_{nu+l}(k r);
* mu = 0,     only for the first eigenvalue of branch l = -alpha, profile r**l;
* mu = -k**2, k > 0 the root of  g(k) = (alpha + l) I_{nu+l}(k) + k I_{nu+l+1}(k),
  only for the first eigenvalue of branches with alpha < -l,
  profile r**-nu I_{nu+l}(k r).

On branch l the first root of f lies in (0, j_{nu+l,1}) when alpha > -l, and
the m-th (m >= 2) always lies in (j_{nu+l,m-1}, j_{nu+l,m}).  Roots are found
on f and g directly, never on the ratio forms h_tilde / h_hat.
"""
from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass
from math import comb

from .bessel_zeros import bessel_zero
from .exceptions import BranchError, DomainError, PoleError, RatioUndefinedError
from .rootfind import safeguarded_newton
from .special_functions import X_MAX, Order, _i_scaled, _j, _j_series_sum

__all__ = [
    "BallProblem",
    "SignClass",
    "EigenvalueRecord",
    "Spectrum",
    "RadialProfile",
    "h_tilde",
    "h_hat",
    "solve_positive_root",
    "solve_negative_root",
    "branch_eigenvalue",
    "multiplicity",
    "assemble_spectrum",
    "spectrum_by_count",
    "first_two",
    "negative_count",
    "defining_residual",
    "radial_eigenfunction",
    "zonal_harmonic",
]


@dataclass(frozen=True)
class BallProblem:
    dim: int
    alpha: float

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 2:
            raise DomainError(f"ball dimension must be an integer >= 2, got {self.dim!r}")
        if not math.isfinite(self.alpha):
            raise DomainError(f"alpha must be finite, got {self.alpha!r}")

    @property
    def nu(self) -> float:
        return self.dim / 2.0 - 1.0

    def order(self, l: int) -> Order:
        return Order.ball(self.dim, l)


class SignClass(str, enum.Enum):
    NEGATIVE = "negative"
    ZERO = "zero"
    POSITIVE = "positive"


@dataclass(frozen=True)
class EigenvalueRecord:
    """One distinct eigenvalue mu_{l,m}.

    ``order`` is the Bessel order nu + l of the radial profile.  ``k`` is the
    Bessel root: mu = k**2 (positive), mu = -k**2 (negative), k = 0 (zero).
    """

    l: int
    m: int
    mu: float
    k: float
    sign_class: SignClass
    multiplicity: int
    order: float

    def to_dict(self) -> dict:
        d = asdict(self)
        d["sign_class"] = self.sign_class.value
        return d


@dataclass
class Spectrum:
    """Distinct eigenvalues <= cutoff, ascending; ties ordered by (l, m)."""

    problem: BallProblem
    records: list[EigenvalueRecord]
    cutoff: float

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def expanded(self) -> list[EigenvalueRecord]:
        """Records repeated by multiplicity: entry n - 1 is mu_n."""
        out = []
        for rec in self.records:
            out.extend([rec] * rec.multiplicity)
        return out

    def eigenvalue(self, n: int) -> float:
        """mu_n counting multiplicity, n >= 1."""
        if n < 1:
            raise IndexError("eigenvalues are numbered from 1")
        seen = 0
        for rec in self.records:
            seen += rec.multiplicity
            if seen >= n:
                return rec.mu
        raise IndexError(f"mu_{n} lies above the cutoff {self.cutoff}")

    @property
    def total_multiplicity(self) -> int:
        return sum(r.multiplicity for r in self.records)


# --------------------------------------------------------------------------
# branch functions
# --------------------------------------------------------------------------


def _nu_l(order: Order) -> tuple[float, int]:
    if not isinstance(order, Order) or order.angular is None:
        raise DomainError("branch functions need an Order carrying its angular index l")
    return order.nu, order.angular


def h_tilde(order: Order, k: float) -> float:
    """k J_{nu+l+1}(k) / J_{nu+l}(k) - l, where order.nu = nu + l.

    Raises PoleError within 1e-12 of a zero of J_{nu+l}.  The k -> 0 limit
    is -l.
    """
    p, l = _nu_l(order)
    if k < 0:
        raise DomainError("h_tilde needs k > 0")
    if k == 0.0:
        return float(-l)
    m = 1
    while True:
        j = bessel_zero(p, m)
        if abs(k - j) <= 1e-12:
            raise PoleError(f"k={k!r} is a zero of J_{p:g}")
        if j > k:
            break
        m += 1
    return k * _j(p + 1.0, k) / _j(p, k) - l


def h_hat(order: Order, k: float) -> float:
    """-k I_{nu+l+1}(k) / I_{nu+l}(k) - l, strictly decreasing from -l."""
    p, l = _nu_l(order)
    if k < 0 or k > X_MAX:
        raise DomainError(f"h_hat needs 0 < k <= {X_MAX:g}")
    if k == 0.0:
        return float(-l)
    return -k * _i_scaled(p + 1.0, k) / _i_scaled(p, k) - l


# --------------------------------------------------------------------------
# root solvers
# --------------------------------------------------------------------------


def _pair(p: float, k: float, modified: bool):
    """(B_p(k), B_{p+1}(k), scaled) for B = J, or B = exp(-k) I when ``modified``.

    In the power-series regime both values are divided by the positive factor
    w(k) = (k/2)**p / Gamma(p+1), so that tiny roots (alpha + l close to 0)
    do not underflow.  ``scaled`` tells the caller that w was removed.
    """
    if k * k <= 4.0 * (p + 1.0):
        t = 0.5 * k / (p + 1.0)
        if modified:
            e = math.exp(-k)
            return e * _i_series_plain(p, k), e * t * _i_series_plain(p + 1.0, k), True
        return _j_series_sum(p, k), t * _j_series_sum(p + 1.0, k), True
    if modified:
        return _i_scaled(p, k), _i_scaled(p + 1.0, k), False
    return _j(p, k), _j(p + 1.0, k), False


def _positive_f(p: float, c: float):
    # f(k) = k J_{p+1} - c J_p, possibly divided by w(k); then (f/w)' = f'/w - (p/k) f/w
    def f(k):
        a, b, _ = _pair(p, k, False)
        return k * b - c * a

    def df(k):
        a, b, scaled = _pair(p, k, False)
        # d/dk [k J_{p+1}] = k J_p - p J_{p+1};  J_p' = -J_{p+1} + (p/k) J_p
        d = k * a - p * b - c * (-b + p / k * a)
        return d - p / k * (k * b - c * a) if scaled else d

    return f, df


def _negative_g(p: float, c: float):
    # g(k) = exp(-k) (c I_p + k I_{p+1}), possibly divided by w(k)
    def g(k):
        a, b, _ = _pair(p, k, True)
        return c * a + k * b

    def dg(k):
        a, b, scaled = _pair(p, k, True)
        # I_p' = I_{p+1} + (p/k) I_p;  I_{p+1}' = I_p - ((p+1)/k) I_{p+1}
        val = c * a + k * b
        d = c * (b + p / k * a) + b + k * (a - (p + 1.0) / k * b) - val
        return d - p / k * val if scaled else d

    return g, dg


def solve_positive_root(problem: BallProblem, l: int, m: int) -> float:
    """k_{nu+l,m}: the m-th positive zero of k J_{nu+l+1}(k) - (alpha+l) J_{nu+l}(k)."""
    _check_lm(l, m)
    c = problem.alpha + l
    if m == 1 and c <= 0:
        raise BranchError(
            f"alpha={problem.alpha!r} <= -l={-l}: branch l={l} has no positive first eigenvalue"
        )
    p = problem.nu + l
    f, df = _positive_f(p, c)
    if m == 1:
        # f(k) ~ -c (k/2)**p / Gamma(p+1) as k -> 0
        return safeguarded_newton(f, df, 0.0, bessel_zero(p, 1), sign_lo=-1, sign_hi=1)
    return safeguarded_newton(f, df, bessel_zero(p, m - 1), bessel_zero(p, m))


def solve_negative_root(problem: BallProblem, l: int) -> float:
    """k_hat_{nu+l,1}: the positive zero of alpha I_{nu+l}(k) + l I_{nu+l}(k) + k I_{nu+l+1}(k)."""
    _check_lm(l, 1)
    c = problem.alpha + l
    if c >= 0:
        raise BranchError(f"alpha={problem.alpha!r} >= -l={-l}: branch l={l} has no negative eigenvalue")
    p = problem.nu + l
    g, dg = _negative_g(p, c)
    lo, hi = 0.0, 1.0
    while g(hi) <= 0.0:
        lo, hi = hi, 2.0 * hi
        if hi > X_MAX:
            raise DomainError(f"negative root for alpha={problem.alpha!r} beyond X_MAX")
    return safeguarded_newton(g, dg, lo, hi, sign_lo=-1, sign_hi=1)


def _check_lm(l, m):
    if int(l) != l or l < 0:
        raise DomainError(f"angular index l must be an integer >= 0, got {l!r}")
    if int(m) != m or m < 1:
        raise DomainError(f"radial index m must be an integer >= 1, got {m!r}")


def multiplicity(dim: int, l: int) -> int:
    """Dimension of the degree-l spherical harmonics on S^{dim-1}."""
    if dim < 2 or l < 0:
        raise DomainError(f"need dim >= 2 and l >= 0, got dim={dim}, l={l}")
    if l == 0:
        return 1
    return comb(l + dim - 1, l) - (comb(l + dim - 3, l - 2) if l >= 2 else 0)


def branch_eigenvalue(problem: BallProblem, l: int, m: int) -> EigenvalueRecord:
    """mu_{l,m}, dispatched on the sign of alpha + l for m = 1."""
    _check_lm(l, m)
    mult = multiplicity(problem.dim, l)
    p = problem.nu + l
    if m == 1 and problem.alpha == -l:
        return EigenvalueRecord(l, 1, 0.0, 0.0, SignClass.ZERO, mult, p)
    if m == 1 and problem.alpha < -l:
        k = solve_negative_root(problem, l)
        return EigenvalueRecord(l, 1, -k * k, k, SignClass.NEGATIVE, mult, p)
    k = solve_positive_root(problem, l, m)
    return EigenvalueRecord(l, m, k * k, k, SignClass.POSITIVE, mult, p)


def defining_residual(problem: BallProblem, rec: EigenvalueRecord) -> float:
    """Residual of the defining equation, normalised by (1+|alpha|+l) max(|B_p|, |B_{p+1}|).

    B is J for the positive class and (scaled) I for the negative class.
    """
    p, k, l = rec.order, rec.k, rec.l
    scale = 1.0 + abs(problem.alpha) + l
    if rec.sign_class is SignClass.ZERO:
        return 0.0
    if rec.sign_class is SignClass.POSITIVE:
        a, b = _j(p, k), _j(p + 1.0, k)
        return abs(k * b - (problem.alpha + l) * a) / (scale * max(abs(a), abs(b)))
    a, b = _i_scaled(p, k), _i_scaled(p + 1.0, k)
    return abs((problem.alpha + l) * a + k * b) / (scale * max(a, b))


# --------------------------------------------------------------------------
# spectrum assembly
# --------------------------------------------------------------------------


def assemble_spectrum(problem: BallProblem, cutoff: float) -> Spectrum:
    """Every distinct eigenvalue <= cutoff.

    Branches l < -alpha (those holding a negative or zero first eigenvalue)
    are always visited.  After that, the l-loop stops at the first branch
    whose lowest eigenvalue exceeds the cutoff; mu_{l,1} increases with l
    there, and mu_{l,m} for m >= 2 exceeds j_{nu+l,1}**2, which increases
    with l as well.
    """
    if not math.isfinite(cutoff):
        raise DomainError("cutoff must be finite")
    records: list[EigenvalueRecord] = []
    l = 0
    while True:
        first = branch_eigenvalue(problem, l, 1)
        if problem.alpha >= -l and first.mu > cutoff:
            break
        if first.mu <= cutoff:
            records.append(first)
        p = problem.nu + l
        m = 2
        # j_{p,1}**2 < mu_{l,m} for m >= 2: skip the root solves when it already clears the cutoff
        if bessel_zero(p, 1) ** 2 <= cutoff:
            while True:
                rec = branch_eigenvalue(problem, l, m)
                if rec.mu > cutoff:
                    break
                records.append(rec)
                m += 1
        l += 1
    records.sort(key=lambda r: (r.mu, r.l, r.m))
    return Spectrum(problem, records, float(cutoff))


def spectrum_by_count(problem: BallProblem, count: int) -> Spectrum:
    """Smallest spectrum holding at least ``count`` eigenvalues counted with multiplicity.

    The cutoff is the value of mu_count, so the records are exactly those
    needed for mu_1, ..., mu_count (plus any ties at mu_count).
    """
    if count < 1:
        raise DomainError("count must be >= 1")
    cutoff = branch_eigenvalue(problem, 0, 1).mu
    step = 10.0
    while True:
        spec = assemble_spectrum(problem, cutoff)
        if spec.total_multiplicity >= count:
            top = spec.eigenvalue(count)
            kept = [r for r in spec.records if r.mu <= top]
            return Spectrum(problem, kept, top)
        cutoff += step
        step *= 2.0


def first_two(problem: BallProblem) -> tuple[float, float, float]:
    """(mu_1, mu_2, mu_2 / mu_1), counting multiplicity.

    mu_2 <= mu_{1,1} always (branch l = 1 has multiplicity N >= 2), so the
    spectrum up to mu_{1,1} suffices.  The ratio is 0 when mu_2 = 0 and
    undefined when mu_1 = 0 (alpha = 0).
    """
    top = branch_eigenvalue(problem, 1, 1).mu
    spec = assemble_spectrum(problem, top)
    mu1, mu2 = spec.eigenvalue(1), spec.eigenvalue(2)
    if mu1 == 0.0:
        raise RatioUndefinedError(f"mu_1 = 0 at alpha={problem.alpha!r}")
    return mu1, mu2, (0.0 if mu2 == 0.0 else mu2 / mu1)


def negative_count(problem: BallProblem) -> tuple[int, bool]:
    """(number of distinct negative eigenvalues, whether 0 is an eigenvalue).

    Branch l has a negative eigenvalue iff alpha < -l and a zero one iff
    alpha == -l exactly.
    """
    a = problem.alpha
    if a >= 0:
        return 0, a == 0
    count = math.ceil(-a)
    return count, float(count) == -a


# --------------------------------------------------------------------------
# eigenfunctions
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class RadialProfile:
    """Radial factor v(r) of an eigenfunction.

    kind is ``"oscillatory"`` (r**-nu J_{nu+l}(k r)), ``"growing"``
    (r**-nu I_{nu+l}(k r)) or ``"power"`` (r**l).  Values follow these
    formulas as written; ``leading_coefficient`` is the coefficient of r**l
    in the expansion at the origin, so v / leading_coefficient is the
    normalised profile v(r) = r**l + O(r**(l+2)).
    """

    kind: str
    order: Order
    k: float
    base_nu: float = 0.0

    @classmethod
    def from_record(cls, rec: EigenvalueRecord) -> "RadialProfile":
        nu = rec.order - rec.l
        kind = {
            SignClass.POSITIVE: "oscillatory",
            SignClass.NEGATIVE: "growing",
            SignClass.ZERO: "power",
        }[rec.sign_class]
        return cls(kind, Order(rec.order, None, rec.l), rec.k, nu)

    @property
    def l(self) -> int:
        return self.order.angular

    @property
    def leading_coefficient(self) -> float:
        if self.kind == "power":
            return 1.0
        p = self.order.nu
        # r**-nu B_p(k r) = (k/2)**p r**l / Gamma(p+1) + O(r**(l+2))
        return math.exp(p * math.log(0.5 * self.k) - math.lgamma(p + 1.0))

    def __call__(self, r: float) -> float:
        if not 0.0 <= r <= 1.0:
            raise DomainError(f"r must lie in [0, 1], got {r!r}")
        l = self.l
        if self.kind == "power":
            return r**l
        p = self.order.nu
        nu = self.base_nu
        x = self.k * r
        if x * x <= 4.0 * (p + 1.0):
            # r**-nu B_p(kr) = k**nu (x/2)**l / (2**nu Gamma(p+1)) * series(x)
            lead = self.k**nu * (0.5 * x) ** l / (2.0**nu * math.gamma(p + 1.0))
            if self.kind == "oscillatory":
                return lead * _j_series_sum(p, x)
            return lead * _i_series_plain(p, x)
        if self.kind == "oscillatory":
            return r**-nu * _j(p, x)
        return r**-nu * _i_scaled(p, x) * math.exp(x)


def _i_series_plain(p: float, x: float) -> float:
    q = 0.25 * x * x
    term = total = 1.0
    k = 0
    while True:
        k += 1
        term *= q / (k * (p + k))
        total += term
        if term <= 1e-17 * total:
            return total


def radial_eigenfunction(rec: EigenvalueRecord, r: float, *, normalized: bool = False) -> float:
    """Radial profile of ``rec`` at r in [0, 1], with the r -> 0 limit.

    By default the profile is r**-nu J_{nu+l}(k r), r**-nu I_{nu+l}(k r) or
    r**l as written.  ``normalized=True`` divides by the leading coefficient
    so that v(r) = r**l + O(r**(l+2)).
    """
    prof = RadialProfile.from_record(rec)
    v = prof(r)
    return v / prof.leading_coefficient if normalized else v


def zonal_harmonic(dim: int, l: int, cos_theta: float) -> float:
    """Zonal degree-l spherical harmonic on S^{dim-1}, equal to 1 at cos_theta = 1.

    cos(l theta) for dim = 2, the Legendre polynomial P_l for dim = 3, and
    the normalised Gegenbauer polynomial C_l^(dim/2-1) / C_l^(dim/2-1)(1)
    in general, by three-term recurrence.
    """
    if dim < 2 or l < 0:
        raise DomainError(f"need dim >= 2 and l >= 0, got dim={dim}, l={l}")
    t = float(cos_theta)
    if not -1.0 <= t <= 1.0:
        raise DomainError(f"cos_theta must lie in [-1, 1], got {cos_theta!r}")
    if dim == 2:
        # Chebyshev T_l
        prev, cur = 1.0, t
        if l == 0:
            return 1.0
        for _ in range(1, l):
            prev, cur = cur, 2.0 * t * cur - prev
        return cur
    return _gegenbauer(dim / 2.0 - 1.0, l, t) / _gegenbauer(dim / 2.0 - 1.0, l, 1.0)


def _gegenbauer(lam: float, n: int, t: float) -> float:
    prev, cur = 1.0, 2.0 * lam * t
    if n == 0:
        return 1.0
    for j in range(1, n):
        prev, cur = cur, (2.0 * t * (j + lam) * cur - (j + 2.0 * lam - 1.0) * prev) / (j + 1)
    return cur
