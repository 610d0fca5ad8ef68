"""
Finite-difference cross-check of the closed-form spectra.

Ball, branch l: the radial problem

    -(r**(N-1) v')' / r**(N-1) + kappa_l v / r**2 = mu v,   kappa_l = l (l + N - 2),
    v'(1) + alpha v(1) = 0,

is discretised by a vertex-centred finite-volume scheme on r_i = i h.  Node i
owns the cell (r_i - h/2, r_i + h/2) clipped to [0, 1]; fluxes across the cell
faces use the exact face weight r**(N-1), the boundary node owns a half cell
and picks up the Robin term alpha directly.  For l = 0 the origin is a node
with a ball-shaped cell of radius h/2 (the regular closure v'(0) = 0); for
l >= 1 the unknown v(0) = 0 is dropped.  Scaling by the square root of the
diagonal cell mass gives a symmetric tridiagonal matrix.

Interval: the same scheme with N = 1, kappa = 0 and Robin half cells at both
ends.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations_with_replacement

import numpy as np

from .ball_spectrum import BallProblem, assemble_spectrum, multiplicity
from .exceptions import DomainError
from .interval_spectrum import IntervalProblem, solve_interval
from .tridiagonal import eigvalsh_smallest, inverse_iteration, sturm_count

__all__ = [
    "RadialGrid",
    "OracleReport",
    "radial_operator",
    "radial_operator_dense",
    "interval_operator",
    "fd_radial_eigenvalues",
    "fd_radial_eigenvector",
    "fd_negative_count",
    "fd_interval_eigenvalues",
    "harmonic_dimension_bruteforce",
    "richardson_order",
    "guardrail",
    "verify_spectrum",
    "verify_interval",
]


@dataclass(frozen=True)
class RadialGrid:
    n: int
    l: int
    dim: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 16:
            raise DomainError(f"grid needs n >= 16 intervals, got {self.n!r}")
        if int(self.l) != self.l or self.l < 0:
            raise DomainError(f"l must be an integer >= 0, got {self.l!r}")
        if int(self.dim) != self.dim or self.dim < 2:
            raise DomainError(f"dim must be an integer >= 2, got {self.dim!r}")

    @property
    def h(self) -> float:
        return 1.0 / self.n

    def nodes(self) -> np.ndarray:
        start = 0 if self.l == 0 else 1
        return np.arange(start, self.n + 1) * self.h


def _radial_parts(alpha: float, grid: RadialGrid):
    """Diagonal, upper and lower couplings and cell masses of the unscaled operator."""
    N, l, h = grid.dim, grid.l, grid.h
    kappa = l * (l + N - 2)
    r = grid.nodes()
    right = (r + 0.5 * h) ** (N - 1)
    left = np.maximum(r - 0.5 * h, 0.0) ** (N - 1)
    mass = r ** (N - 1) * h
    if l == 0:
        mass[0] = (0.5 * h) ** N / N
    mass[-1] = 0.5 * h
    right[-1] = 0.0
    diag = (right + left) / h
    diag[-1] += alpha
    if kappa:
        pot = kappa * r ** (N - 3) * h
        pot[-1] *= 0.5
        diag += pot
    upper = -right[:-1] / h
    # coupling from node i+1 back to node i, from that node's left face
    lower = -left[1:] / h
    return diag, upper, lower, mass


def radial_operator(problem: BallProblem, grid: RadialGrid):
    """(d, e) of the symmetric tridiagonal matrix M**-1/2 K M**-1/2."""
    if grid.dim != problem.dim:
        raise DomainError("grid and problem dimensions differ")
    diag, upper, _, mass = _radial_parts(problem.alpha, grid)
    s = 1.0 / np.sqrt(mass)
    return diag * s * s, upper * s[:-1] * s[1:]


def radial_operator_dense(problem: BallProblem, grid: RadialGrid) -> np.ndarray:
    """Dense scaled operator with the two off-diagonals assembled independently.

    Used to check that the weighted scheme is symmetric; only for small n.
    """
    diag, upper, lower, mass = _radial_parts(problem.alpha, grid)
    s = 1.0 / np.sqrt(mass)
    a = np.diag(diag * s * s)
    a += np.diag(upper * s[:-1] * s[1:], 1)
    a += np.diag(lower * s[1:] * s[:-1], -1)
    return a


def interval_operator(problem: IntervalProblem, n: int):
    """(d, e) for -u'' on (0, 1) with Robin half cells at both ends, n intervals."""
    if int(n) != n or n < 16:
        raise DomainError(f"grid needs n >= 16 intervals, got {n!r}")
    h = 1.0 / n
    diag = np.full(n + 1, 2.0 / h)
    diag[0] = diag[-1] = 1.0 / h + problem.alpha
    mass = np.full(n + 1, h)
    mass[0] = mass[-1] = 0.5 * h
    s = 1.0 / np.sqrt(mass)
    return diag * s * s, np.full(n, -1.0 / h) * s[:-1] * s[1:]


def _check_count(count: int, n: int):
    if int(count) != count or count < 1 or count > n / 4:
        raise DomainError(f"count must lie in [1, n/4] = [1, {n // 4}], got {count!r}")


def fd_radial_eigenvalues(problem: BallProblem, l: int, grid: RadialGrid | int, count: int) -> list[float]:
    """The ``count`` smallest discrete eigenvalues of radial branch l."""
    if not isinstance(grid, RadialGrid):
        grid = RadialGrid(int(grid), l, problem.dim)
    if grid.l != l:
        raise DomainError("grid built for a different l")
    _check_count(count, grid.n)
    d, e = radial_operator(problem, grid)
    return eigvalsh_smallest(d, e, count)


def fd_radial_eigenvector(problem: BallProblem, grid: RadialGrid, index: int):
    """(nodes, v) for the index-th (0-based) discrete eigenpair, in unscaled form."""
    d, e = radial_operator(problem, grid)
    lam = eigvalsh_smallest(d, e, index + 1)[index]
    y = inverse_iteration(d, e, lam)
    _, _, _, mass = _radial_parts(problem.alpha, grid)
    return grid.nodes(), y / np.sqrt(mass)


def fd_negative_count(problem: BallProblem, l: int, n: int) -> int:
    """Number of negative discrete eigenvalues of branch l (a Sturm count at 0)."""
    d, e = radial_operator(problem, RadialGrid(n, l, problem.dim))
    return sturm_count(d, e, 0.0)


def fd_interval_eigenvalues(problem: IntervalProblem, n: int, count: int) -> list[float]:
    _check_count(count, n)
    d, e = interval_operator(problem, n)
    return eigvalsh_smallest(d, e, count)


def harmonic_dimension_bruteforce(dim: int, l: int) -> int:
    """Dimension of the harmonic homogeneous degree-l polynomials in dim variables.

    Builds the matrix of the Laplacian from degree-l to degree-(l-2) monomials
    and returns the nullity.
    """
    if dim < 1 or l < 0:
        raise DomainError(f"need dim >= 1 and l >= 0, got dim={dim}, l={l}")
    src = list(combinations_with_replacement(range(dim), l))
    if l < 2:
        return len(src)
    dst = {m: i for i, m in enumerate(combinations_with_replacement(range(dim), l - 2))}
    a = np.zeros((len(dst), len(src)))
    for j, mono in enumerate(src):
        powers = [mono.count(v) for v in range(dim)]
        for v, p in enumerate(powers):
            if p >= 2:
                q = powers.copy()
                q[v] -= 2
                key = tuple(x for x in range(dim) for _ in range(q[x]))
                a[dst[key], j] += p * (p - 1)
    return len(src) - int(np.linalg.matrix_rank(a))


def richardson_order(coarse: float, mid: float, fine: float) -> float:
    """log2 of the ratio of successive differences over three halvings of h.

    nan when the two differences are both at rounding level (an exact discrete
    eigenvalue) or of opposite sign.
    """
    d1, d2 = coarse - mid, mid - fine
    noise = 64.0 * np.finfo(float).eps * max(1.0, abs(fine))
    if abs(d1) <= noise and abs(d2) <= noise:
        return math.nan
    if d1 == 0.0 or d2 == 0.0 or (d1 > 0) != (d2 > 0):
        return math.nan
    return math.log2(d1 / d2)


def guardrail(mu: float, n: int, *, dim: int = 1, l: int = 0) -> float:
    """Acceptable |discrete - exact|: 5 max(N, 2) h**2 (1 + mu**2 + kappa_l**2).

    The kappa_l term covers high branches, where the r**l profile drives the
    error even when mu is near 0; the factor N covers the (N-1)/r drift term.
    dim = 1 (the interval) gives 10 h**2 (1 + mu**2).
    """
    kappa = l * (l + dim - 2) if dim > 1 else 0
    return 5.0 * max(dim, 2) * (1.0 + mu * mu + kappa * kappa) / (n * n)


@dataclass
class OracleReport:
    """Closed-form values against the finest-grid discrete ones."""

    labels: list[tuple[int, int]]
    closed_form: list[float]
    discrete: list[float]
    abs_errors: list[float]
    grids: list[int]
    orders: list[float] = field(default_factory=list)
    order: float = math.nan
    guardrails: list[float] = field(default_factory=list)
    problems: list[str] = field(default_factory=list)

    @property
    def max_abs_error(self) -> float:
        return max(self.abs_errors, default=0.0)

    @property
    def passed(self) -> bool:
        return not self.problems

    def to_dict(self) -> dict:
        return {
            "labels": [list(t) for t in self.labels],
            "closed_form": self.closed_form,
            "discrete": self.discrete,
            "abs_errors": self.abs_errors,
            "guardrails": self.guardrails,
            "grids": self.grids,
            "orders": [None if math.isnan(p) else p for p in self.orders],
            "order": None if math.isnan(self.order) else self.order,
            "max_abs_error": self.max_abs_error,
            "passed": self.passed,
            "problems": self.problems,
        }


def _check_grids(grids) -> list[int]:
    grids = [int(g) for g in grids]
    if not grids or any(b <= a for a, b in zip(grids, grids[1:])):
        raise DomainError(f"grids must be a non-empty increasing list, got {grids!r}")
    return grids


def _finish(report: OracleReport, per_grid: list[list[float]], dim: int):
    n = report.grids[-1]
    report.discrete = per_grid[-1]
    for (l, m), exact, fd in zip(report.labels, report.closed_form, report.discrete):
        err = abs(fd - exact)
        g = guardrail(exact, n, dim=dim, l=l)
        report.abs_errors.append(err)
        report.guardrails.append(g)
        if err > g:
            report.problems.append(f"(l={l}, m={m}): |{fd:.10g} - {exact:.10g}| = {err:.3g} > {g:.3g}")
    if len(per_grid) >= 3:
        c, m, f = per_grid[-3:]
        report.orders = [richardson_order(a, b, x) for a, b, x in zip(c, m, f)]
        finite = [p for p in report.orders if not math.isnan(p)]
        report.order = min(finite) if finite else math.nan


def verify_spectrum(problem: BallProblem, cutoff: float, grids) -> OracleReport:
    """Compare assemble_spectrum(problem, cutoff) with the radial oracle on each grid.

    Also checks, at the finest grid, that no branch holds a discrete
    eigenvalue clearly below the cutoff that the closed form missed (or the
    reverse), and that the multiplicity formula agrees with the brute-force
    harmonic count where that is affordable.
    """
    grids = _check_grids(grids)
    spec = assemble_spectrum(problem, cutoff)
    by_l: dict[int, list] = {}
    for rec in spec.records:
        by_l.setdefault(rec.l, []).append(rec)
    l_top = max(by_l, default=-1) + 1

    report = OracleReport([], [], [], [], grids)
    per_grid: list[list[float]] = [[] for _ in grids]
    for l in range(l_top + 1):
        recs = sorted(by_l.get(l, []), key=lambda r: r.m)
        report.labels += [(r.l, r.m) for r in recs]
        report.closed_form += [r.mu for r in recs]
        for gi, n in enumerate(grids):
            if recs:
                per_grid[gi] += fd_radial_eigenvalues(problem, l, RadialGrid(n, l, problem.dim), len(recs))
        n = grids[-1]
        d, e = radial_operator(problem, RadialGrid(n, l, problem.dim))
        slack = guardrail(cutoff, n, dim=problem.dim, l=l)
        below = sturm_count(d, e, cutoff - slack)
        upto = sturm_count(d, e, cutoff + slack)
        if not below <= len(recs) <= upto:
            report.problems.append(
                f"branch l={l}: {len(recs)} closed-form eigenvalues <= {cutoff:g}, "
                f"oracle finds between {below} and {upto}"
            )
        if recs and problem.dim <= 6 and l <= 6:
            brute = harmonic_dimension_bruteforce(problem.dim, l)
            if brute != recs[0].multiplicity or brute != multiplicity(problem.dim, l):
                report.problems.append(f"branch l={l}: multiplicity {recs[0].multiplicity}, brute force {brute}")
    _finish(report, per_grid, problem.dim)
    return report


def verify_interval(problem: IntervalProblem, count: int, grids) -> OracleReport:
    """Compare the first ``count`` interval eigenvalues with the finite-difference oracle."""
    grids = _check_grids(grids)
    pairs = solve_interval(problem, count)
    report = OracleReport([(0, p.m) for p in pairs], [p.mu for p in pairs], [], [], grids)
    per_grid = [fd_interval_eigenvalues(problem, n, count) for n in grids]
    _finish(report, per_grid, 1)
    return report
