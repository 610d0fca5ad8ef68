"""
The two reference tables of first-branch roots and mu_2 / mu_1 ratios for the
disk (N = 2, nu = 0) and the 3-ball (N = 3, nu = 1/2).

Table 1 (alpha > 0): k_{nu,1}, k_{nu+1,1} and mu_2/mu_1 = k_{nu+1,1}**2 / k_{nu,1}**2.
Table 2 (-1 < alpha < 0): k_{nu+1,1}, k_hat_{nu,1} and
mu_2/mu_1 = -k_{nu+1,1}**2 / k_hat_{nu,1}**2.

The published ratio rows were formed from the 5-decimal roots, so ``value``
holds that ratio while ``exact`` keeps the full-precision one; they can
differ in the fifth decimal (3.66726 against 3.66722 for the disk at
alpha = 1).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .ball_spectrum import BallProblem, first_two, solve_negative_root, solve_positive_root

TABLE1_ALPHAS = (1.0, 2.0, 3.0, 4.0, 5.0, 100.0, 1000.0)
TABLE2_ALPHAS = (-0.1, -0.3, -0.5, -0.7, -0.9)
DIGITS = 5
_NU_LABEL = {2: "0", 3: "1/2"}


@dataclass
class TableRow:
    quantity: str  # "k", "k_hat" or "ratio"
    dim: int
    l: int | None
    values: list[float]
    exact: list[float] = field(default_factory=list)

    @property
    def nu(self) -> str:
        return _NU_LABEL[self.dim]

    @property
    def label(self) -> str:
        if self.quantity == "ratio":
            return f"mu2/mu1 {self.dim}D"
        name = "k" if self.quantity == "k" else "k_hat"
        return f"{name} l={self.l} nu={self.nu}"


@dataclass
class Table:
    name: str
    caption: str
    alphas: tuple[float, ...]
    rows: list[TableRow]

    def row(self, quantity: str, dim: int, l: int | None = None) -> TableRow:
        for r in self.rows:
            if r.quantity == quantity and r.dim == dim and (quantity == "ratio" or r.l == l):
                return r
        raise KeyError((quantity, dim, l))


def _ratio_row(dim, num: TableRow, den: TableRow, sign: float, alphas) -> TableRow:
    printed = [sign * (round(a, DIGITS) / round(b, DIGITS)) ** 2 for a, b in zip(num.values, den.values)]
    exact = [first_two(BallProblem(dim, a))[2] for a in alphas]
    return TableRow("ratio", dim, None, printed, exact)


def table1() -> Table:
    rows = []
    k = {}
    for l in (0, 1):
        for dim in (2, 3):
            vals = [solve_positive_root(BallProblem(dim, a), l, 1) for a in TABLE1_ALPHAS]
            k[l, dim] = TableRow("k", dim, l, vals, list(vals))
    rows = [k[0, 2], k[0, 3], k[1, 2], k[1, 3]]
    for dim in (2, 3):
        rows.append(_ratio_row(dim, k[1, dim], k[0, dim], 1.0, TABLE1_ALPHAS))
    return Table("table1", "k_{nu+l,1} and mu2/mu1 for l = 0, 1 and N = 2, 3", TABLE1_ALPHAS, rows)


def table2() -> Table:
    rows = []
    for dim in (2, 3):
        vals = [solve_positive_root(BallProblem(dim, a), 1, 1) for a in TABLE2_ALPHAS]
        rows.append(TableRow("k", dim, 1, vals, list(vals)))
    for dim in (2, 3):
        vals = [solve_negative_root(BallProblem(dim, a), 0) for a in TABLE2_ALPHAS]
        rows.append(TableRow("k_hat", dim, 0, vals, list(vals)))
    for dim, num, den in ((2, rows[0], rows[2]), (3, rows[1], rows[3])):
        rows.append(_ratio_row(dim, num, den, -1.0, TABLE2_ALPHAS))
    return Table("table2", "k_{nu+1,1}, k_hat_{nu,1} and mu2/mu1 for N = 2, 3", TABLE2_ALPHAS, rows)
