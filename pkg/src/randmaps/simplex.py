"""Exact two-phase simplex over the rationals with Bland's rule.

Solves  maximize c.x  subject to  A x = b,  x >= 0  with Fraction arithmetic,
so feasibility and strict positivity are certified without tolerances.
Redundant equality rows are detected and dropped after phase one.
"""

from dataclasses import dataclass
from fractions import Fraction

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: tuple | None = None
    value: Fraction | None = None


class _Tableau:
    def __init__(self, rows, rhs, basis):
        self.rows = rows  # list of lists of Fraction
        self.rhs = rhs
        self.basis = basis

    def pivot(self, r, j):
        row = self.rows[r]
        p = row[j]
        self.rows[r] = row = [v / p for v in row]
        self.rhs[r] /= p
        for k in range(len(self.rows)):
            if k != r:
                f = self.rows[k][j]
                if f:
                    self.rows[k] = [v - f * u for v, u in zip(self.rows[k], row)]
                    self.rhs[k] -= f * self.rhs[r]
        self.basis[r] = j

    def reduced_costs(self, cost):
        """Reduced costs of a minimization objective for the current basis."""
        red = list(cost)
        for r, bj in enumerate(self.basis):
            cb = cost[bj]
            if cb:
                red = [v - cb * u for v, u in zip(red, self.rows[r])]
        return red

    def objective(self, cost):
        return sum(cost[bj] * self.rhs[r] for r, bj in enumerate(self.basis))

    def run(self, cost, allowed):
        """Minimize cost over the current basis; Bland's rule. Returns False if unbounded."""
        while True:
            red = self.reduced_costs(cost)
            entering = next((j for j in allowed if red[j] < 0), None)
            if entering is None:
                return True
            leave, best = None, None
            for r, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    ratio = self.rhs[r] / a
                    if best is None or ratio < best or (ratio == best and self.basis[r] < self.basis[leave]):
                        leave, best = r, ratio
            if leave is None:
                return False
            self.pivot(leave, entering)


def solve_lp(c, A, b):
    """maximize c.x s.t. A x = b, x >= 0 (all entries coerced to Fraction)."""
    n = len(c)
    m = len(A)
    c = [Fraction(v) for v in c]
    rows, rhs = [], []
    for row, bi in zip(A, b):
        row = [Fraction(v) for v in row]
        bi = Fraction(bi)
        if bi < 0:
            row, bi = [-v for v in row], -bi
        rows.append(row + [Fraction(int(k == len(rows))) for k in range(m)])
        rhs.append(bi)
    tab = _Tableau(rows, rhs, [n + i for i in range(m)])
    phase1 = [Fraction(0)] * n + [Fraction(1)] * m
    tab.run(phase1, range(n + m))
    if tab.objective(phase1) != 0:
        return LPResult(INFEASIBLE)
    # drive artificial variables out of the basis; rows with no real pivot are redundant
    r = 0
    while r < len(tab.rows):
        if tab.basis[r] >= n:
            j = next((j for j in range(n) if tab.rows[r][j] != 0), None)
            if j is None:
                del tab.rows[r], tab.rhs[r], tab.basis[r]
                continue
            tab.pivot(r, j)
        r += 1
    tab.rows = [row[:n] for row in tab.rows]
    cost = [-v for v in c]
    if not tab.run(cost, range(n)):
        return LPResult(UNBOUNDED)
    x = [Fraction(0)] * n
    for r, bj in enumerate(tab.basis):
        x[bj] = tab.rhs[r]
    return LPResult(OPTIMAL, tuple(x), sum(ci * xi for ci, xi in zip(c, x)))
