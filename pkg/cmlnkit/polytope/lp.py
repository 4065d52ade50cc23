"""
Exact phase-one simplex over Fractions with Bland's rule, used for convex-combination feasibility.
"""
from fractions import Fraction

from cmlnkit.common.constant import def_logger

logger = def_logger.getChild(__name__)


class FeasibilityTableau(object):
    """Tableau for `columns @ lam = target, lam >= 0` with one artificial variable per row."""
    def __init__(self, columns, target):
        num_rows = len(target)
        num_columns = len(columns)
        self.rows = list()
        self.rhs = list()
        for i in range(num_rows):
            row = [Fraction(column[i]) for column in columns]
            value = Fraction(target[i])
            if value < 0:
                row = [-v for v in row]
                value = -value
            self.rows.append(row + [Fraction(int(k == i)) for k in range(num_rows)])
            self.rhs.append(value)

        self.basis = [num_columns + i for i in range(num_rows)]
        self.costs = [sum((row[j] for row in self.rows), Fraction(0)) for j in range(num_columns)] \
            + [Fraction(0)] * num_rows
        self.objective = sum(self.rhs, Fraction(0))
        self.num_pivots = 0

    def pivot(self, r, e):
        pivot_row = self.rows[r]
        pivot_value = pivot_row[e]
        pivot_row = [v / pivot_value for v in pivot_row]
        self.rows[r] = pivot_row
        self.rhs[r] /= pivot_value
        for i, row in enumerate(self.rows):
            factor = row[e]
            if i == r or factor == 0:
                continue
            self.rows[i] = [v - factor * p for v, p in zip(row, pivot_row)]
            self.rhs[i] -= factor * self.rhs[r]

        factor = self.costs[e]
        self.costs = [c - factor * p for c, p in zip(self.costs, pivot_row)]
        self.objective -= factor * self.rhs[r]
        self.basis[r] = e
        self.num_pivots += 1

    def step(self):
        # smallest improving index enters; ties in the ratio test leave by smallest basic index
        entering = next((j for j, c in enumerate(self.costs) if c > 0), None)
        if entering is None:
            return False

        candidates = [(self.rhs[i] / row[entering], self.basis[i], i)
                      for i, row in enumerate(self.rows) if row[entering] > 0]
        if len(candidates) == 0:
            return False

        _, _, leaving = min(candidates)
        self.pivot(leaving, entering)
        return True

    def solve(self):
        while self.objective > 0 and self.step():
            pass
        return self.objective == 0


def is_feasible(columns, target):
    """Whether target = sum_j lam_j * columns[j] has a solution with lam >= 0."""
    if len(columns) == 0:
        return all(Fraction(t) == 0 for t in target)
    return FeasibilityTableau(columns, target).solve()


def in_convex_hull(point, points):
    """Whether point is a convex combination of points (exact)."""
    columns = [tuple(q) + (1,) for q in points]
    return is_feasible(columns, tuple(point) + (1,))
