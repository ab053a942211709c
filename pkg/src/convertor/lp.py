"""Exact rational linear algebra.

A phase-1 simplex over ``fractions.Fraction`` decides feasibility of small
linear systems without rounding, and Gaussian elimination gives exact rank
and nullspace vectors. Everything here is pure and allocation-local; no
floating point value is ever created.
"""

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

Row = Sequence[Fraction]
Constraint = Tuple[Row, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


class SimplexTableau:
    """Phase-1 tableau for ``A x = b, x >= 0`` with ``b >= 0``.

    One artificial column is appended per row and the sum of artificials is
    minimized. Pivoting follows Bland's rule (lowest entering index, lowest
    leaving basic index on ratio ties), which rules out cycling.
    """

    def __init__(self, rows: Sequence[Row], rhs: Sequence[Fraction]) -> None:
        self.m = len(rows)
        self.n = len(rows[0]) if rows else 0
        width = self.n + self.m
        self.table: List[List[Fraction]] = []
        for i, row in enumerate(rows):
            artificial = [ONE if k == i else ZERO for k in range(self.m)]
            self.table.append([Fraction(v) for v in row] + artificial + [Fraction(rhs[i])])
        self.basis = [self.n + i for i in range(self.m)]
        # reduced costs of the phase-1 objective, last entry holds -w
        self.cost = [ZERO] * (width + 1)
        for j in range(self.n):
            self.cost[j] = -sum((self.table[i][j] for i in range(self.m)), ZERO)
        self.cost[width] = -sum((self.table[i][width] for i in range(self.m)), ZERO)

    @property
    def width(self) -> int:
        return self.n + self.m

    def pivot(self, r: int, c: int) -> None:
        pivot_row = self.table[r]
        piv = pivot_row[c]
        pivot_row[:] = [v / piv for v in pivot_row]
        for i in range(self.m):
            if i == r:
                continue
            f = self.table[i][c]
            if f:
                row = self.table[i]
                row[:] = [a - f * b for a, b in zip(row, pivot_row)]
        f = self.cost[c]
        if f:
            self.cost = [a - f * b for a, b in zip(self.cost, pivot_row)]
        self.basis[r] = c

    def bland_step(self) -> str:
        entering = next((j for j in range(self.width) if self.cost[j] < 0), None)
        if entering is None:
            return "optimal"
        best = None
        for i in range(self.m):
            a = self.table[i][entering]
            if a > 0:
                key = (self.table[i][self.width] / a, self.basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            # the phase-1 objective is bounded below by zero
            return "unbounded"
        self.pivot(best[1], entering)
        return "go_on"

    def solve(self) -> Fraction:
        """Run to optimality and return the minimal artificial sum."""
        while self.bland_step() == "go_on":
            pass
        return -self.cost[self.width]

    def primal(self) -> List[Fraction]:
        x = [ZERO] * self.n
        for i, j in enumerate(self.basis):
            if j < self.n:
                x[j] = self.table[i][self.width]
        return x


def find_feasible_point(
    num_vars: int,
    equalities: Sequence[Constraint] = (),
    inequalities: Sequence[Constraint] = (),
    free: bool = False,
) -> Optional[List[Fraction]]:
    """
    Find a point satisfying ``a.x = b`` for every equality and ``a.x >= b``
    for every inequality.

    :param num_vars: Number of unknowns
    :param equalities: Pairs (coefficients, right-hand side)
    :param inequalities: Pairs (coefficients, lower bound)
    :param free: Unknowns are sign-free when true, nonnegative otherwise
    :return: A feasible point, or None when the system is infeasible
    """
    split = 2 if free else 1
    structural = num_vars * split
    num_slack = len(inequalities)
    rows: List[List[Fraction]] = []
    rhs: List[Fraction] = []

    def expand(coeffs: Row) -> List[Fraction]:
        row = []
        for a in coeffs:
            a = Fraction(a)
            row.append(a)
            if free:
                row.append(-a)
        return row

    for coeffs, b in equalities:
        rows.append(expand(coeffs) + [ZERO] * num_slack)
        rhs.append(Fraction(b))
    for k, (coeffs, b) in enumerate(inequalities):
        slack = [ZERO] * num_slack
        slack[k] = -ONE
        rows.append(expand(coeffs) + slack)
        rhs.append(Fraction(b))

    if not rows:
        return [ZERO] * num_vars

    for i, b in enumerate(rhs):
        if b < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -b

    tableau = SimplexTableau(rows, rhs)
    if tableau.solve() != 0:
        return None

    x = tableau.primal()[:structural]
    if free:
        return [x[2 * k] - x[2 * k + 1] for k in range(num_vars)]
    return x


def _row_echelon(rows: Sequence[Row], ncols: int) -> Tuple[List[List[Fraction]], List[int]]:
    matrix = [[Fraction(v) for v in row] for row in rows]
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(matrix)) if matrix[i][c] != 0), None)
        if pivot is None:
            continue
        matrix[r], matrix[pivot] = matrix[pivot], matrix[r]
        lead = matrix[r][c]
        matrix[r] = [v / lead for v in matrix[r]]
        for i in range(len(matrix)):
            if i != r and matrix[i][c] != 0:
                f = matrix[i][c]
                matrix[i] = [a - f * b for a, b in zip(matrix[i], matrix[r])]
        pivots.append(c)
        r += 1
        if r == len(matrix):
            break
    return matrix, pivots


def rank(rows: Sequence[Row], ncols: int) -> int:
    """Exact rank of a rational matrix given as rows of length ``ncols``."""
    if not rows:
        return 0
    return len(_row_echelon(rows, ncols)[1])


def nullspace_vector(rows: Sequence[Row], ncols: int) -> Optional[List[Fraction]]:
    """A nonzero vector orthogonal to every row, or None if only zero is."""
    if not rows:
        return [ONE] + [ZERO] * (ncols - 1) if ncols else None
    reduced, pivots = _row_echelon(rows, ncols)
    free_cols = [c for c in range(ncols) if c not in pivots]
    if not free_cols:
        return None
    f = free_cols[0]
    x = [ZERO] * ncols
    x[f] = ONE
    for r, c in enumerate(pivots):
        x[c] = -reduced[r][f]
    return x
