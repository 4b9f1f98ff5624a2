"""Exact linear algebra over Q with fraction-free (Bareiss) elimination."""
from __future__ import annotations

import math
from fractions import Fraction

from .errors import InconsistentDataError

__all__ = ["row_echelon", "solve", "nullspace", "rank"]


def _integral_rows(rows):
    out = []
    for row in rows:
        row = [Fraction(x) for x in row]
        den = math.lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * den) for x in row])
    return out


def row_echelon(rows):
    """Fraction-free row echelon form of an integer/rational matrix.

    Returns ``(echelon, pivots)`` with integer entries; each row is scaled by a
    nonzero constant relative to the Fraction-based reduction, so only the row
    space and pivot positions are meaningful.
    """
    a = _integral_rows(rows)
    n_rows = len(a)
    n_cols = len(a[0]) if a else 0
    pivots = []
    r = 0
    prev = 1
    for c in range(n_cols):
        if r == n_rows:
            break
        piv = next((i for i in range(r, n_rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, n_rows):
            for j in range(c + 1, n_cols):
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(rows) -> int:
    return len(row_echelon(rows)[1])


def solve(matrix, rhs):
    """One solution of ``matrix @ x = rhs`` (free variables set to zero).

    Raises InconsistentDataError when the system has no solution.
    """
    n_cols = len(matrix[0])
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    ech, pivots = row_echelon(aug)
    if n_cols in pivots:
        raise InconsistentDataError("linear system is inconsistent")
    x = [Fraction(0)] * n_cols
    for r in reversed(range(len(pivots))):
        c = pivots[r]
        acc = Fraction(ech[r][n_cols]) - sum(ech[r][j] * x[j] for j in range(c + 1, n_cols))
        x[c] = acc / ech[r][c]
    return x


def nullspace(matrix):
    """A basis of the right kernel, one Fraction vector per free column."""
    n_cols = len(matrix[0])
    ech, pivots = row_echelon(matrix)
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n_cols
        x[f] = Fraction(1)
        for r in reversed(range(len(pivots))):
            c = pivots[r]
            acc = -sum(ech[r][j] * x[j] for j in range(c + 1, n_cols))
            x[c] = Fraction(acc) / ech[r][c]
        basis.append(x)
    return basis
