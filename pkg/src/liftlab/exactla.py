"""Small exact linear algebra over the rationals (Fractions everywhere)."""

from __future__ import annotations

from fractions import Fraction


class LinearSolver:
    """Repeated exact solving of A x = b for a fixed full-column-rank A.

    A is given by columns.  The constructor row-reduces [A | I] once; solve()
    is then a matrix-vector product plus a consistency check, returning None
    when b is outside the column span.
    """

    def __init__(self, columns):
        m = len(columns[0])
        k = len(columns)
        rows = [[Fraction(columns[j][i]) for j in range(k)]
                + [Fraction(1 if t == i else 0) for t in range(m)]
                for i in range(m)]
        r = 0
        for c in range(k):
            pivot = next((i for i in range(r, m) if rows[i][c]), None)
            if pivot is None:
                raise ValueError("columns are linearly dependent")
            rows[r], rows[pivot] = rows[pivot], rows[r]
            pv = rows[r][c]
            if pv != 1:
                rows[r] = [v / pv for v in rows[r]]
            for i in range(m):
                if i != r and rows[i][c]:
                    f = rows[i][c]
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
            r += 1
        self.k = k
        self.m = m
        self._transform = [row[k:] for row in rows]

    def solve(self, b):
        for i in range(self.k, self.m):
            if sum(t * bv for t, bv in zip(self._transform[i], b) if bv):
                return None
        return [Fraction(sum(t * bv for t, bv in zip(self._transform[i], b) if bv))
                for i in range(self.k)]


def rank(vectors) -> int:
    """Rank of a list of rational row vectors."""
    rows = [[Fraction(v) for v in vec] for vec in vectors]
    rk = 0
    cols = len(rows[0]) if rows else 0
    for c in range(cols):
        pivot = next((i for i in range(rk, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[rk], rows[pivot] = rows[pivot], rows[rk]
        pv = rows[rk][c]
        rows[rk] = [v / pv for v in rows[rk]]
        for i in range(len(rows)):
            if i != rk and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rk])]
        rk += 1
        if rk == len(rows):
            break
    return rk
