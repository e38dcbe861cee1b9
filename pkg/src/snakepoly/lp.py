"""Exact simplex method for small equality-form linear programs.

Problems have the form ``A x = b, x >= 0`` with integer data.  The tableau is
kept fraction free: entries are integers and the true tableau is the stored
one divided by the last pivot element (integer pivoting in the style of
Edmonds and Bareiss), so every division is exact.  Phase 1 uses artificial
variables; Bland's rule guarantees termination.  There are no tolerances.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence


class _Tableau:
    def __init__(self, A: Sequence[Sequence[int]], b: Sequence[int]):
        rows = []
        n = len(A[0]) if A else 0
        R = len(A)
        for i, (row, rhs) in enumerate(zip(A, b)):
            sign = -1 if rhs < 0 else 1
            art = [0] * R
            art[i] = 1
            rows.append([sign * a for a in row] + art + [sign * rhs])
        self.rows = rows
        self.n = n
        self.R = R
        self.D = 1
        self.basis = [n + i for i in range(R)]
        obj = [0] * (n + R + 1)
        for row in rows:
            for j in range(n):
                obj[j] -= row[j]
            obj[-1] -= row[-1]
        self.obj = obj

    def pivot(self, r: int, s: int):
        rows, D = self.rows, self.D
        prow = rows[r]
        p = prow[s]
        if p < 0:
            prow = rows[r] = [-x for x in prow]
            p = -p
        for i, row in enumerate(rows):
            if i == r:
                continue
            f = row[s]
            if f:
                rows[i] = [(x * p - f * y) // D for x, y in zip(row, prow)]
            elif p != D:
                rows[i] = [x * p // D for x in row]
        f = self.obj[s]
        self.obj = [(x * p - f * y) // D for x, y in zip(self.obj, prow)]
        self.D = p
        self.basis[r] = s

    def run(self, allowed: int) -> bool:
        """Minimise the objective row; columns ``>= allowed`` never enter.

        Returns False if the problem is unbounded.
        """
        while True:
            s = next((j for j in range(allowed) if self.obj[j] < 0), None)
            if s is None:
                return True
            best = None
            for i, row in enumerate(self.rows):
                a = row[s]
                if a > 0:
                    if best is None:
                        best = i
                        continue
                    lhs, rhs = row[-1] * self.rows[best][s], self.rows[best][-1] * a
                    if lhs < rhs or (lhs == rhs and self.basis[i] < self.basis[best]):
                        best = i
            if best is None:
                return False
            self.pivot(best, s)

    def phase_one(self) -> bool:
        self.run(self.n)
        return self.obj[-1] == 0

    def drop_artificials(self):
        """Pivot zero-level artificial variables out of the basis; drop redundant rows."""
        n = self.n
        r = 0
        while r < len(self.rows):
            if self.basis[r] >= n:
                row = self.rows[r]
                s = next((j for j in range(n) if row[j]), None)
                if s is None:
                    del self.rows[r]
                    del self.basis[r]
                    continue
                self.pivot(r, s)
            r += 1

    def set_objective(self, c: Sequence[int]):
        """Install ``minimise c.x`` as the objective for the current basis."""
        D = self.D
        width = self.n + self.R + 1
        obj = [0] * width
        for j in range(self.n):
            obj[j] = c[j] * D
        for row, bj in zip(self.rows, self.basis):
            cb = c[bj] if bj < self.n else 0
            if cb:
                for j in range(width):
                    obj[j] -= cb * row[j]
        self.obj = obj

    def value(self) -> Fraction:
        return Fraction(-self.obj[-1], self.D)


def feasible(A: Sequence[Sequence[int]], b: Sequence[int]) -> bool:
    """Is there ``x >= 0`` with ``A x = b``?"""
    if not A:
        return True
    return _Tableau(A, b).phase_one()


def bounds(A: Sequence[Sequence[int]], b: Sequence[int],
           c: Sequence[int]) -> Optional[tuple[Fraction, Fraction]]:
    """Minimum and maximum of ``c.x`` over ``A x = b, x >= 0``.

    Returns None when infeasible.  The feasible region must be bounded.
    """
    tab = _Tableau(A, b)
    if not tab.phase_one():
        return None
    tab.drop_artificials()
    saved = ([list(r) for r in tab.rows], list(tab.basis), tab.D)
    tab.set_objective(c)
    if not tab.run(tab.n):
        raise ValueError("unbounded linear program")
    lo = tab.value()
    tab.rows, tab.basis, tab.D = [list(r) for r in saved[0]], list(saved[1]), saved[2]
    tab.set_objective([-x for x in c])
    if not tab.run(tab.n):
        raise ValueError("unbounded linear program")
    hi = -tab.value()
    return lo, hi
