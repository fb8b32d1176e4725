"""Exact solution of overdetermined integer linear systems.

Forward elimination is fraction-free (Bareiss): every intermediate entry is
an integer and each division is exact.  Only the final back substitution
introduces rationals.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class InconsistentSystem(ValueError):
    pass


class RankDeficient(ValueError):
    pass


def solve_exact(A: Sequence[Sequence[int]], b: Sequence[int]) -> list[Fraction]:
    """Unique solution x of ``A x = b`` with ``A`` of shape m x n, m >= n.

    Raises RankDeficient if A does not have full column rank and
    InconsistentSystem if no x satisfies every equation.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    if m < n:
        raise RankDeficient(f"{m} equations cannot determine {n} unknowns")
    M = [list(row) + [rhs] for row, rhs in zip(A, b)]
    if any(len(row) != n + 1 for row in M):
        raise ValueError("ragged matrix")

    prev = 1
    for k in range(n):
        piv = next((i for i in range(k, m) if M[i][k] != 0), None)
        if piv is None:
            raise RankDeficient(f"no pivot in column {k}")
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
        pk = M[k]
        p = pk[k]
        for i in range(k + 1, m):
            row = M[i]
            f = row[k]
            for j in range(k + 1, n + 1):
                row[j] = (p * row[j] - f * pk[j]) // prev
            row[k] = 0
        prev = p

    for i in range(n, m):
        if M[i][n] != 0:
            raise InconsistentSystem(f"equation {i} is not satisfied by the leading {n}")

    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(M[i][n])
        for j in range(i + 1, n):
            acc -= M[i][j] * x[j]
        x[i] = acc / M[i][i]
    return x
