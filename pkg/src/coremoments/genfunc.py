"""Fast routes to the size generating function of distinct-part (s, s+1)-cores.

Three constructions are provided and cross-checked against each other and
against the brute-force oracle in :mod:`coremoments.partitions`:

* ``sum``: sum of G_{k,l}(q) over k + l <= s, where G_{k,l} counts partitions
  into l distinct parts with largest part k.
* ``closed``: sum over m of q^{m(m+1)/2} [s-m choose m]_q.
* ``recurrence``: G_s = G_{s-1} + q^{s-1} (G_{s-3} + G_{s-4}) for s >= 5.

The recurrence is only checked on a finite range here, never proved.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

from coremoments.partitions import (
    Partition,
    WorkBudgetExceeded,
    brute_force_gf,
    brute_force_gf_hooks_table,
)
from coremoments.qpoly import QPoly, add, qbinom, shift

# G_1..G_4, the seeds of the recurrence.
BASE_CASES: dict[int, QPoly] = {
    1: QPoly([1]),
    2: QPoly([1, 1]),
    3: QPoly([1, 1, 1]),
    4: QPoly([1, 1, 1, 2]),
}


class Method(str, Enum):
    SUM = "sum"
    CLOSED = "closed"
    RECURRENCE = "recurrence"
    BRUTE = "brute"


def _check_s(s: int) -> None:
    if not isinstance(s, int) or s < 1:
        raise ValueError(f"s must be a positive integer, got {s!r}")


def fibonacci(n: int) -> int:
    """F_n with F_1 = F_2 = 1 (so that G_s(1) = F_{s+1})."""
    if n < 1:
        raise ValueError("fibonacci index must be >= 1")
    # fast doubling: (F_k, F_{k+1}) -> (F_2k, F_2k+1)
    a, b = 0, 1
    for bit in bin(n)[2:]:
        c = a * (2 * b - a)
        d = a * a + b * b
        a, b = (d, c + d) if bit == "1" else (c, d)
    return a


@lru_cache(maxsize=None)
def G_kl(k: int, l: int) -> QPoly:
    """Partitions into exactly l distinct parts with largest part exactly k."""
    if k < 1 or l < 1:
        raise ValueError("G_kl needs k >= 1 and l >= 1")
    if l == 1:
        return QPoly.monomial(k)
    acc = QPoly()
    for j in range(l - 1, k):
        acc = add(acc, G_kl(j, l - 1))
    return shift(acc, k)


def Gs_sum(s: int) -> QPoly:
    _check_s(s)
    total = QPoly([1])
    for l in range(1, s):
        for k in range(l, s - l + 1):
            total = add(total, G_kl(k, l))
    return total


def Gs_closed(s: int) -> QPoly:
    _check_s(s)
    total = QPoly()
    for m in range(0, s + 1):
        if m > s - m:
            break
        total = add(total, shift(qbinom(s - m, m), m * (m + 1) // 2))
    return total


_rec_lock = threading.Lock()
_rec_table: list[QPoly] = [QPoly()]  # index 0 unused


def recurrence_table(max_s: int) -> tuple[QPoly, ...]:
    """(G_1, ..., G_max_s) from the recurrence; index i holds G_{i+1}."""
    _check_s(max_s)
    with _rec_lock:
        while len(_rec_table) <= max_s:
            s = len(_rec_table)
            if s in BASE_CASES:
                _rec_table.append(BASE_CASES[s])
            else:
                tail = add(_rec_table[s - 3], _rec_table[s - 4])
                _rec_table.append(add(_rec_table[s - 1], shift(tail, s - 1)))
        return tuple(_rec_table[1 : max_s + 1])


def Gs_recurrence(s: int) -> QPoly:
    return recurrence_table(s)[s - 1]


def Gs(s: int, method: Method | str = Method.RECURRENCE) -> QPoly:
    method = Method(method)
    if method is Method.SUM:
        return Gs_sum(s)
    if method is Method.CLOSED:
        return Gs_closed(s)
    if method is Method.RECURRENCE:
        return Gs_recurrence(s)
    return brute_force_gf(s)


def closed_form_degree(s: int) -> int:
    """Degree of G_s read off the closed form's summands."""
    return max(m * (m + 1) // 2 + m * (s - 2 * m) for m in range(0, s // 2 + 1))


@dataclass(frozen=True)
class GfTable:
    max_s: int
    polys: tuple[QPoly, ...]
    method: Method

    def __getitem__(self, s: int) -> QPoly:
        if not 1 <= s <= self.max_s:
            raise IndexError(f"s={s} outside table range 1..{self.max_s}")
        return self.polys[s - 1]

    def check_counts(self) -> list[int]:
        """Values of s where G_s(1) != F_{s+1}."""
        return [s for s in range(1, self.max_s + 1) if self[s](1) != fibonacci(s + 1)]


def build_table(max_s: int, method: Method | str = Method.RECURRENCE) -> GfTable:
    method = Method(method)
    if method is Method.RECURRENCE:
        polys = recurrence_table(max_s)
    else:
        polys = tuple(Gs(s, method) for s in range(1, max_s + 1))
    return GfTable(max_s, polys, method)


def distinctify_bijection(p: Partition | tuple[int, ...], m: int, n: int | None = None) -> Partition:
    """Add m, m-1, ..., 1 to the parts of p (missing parts count as 0).

    Maps partitions in an m x (n-m) box onto partitions with exactly m
    distinct parts, each at most n, raising the size by m(m+1)/2.  ``n`` is
    only used to check the box constraint.
    """
    parts = tuple(p.parts if isinstance(p, Partition) else p)
    if m < 1:
        raise ValueError("m must be positive")
    if len(parts) > m:
        raise ValueError(f"{parts} has more than {m} parts")
    if n is not None and parts and parts[0] > n - m:
        raise ValueError(f"{parts} does not fit in a {m} x {n - m} box")
    padded = parts + (0,) * (m - len(parts))
    return Partition(tuple(x + m - i for i, x in enumerate(padded)))


@dataclass(frozen=True)
class Check:
    s: int
    left: str
    right: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        msg = f"{mark} s={self.s} {self.left} == {self.right}"
        return msg + (f" ({self.detail})" if self.detail else "")


@dataclass
class VerificationReport:
    max_s: int
    brute_max: int
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def lines(self) -> list[str]:
        return [c.line() for c in self.checks]


def _compare(s: int, lname: str, left: QPoly, rname: str, right: QPoly) -> Check:
    n = left.first_difference(right)
    if n is None:
        return Check(s, lname, rname, True)
    return Check(s, lname, rname, False, f"first difference at q^{n}: {left[n]} vs {right[n]}")


def verify_all_methods(max_s: int, brute_max: int, budget: int | None = None) -> VerificationReport:
    """Cross-check every construction of G_s on a finite range.

    sum/closed/recurrence are compared for s <= max_s; both brute-force
    variants join for s <= brute_max; G_s(1) = F_{s+1} is checked throughout.
    """
    _check_s(max_s)
    _check_s(brute_max)
    if brute_max > max_s:
        raise ValueError("brute_max must not exceed max_s")
    report = VerificationReport(max_s, brute_max)
    rec = recurrence_table(max_s)
    hooks = brute_force_gf_hooks_table(brute_max, budget)
    for s in range(1, max_s + 1):
        r = rec[s - 1]
        report.checks.append(_compare(s, "sum", Gs_sum(s), "recurrence", r))
        report.checks.append(_compare(s, "closed", Gs_closed(s), "recurrence", r))
        if s <= brute_max:
            report.checks.append(_compare(s, "brute", brute_force_gf(s, budget), "recurrence", r))
            report.checks.append(_compare(s, "brute-hooks", hooks[s], "recurrence", r))
        if s in BASE_CASES:
            report.checks.append(_compare(s, "closed", Gs_closed(s), "base case", BASE_CASES[s]))
        count, fib = r(1), fibonacci(s + 1)
        report.checks.append(
            Check(s, "G_s(1)", "F_{s+1}", count == fib, "" if count == fib else f"{count} vs {fib}")
        )
    return report


__all__ = [
    "BASE_CASES",
    "Check",
    "GfTable",
    "Method",
    "VerificationReport",
    "WorkBudgetExceeded",
    "G_kl",
    "Gs",
    "Gs_closed",
    "Gs_recurrence",
    "Gs_sum",
    "build_table",
    "closed_form_degree",
    "distinctify_bijection",
    "fibonacci",
    "recurrence_table",
    "verify_all_methods",
]
