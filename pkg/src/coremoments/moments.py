"""Exact moments of the size of a random distinct-part (s, s+1)-core.

Raw moments are ``L^k(G_s)(1) / F_{s+1}``.  Two routes to the numerator are
kept: reading it off the polynomial G_s, and a recurrence on the power sums
themselves that follows G_s = G_{s-1} + q^{s-1}(G_{s-3} + G_{s-4}) without
ever materialising G_s.  The second route is what makes s in the hundreds
cheap; the two are asserted equal in the test suite.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from math import comb

from coremoments.genfunc import BASE_CASES, Gs_recurrence, fibonacci
from coremoments.qpoly import moment_numerator

DEFAULT_MAX_K = 16
DEFAULT_DIGITS = 30
# Up to this s the numerators are read off the explicit polynomial.
POLY_ROUTE_MAX_S = 60


class _PowerSumTable:
    """Rows N[s][j] = sum_n n^j [q^n]G_s for j <= k_max, grown on demand."""

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self.k_max = -1
        self.rows: list[list[int]] = [[]]

    def _rebuild(self, k_max: int) -> None:
        self.k_max = k_max
        self.rows = [[]]
        for s, g in sorted(BASE_CASES.items()):
            self.rows.append([moment_numerator(g, j) for j in range(k_max + 1)])

    def get(self, s: int, k: int) -> list[int]:
        with self._lock:
            if k > self.k_max:
                self._rebuild(max(k, DEFAULT_MAX_K))
            rows = self.rows
            while len(rows) <= s:
                t = len(rows)
                e = t - 1
                h = [a + b for a, b in zip(rows[t - 3], rows[t - 4])]
                prev = rows[t - 1]
                # sum (n+e)^j h_n expanded binomially
                epow = [e**i for i in range(self.k_max + 1)]
                row = [
                    prev[j] + sum(comb(j, i) * epow[j - i] * h[i] for i in range(j + 1))
                    for j in range(self.k_max + 1)
                ]
                rows.append(row)
            return rows[s]


_power_sums = _PowerSumTable()


def _check(s: int, k: int) -> None:
    if not isinstance(s, int) or s < 1:
        raise ValueError(f"s must be a positive integer, got {s!r}")
    if not isinstance(k, int) or k < 0:
        raise ValueError(f"k must be a non-negative integer, got {k!r}")


def power_sum(s: int, k: int, route: str = "auto") -> int:
    """``L^k(G_s)(1)``.  route is 'poly', 'recurrence' or 'auto'."""
    _check(s, k)
    if route == "auto":
        route = "poly" if s <= POLY_ROUTE_MAX_S else "recurrence"
    if route == "poly":
        return moment_numerator(Gs_recurrence(s), k)
    if route == "recurrence":
        return _power_sums.get(s, k)[k]
    raise ValueError(f"unknown route {route!r}")


def raw_moment(s: int, k: int, route: str = "auto") -> Fraction:
    return Fraction(power_sum(s, k, route), fibonacci(s + 1))


def raw_moments(s: int, max_k: int, route: str = "auto") -> list[Fraction]:
    return [raw_moment(s, k, route) for k in range(max_k + 1)]


def central_from_raw(raw: list[Fraction], k: int) -> Fraction:
    """``E[(X - mu)^k]`` from raw moments ``raw[0..k]`` by binomial expansion."""
    mu = raw[1] if len(raw) > 1 else Fraction(0)
    return sum(
        (comb(k, j) * (-mu) ** (k - j) * raw[j] for j in range(k + 1)),
        Fraction(0),
    )


def central_moment(s: int, k: int, route: str = "auto") -> Fraction:
    _check(s, k)
    return central_from_raw(raw_moments(s, max(k, 1), route), k)


@dataclass(frozen=True)
class StandardizedMoment:
    """``central_k / variance^(k/2)`` kept exact.

    ``square`` is ``central_k^2 / variance^k`` and ``sign`` the sign of the
    central moment, so odd k needs no square root.  For even k ``exact``
    holds the value itself.
    """

    k: int
    sign: int
    square: Fraction
    exact: Fraction | None = None

    def to_decimal(self, digits: int = DEFAULT_DIGITS) -> Decimal:
        with localcontext() as ctx:
            ctx.prec = digits + 5
            if self.exact is not None:
                val = Decimal(self.exact.numerator) / Decimal(self.exact.denominator)
            else:
                sq = Decimal(self.square.numerator) / Decimal(self.square.denominator)
                val = self.sign * sq.sqrt()
            ctx.prec = digits
            return +val

    def __float__(self) -> float:
        return float(self.to_decimal(20))


def standardize(central_k: Fraction, variance: Fraction, k: int) -> StandardizedMoment:
    if variance <= 0:
        raise ZeroDivisionError("variance is zero; standardized moments are undefined")
    sign = (central_k > 0) - (central_k < 0)
    square = central_k**2 / variance**k
    exact = central_k / variance ** (k // 2) if k % 2 == 0 else None
    return StandardizedMoment(k, sign, square, exact)


def standardized_moment_squared(s: int, k: int, route: str = "auto") -> StandardizedMoment:
    _check(s, k)
    raw = raw_moments(s, max(k, 2), route)
    return standardize(central_from_raw(raw, k), central_from_raw(raw, 2), k)


@dataclass(frozen=True)
class MomentTable:
    s: int
    raw: tuple[Fraction, ...]
    central: tuple[Fraction, ...]

    @property
    def variance(self) -> Fraction:
        return self.central[2]

    @property
    def max_k(self) -> int:
        return len(self.raw) - 1

    def standardized(self, k: int) -> StandardizedMoment:
        return standardize(self.central[k], self.variance, k)


def moment_table(s: int, max_k: int = DEFAULT_MAX_K, route: str = "auto") -> MomentTable:
    _check(s, max_k)
    raw = raw_moments(s, max(max_k, 2), route)
    central = [central_from_raw(raw, k) for k in range(len(raw))]
    return MomentTable(s, tuple(raw), tuple(central))
