"""Dense polynomials in q with exact integer coefficients."""

from __future__ import annotations

import threading
from functools import lru_cache
from typing import Iterable, Sequence

__all__ = ["QPoly", "add", "mul", "shift", "qbinom", "L_op", "moment_numerator"]

# Below this many coefficient products schoolbook beats packing into one big int.
_KRONECKER_THRESHOLD = 4096


def _trim(coeffs: list[int]) -> tuple[int, ...]:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


class QPoly:
    """Polynomial ``sum c[n] q^n`` with non-negative exponents.

    Instances are immutable and always canonical: the highest stored
    coefficient is nonzero, and the zero polynomial has no coefficients.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = list(coeffs)
        for x in c:
            if not isinstance(x, int):
                raise TypeError(f"QPoly coefficients must be int, got {type(x).__name__}")
        self._c = _trim(c)

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> QPoly:
        if e < 0:
            raise ValueError("exponent must be non-negative")
        return cls([0] * e + [c])

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._c

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self._c) - 1

    def is_zero(self) -> bool:
        return not self._c

    def __getitem__(self, n: int) -> int:
        if 0 <= n < len(self._c):
            return self._c[n]
        return 0

    def __len__(self) -> int:
        return len(self._c)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QPoly):
            return self._c == other._c
        if isinstance(other, int):
            return self._c == _trim([other])
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._c)

    def __add__(self, other: QPoly | int) -> QPoly:
        if isinstance(other, int):
            other = QPoly([other])
        return add(self, other)

    __radd__ = __add__

    def __neg__(self) -> QPoly:
        return QPoly([-x for x in self._c])

    def __sub__(self, other: QPoly) -> QPoly:
        return add(self, -other)

    def __mul__(self, other: QPoly | int) -> QPoly:
        if isinstance(other, int):
            return QPoly([other * x for x in self._c])
        return mul(self, other)

    __rmul__ = __mul__

    def __call__(self, q: int) -> int:
        """Evaluate at an integer point (Horner)."""
        acc = 0
        for c in reversed(self._c):
            acc = acc * q + c
        return acc

    def __repr__(self) -> str:
        return f"QPoly({list(self._c)!r})"

    def __str__(self) -> str:
        return self.render()

    def render(self, var: str = "q") -> str:
        """Ascending-power rendering, e.g. ``1 + q + q^2 + 2*q^3``."""
        if not self._c:
            return "0"
        out: list[str] = []
        for n, c in enumerate(self._c):
            if c == 0:
                continue
            if n == 0:
                mono = str(abs(c))
            else:
                base = var if n == 1 else f"{var}^{n}"
                mono = base if abs(c) == 1 else f"{abs(c)}*{base}"
            if not out:
                out.append(("-" if c < 0 else "") + mono)
            else:
                out.append(("- " if c < 0 else "+ ") + mono)
        return " ".join(out)

    def first_difference(self, other: QPoly) -> int | None:
        """Lowest exponent where the two polynomials differ, or None if equal."""
        for n in range(max(len(self._c), len(other._c))):
            if self[n] != other[n]:
                return n
        return None


def add(f: QPoly, g: QPoly) -> QPoly:
    a, b = f.coeffs, g.coeffs
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return QPoly(out)


def shift(f: QPoly, e: int) -> QPoly:
    """Multiply by ``q^e``."""
    if e < 0:
        raise ValueError("shift exponent must be non-negative")
    if f.is_zero():
        return f
    return QPoly([0] * e + list(f.coeffs))


def _mul_schoolbook(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _mul_kronecker(a: Sequence[int], b: Sequence[int]) -> list[int]:
    # Pack each polynomial into one integer at base 2**w, multiply once, unpack.
    # w leaves room for the largest possible product coefficient plus a sign bit.
    bound = max(abs(x) for x in a) * max(abs(y) for y in b) * min(len(a), len(b))
    w = bound.bit_length() + 2
    mask = (1 << w) - 1
    half = 1 << (w - 1)

    def pack(cs: Sequence[int]) -> int:
        acc = 0
        for c in reversed(cs):
            acc = (acc << w) + c
        return acc

    prod = pack(a) * pack(b)
    n = len(a) + len(b) - 1
    out = [0] * n
    for i in range(n):
        digit = prod & mask
        if digit >= half:
            digit -= 1 << w
        out[i] = digit
        prod = (prod - digit) >> w
    return out


def mul(f: QPoly, g: QPoly) -> QPoly:
    a, b = f.coeffs, g.coeffs
    if not a or not b:
        return QPoly()
    if len(a) * len(b) < _KRONECKER_THRESHOLD:
        return QPoly(_mul_schoolbook(a, b))
    return QPoly(_mul_kronecker(a, b))


_qbinom_lock = threading.Lock()


@lru_cache(maxsize=None)
def _qbinom_cached(n: int, m: int) -> QPoly:
    # Pascal rule [n, m] = [n-1, m-1] + q^m [n-1, m], filled row by row so
    # that deep n never hits the recursion limit.
    if m < 0 or m > n:
        return QPoly()
    if m == 0 or m == n:
        return QPoly([1])
    return add(_qbinom_cached(n - 1, m - 1), shift(_qbinom_cached(n - 1, m), m))


def qbinom(n: int, m: int) -> QPoly:
    """Gaussian binomial coefficient ``[n choose m]_q``; zero when ``m > n``."""
    if n < 0 or m < 0:
        raise ValueError("qbinom needs non-negative arguments")
    if m > n:
        return QPoly()
    m = min(m, n - m)
    with _qbinom_lock:
        for k in range(1, n):
            for j in range(min(m, k) + 1):
                _qbinom_cached(k, j)
        return _qbinom_cached(n, m)


def L_op(f: QPoly) -> QPoly:
    """``f(q) -> q f'(q)``: the coefficient of ``q^n`` is multiplied by ``n``."""
    return QPoly([n * c for n, c in enumerate(f.coeffs)])


def moment_numerator(f: QPoly, k: int) -> int:
    """``L^k(f)`` evaluated at ``q = 1``, i.e. ``sum n^k c_n``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return sum(f.coeffs)
    return sum(n**k * c for n, c in enumerate(f.coeffs) if c)
