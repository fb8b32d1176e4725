"""Closed-form moment expressions in s and r = F_s / F_{s+1}.

A :class:`FibExpr` is ``sum_i c_i(s) r^i`` where every ``c_i`` is an
:class:`SPoly` with rational coefficients.  Distinct coefficient arrays may
describe the same function of integer s, so equality of expressions should
be decided by :func:`agree_on`, not by ``==``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from coremoments.genfunc import fibonacci
from coremoments.quadext import QuadExt


def _trim(cs: Iterable) -> tuple:
    out = list(cs)
    while out and not out[-1]:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class SPoly:
    """Polynomial in s over the rationals; ``coeffs[j]`` multiplies ``s^j``."""

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _trim(Fraction(c) for c in self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __getitem__(self, j: int) -> Fraction:
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else Fraction(0)

    def __add__(self, other: SPoly) -> SPoly:
        n = max(len(self.coeffs), len(other.coeffs))
        return SPoly(tuple(self[j] + other[j] for j in range(n)))

    def __neg__(self) -> SPoly:
        return SPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: SPoly) -> SPoly:
        return self + (-other)

    def __mul__(self, other: SPoly | Fraction | int) -> SPoly:
        if not isinstance(other, SPoly):
            return SPoly(tuple(c * other for c in self.coeffs))
        if not self.coeffs or not other.coeffs:
            return SPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return SPoly(tuple(out))

    __rmul__ = __mul__

    def __call__(self, s):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * s + c
        return acc

    def render(self, var: str = "s") -> str:
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for j in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[j]
            if not c:
                continue
            mono = "" if j == 0 else (var if j == 1 else f"{var}^{j}")
            mag = abs(c)
            if mono and mag == 1:
                term = mono
            elif mono:
                term = f"{mag}*{mono}"
            else:
                term = str(mag)
            if not parts:
                parts.append(("-" if c < 0 else "") + term)
            else:
                parts.append(("- " if c < 0 else "+ ") + term)
        return " ".join(parts)


ONE = SPoly((Fraction(1),))
S = SPoly((Fraction(0), Fraction(1)))


@dataclass(frozen=True)
class FibExpr:
    """``sum_i r_terms[i](s) * (F_s/F_{s+1})^i``."""

    r_terms: tuple[SPoly, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "r_terms", _trim(self.r_terms))

    @classmethod
    def from_AB(cls, A: SPoly, B: SPoly) -> FibExpr:
        """``A(s) F_s/F_{s+1} + B(s)``."""
        return cls((B, A))

    @classmethod
    def constant(cls, c) -> FibExpr:
        return cls((SPoly((Fraction(c),)),))

    @property
    def r_degree(self) -> int:
        return len(self.r_terms) - 1

    @property
    def s_degree(self) -> int:
        return max((p.degree for p in self.r_terms), default=-1)

    def term(self, i: int) -> SPoly:
        return self.r_terms[i] if 0 <= i < len(self.r_terms) else SPoly()

    @property
    def A(self) -> SPoly:
        return self.term(1)

    @property
    def B(self) -> SPoly:
        return self.term(0)

    def __bool__(self) -> bool:
        return bool(self.r_terms)

    def __add__(self, other: FibExpr) -> FibExpr:
        n = max(len(self.r_terms), len(other.r_terms))
        return FibExpr(tuple(self.term(i) + other.term(i) for i in range(n)))

    def __neg__(self) -> FibExpr:
        return FibExpr(tuple(-p for p in self.r_terms))

    def __sub__(self, other: FibExpr) -> FibExpr:
        return self + (-other)

    def __mul__(self, other: FibExpr | Fraction | int) -> FibExpr:
        if not isinstance(other, FibExpr):
            return FibExpr(tuple(p * other for p in self.r_terms))
        if not self.r_terms or not other.r_terms:
            return FibExpr()
        out = [SPoly()] * (len(self.r_terms) + len(other.r_terms) - 1)
        for i, a in enumerate(self.r_terms):
            for j, b in enumerate(other.r_terms):
                out[i + j] = out[i + j] + a * b
        return FibExpr(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> FibExpr:
        out = FibExpr.constant(1)
        for _ in range(e):
            out = out * self
        return out

    def evaluate(self, s: int) -> Fraction:
        """Exact value at integer s >= 1, with r = F_s/F_{s+1}."""
        r = Fraction(fibonacci(s), fibonacci(s + 1))
        acc = Fraction(0)
        for p in reversed(self.r_terms):
            acc = acc * r + p(s)
        return acc

    def substitute_r(self, r: QuadExt) -> list[QuadExt]:
        """Coefficients (ascending in s) of the polynomial obtained by fixing r."""
        n = self.s_degree + 1
        out = [QuadExt() for _ in range(n)]
        rpow = QuadExt(1)
        for p in self.r_terms:
            for j, c in enumerate(p.coeffs):
                out[j] = out[j] + rpow * c
            rpow = rpow * r
        while out and not out[-1]:
            out.pop()
        return out

    # -- text forms -------------------------------------------------------

    def render(self) -> str:
        """Canonical ``c_0(s) + c_1(s)*Fs/Fs1 + c_2(s)*(Fs/Fs1)^2 + ...``."""
        if not self.r_terms:
            return "0"
        parts = []
        for i, p in enumerate(self.r_terms):
            if not p:
                continue
            poly = f"({p.render()})"
            if i == 0:
                parts.append(poly)
            elif i == 1:
                parts.append(f"{poly}*Fs/Fs1")
            else:
                parts.append(f"{poly}*(Fs/Fs1)^{i}")
        return " + ".join(parts)

    def common_denominator(self) -> tuple[int, dict[tuple[int, int], int]]:
        """Rewrite as ``N / (D * F_{s+1}^d)`` with d the r-degree.

        Returns ``(D, {(j, i): c})`` where the numerator is
        ``sum c * s^j * F_s^i * F_{s+1}^(d-i)`` with integer c, and D is the
        smallest positive integer making every c integral.
        """
        D = 1
        for p in self.r_terms:
            for c in p.coeffs:
                D = lcm(D, c.denominator)
        num = {}
        for i, p in enumerate(self.r_terms):
            for j, c in enumerate(p.coeffs):
                if c:
                    num[(j, i)] = int(c * D)
        return D, num

    def render_fraction(self, latex: bool = False) -> str:
        """Single fraction over ``D * F_{s+1}^d``, terms by descending s then F_s power."""
        D, num = self.common_denominator()
        d = max(self.r_degree, 0)
        if latex:
            fs, fs1 = "F_{s}", "F_{s+1}"
        else:
            fs, fs1 = "F[s]", "F[s+1]"

        def power(sym: str, e: int) -> list[str]:
            if e == 0:
                return []
            if latex:
                return [sym if e == 1 else f"{{{sym}}}^{{{e}}}"]
            return [sym if e == 1 else f"{sym}^{e}"]

        sep = r"\," if latex else "*"
        terms = []
        for (j, i) in sorted(num, key=lambda t: (-t[0], -t[1])):
            c = num[(j, i)]
            factors = power("s", j) + power(fs, i) + power(fs1, d - i)
            mag = abs(c)
            body = sep.join(([str(mag)] if mag != 1 or not factors else []) + factors)
            if not terms:
                terms.append(("-" if c < 0 else "") + body)
            else:
                terms.append(("- " if c < 0 else "+ ") + body)
        numerator = " ".join(terms) if terms else "0"
        den = sep.join(([str(D)] if D != 1 or d == 0 else []) + power(fs1, d))
        if latex:
            return rf"\frac{{{numerator}}}{{{den}}}"
        return f"({numerator})/({den})"

    # -- structured form --------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "r_terms": [
                [[str(c.numerator), str(c.denominator)] for c in p.coeffs]
                for p in self.r_terms
            ]
        }

    @classmethod
    def from_dict(cls, data: dict) -> FibExpr:
        return cls(
            tuple(
                SPoly(tuple(Fraction(int(n), int(d)) for n, d in poly))
                for poly in data["r_terms"]
            )
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> FibExpr:
        return cls.from_dict(json.loads(text))


def from_fibonacci_terms(
    terms: dict[tuple[int, int], int], denominator: int, f_degree: int
) -> FibExpr:
    """Build ``sum c s^j F_s^i F_{s+1}^(d-i) / (denominator F_{s+1}^d)``."""
    polys: list[list[Fraction]] = [[] for _ in range(f_degree + 1)]
    for (j, i), c in terms.items():
        row = polys[i]
        row.extend([Fraction(0)] * (j + 1 - len(row)))
        row[j] += Fraction(c, denominator)
    return FibExpr(tuple(SPoly(tuple(r)) for r in polys))


def agree_on(e: FibExpr, f: FibExpr, s_values: Sequence[int]) -> int | None:
    """First s where the two expressions evaluate differently, else None."""
    for s in s_values:
        if e.evaluate(s) != f.evaluate(s):
            return s
    return None
