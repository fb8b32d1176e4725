"""Fitting, checking, and taking limits of closed-form moment expressions.

Raw moments are fitted to ``A(s) F_s/F_{s+1} + B(s)``.  Multiplying through
by F_{s+1} turns each sample point into the integer equation

    sum_j a_j s^j F_s + sum_j b_j s^j F_{s+1} = L^k(G_s)(1)

so the whole fit is an exact integer linear system.  Every identity reported
here is checked on a finite range of s only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from coremoments.fibexpr import FibExpr, SPoly, agree_on
from coremoments.genfunc import fibonacci
from coremoments.linsolve import InconsistentSystem, RankDeficient, solve_exact
from coremoments.moments import central_moment, power_sum, raw_moment
from coremoments.quadext import INV_PHI, QuadExt

FIRST_S = 2
EXTRA_SAMPLES = 5
DEFAULT_HOLDOUT = 20


class NoFit(ValueError):
    """No A, B up to the allowed degree reproduce the data."""


class Underdetermined(ValueError):
    """The sample does not pin down a unique A, B."""


def default_sample(degree: int, start: int = FIRST_S) -> range:
    return range(start, start + 2 * (degree + 1) + EXTRA_SAMPLES)


def default_holdout(degree: int, length: int = DEFAULT_HOLDOUT) -> range:
    return range(default_sample(degree).stop, default_sample(degree).stop + length)


def _fit_at_degree(k: int, D: int, sample: Sequence[int]) -> FibExpr:
    rows, rhs = [], []
    for s in sample:
        fs, fs1 = fibonacci(s), fibonacci(s + 1)
        spow = [s**j for j in range(D + 1)]
        rows.append([p * fs for p in spow] + [p * fs1 for p in spow])
        rhs.append(power_sum(s, k))
    x = solve_exact(rows, rhs)
    return FibExpr.from_AB(SPoly(tuple(x[: D + 1])), SPoly(tuple(x[D + 1 :])))


@dataclass(frozen=True)
class Fit:
    expr: FibExpr
    degree: int
    sample: tuple[int, ...]


def fit_raw_moment(
    k: int,
    degree_bound: int | str = "auto",
    sample_range: Sequence[int] | None = None,
    max_degree: int | None = None,
    min_degree: int | None = None,
) -> FibExpr:
    """Fit ``E[X_s^k] = A(s) F_s/F_{s+1} + B(s)`` exactly.

    With ``degree_bound='auto'`` the common degree bound of A and B starts at
    2k and is raised until the sample admits a consistent solution, up to
    ``max_degree`` (default 2k + 4).  ``min_degree`` overrides the start.
    """
    return fit_raw_moment_detailed(k, degree_bound, sample_range, max_degree, min_degree).expr


def fit_raw_moment_detailed(
    k: int,
    degree_bound: int | str = "auto",
    sample_range: Sequence[int] | None = None,
    max_degree: int | None = None,
    min_degree: int | None = None,
) -> Fit:
    if k < 0:
        raise ValueError("k must be non-negative")
    if degree_bound == "auto":
        lo = 2 * k if min_degree is None else min_degree
        hi = max_degree if max_degree is not None else 2 * k + 4
        degrees = range(lo, hi + 1)
    else:
        degrees = range(int(degree_bound), int(degree_bound) + 1)

    last_error: Exception | None = None
    for D in degrees:
        sample = list(sample_range) if sample_range is not None else list(default_sample(D))
        if any(s < FIRST_S for s in sample):
            raise ValueError(f"sample s values must be >= {FIRST_S}")
        if len(set(sample)) < 2 * (D + 1):
            raise Underdetermined(
                f"{len(set(sample))} sample points cannot fix {2 * (D + 1)} unknowns (degree {D})"
            )
        try:
            return Fit(_fit_at_degree(k, D, sample), D, tuple(sample))
        except InconsistentSystem as exc:
            last_error = exc
        except RankDeficient as exc:
            raise Underdetermined(f"rank-deficient system at degree {D}: {exc}") from exc
    raise NoFit(f"no fit for moment {k} with degree <= {degrees[-1]}: {last_error}")


@dataclass
class Validation:
    k: int
    kind: str
    checked: list[int] = field(default_factory=list)
    mismatch: tuple[int, Fraction, Fraction] | None = None

    @property
    def passed(self) -> bool:
        return self.mismatch is None and bool(self.checked)

    @property
    def count(self) -> int:
        return len(set(self.checked))

    def summary(self) -> str:
        if self.mismatch:
            s, want, got = self.mismatch
            return f"moment {self.k} ({self.kind}): mismatch at s={s}: expected {want}, expression gives {got}"
        lo, hi = min(self.checked), max(self.checked)
        return (
            f"moment {self.k} ({self.kind}): identity confirmed for all s in [{lo}, {hi}] "
            f"({self.count} values); C-finite sufficiency bound not computed"
        )


def validate_fit(
    e: FibExpr,
    k: int,
    holdout: Sequence[int],
    kind: str = "raw",
    sample: Sequence[int] = (),
) -> Validation:
    """Compare ``e`` exactly against computed moments at every holdout s.

    ``sample`` lists fitting points to exclude from the holdout; an overlap
    is a usage error.
    """
    if kind not in ("raw", "central"):
        raise ValueError("kind must be 'raw' or 'central'")
    if set(holdout) & set(sample):
        raise ValueError("holdout overlaps the fitting sample")
    exact = raw_moment if kind == "raw" else central_moment
    report = Validation(k, kind)
    for s in holdout:
        want = exact(s, k)
        got = e.evaluate(s)
        if want != got:
            report.mismatch = (s, want, got)
            break
        report.checked.append(s)
    return report


def symbolic_central(k: int, raw_fits: Sequence[FibExpr]) -> FibExpr:
    """k-th central moment from raw fits; ``raw_fits[j-1]`` is E[X_s^j]."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return FibExpr.constant(1)
    if len(raw_fits) < k:
        raise ValueError(f"need raw fits for moments 1..{k}")
    raw = [FibExpr.constant(1)] + list(raw_fits[:k])
    neg_mu = -raw[1]
    powers = [FibExpr.constant(1)]
    for _ in range(k):
        powers.append(powers[-1] * neg_mu)
    total = FibExpr()
    for j in range(k + 1):
        total = total + powers[k - j] * raw[j] * comb(k, j)
    return total


@dataclass(frozen=True)
class Limit:
    """Limit of the k-th standardized central moment as s -> infinity."""

    k: int
    value: QuadExt | None
    central_degree: int
    variance_degree: int

    @property
    def diverges(self) -> bool:
        return self.value is None

    def __str__(self) -> str:
        return "diverges" if self.value is None else str(self.value)


def leading(coeffs: list[QuadExt]) -> tuple[int, QuadExt]:
    if not coeffs:
        return -1, QuadExt()
    return len(coeffs) - 1, coeffs[-1]


def limit_standardized(k: int, central_k: FibExpr, variance: FibExpr) -> Limit:
    """Compare growth of central_k against variance^(k/2) with r -> 1/phi.

    F_s/F_{s+1} differs from 1/phi by an exponentially small amount, so the
    polynomial in s left after the substitution carries the full power-law
    behaviour.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    d, a = leading(central_k.substitute_r(INV_PHI))
    dv, v = leading(variance.substitute_r(INV_PHI))
    if dv < 0 or not v.is_positive():
        raise ValueError(f"variance leading coefficient {v} is not positive")
    if d < 0 or 2 * d < dv * k:
        return Limit(k, QuadExt(), d, dv)
    if 2 * d > dv * k:
        return Limit(k, None, d, dv)
    if k % 2:
        # 2d = dv*k with odd k forces dv even; the limit would need sqrt(v)
        raise ValueError("odd-k limit with matching growth needs a square root")
    return Limit(k, a / v ** (k // 2), d, dv)


def normal_moment(k: int) -> int:
    """k-th moment of the standard normal: 0 for odd k, (k-1)!! for even k."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k % 2:
        return 0
    out = 1
    for j in range(k - 1, 0, -2):
        out *= j
    return out


@dataclass
class MomentFits:
    """Raw fits for moments 1..max_k with their derived central expressions."""

    max_k: int
    raw: list[FibExpr]
    central: list[FibExpr]

    def limit(self, k: int) -> Limit:
        return limit_standardized(k, self.central[k], self.central[2])


def fit_moments(max_k: int) -> MomentFits:
    raw = [fit_raw_moment(k) for k in range(1, max_k + 1)]
    central = [symbolic_central(k, raw) for k in range(max_k + 1)]
    return MomentFits(max_k, raw, central)


def check_identity(e: FibExpr, f: FibExpr, s_values: Sequence[int]) -> int | None:
    return agree_on(e, f, s_values)
