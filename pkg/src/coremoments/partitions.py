"""Partitions, hook lengths, and the brute-force enumeration oracle.

Everything here works on explicit Young diagrams (English convention) and is
meant for small s only; the fast generating-function routes live in
:mod:`coremoments.genfunc`.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass
from typing import Iterator

from coremoments.qpoly import QPoly

DEFAULT_BUDGET = 10**7
BUDGET_ENV = "CORE_MOMENTS_BUDGET"


class WorkBudgetExceeded(RuntimeError):
    """Raised when a brute-force enumeration examines too many partitions."""


@dataclass(frozen=True, order=True)
class Partition:
    """Weakly decreasing tuple of positive parts."""

    parts: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        if any(not isinstance(x, int) or x < 1 for x in parts):
            raise ValueError(f"parts must be positive integers: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts must be weakly decreasing: {parts}")

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def conjugate(self) -> tuple[int, ...]:
        if not self.parts:
            return ()
        return tuple(sum(1 for x in self.parts if x >= j) for j in range(1, self.parts[0] + 1))

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


def _as_partition(p: Partition | tuple[int, ...] | list[int]) -> Partition:
    return p if isinstance(p, Partition) else Partition(tuple(p))


def hook_lengths(p: Partition | tuple[int, ...]) -> Counter[int]:
    """Multiset of hook lengths, one per box.

    The hook of box (i, j) is its arm ``lambda_i - j`` plus its leg (number of
    rows below reaching column j) plus one.
    """
    p = _as_partition(p)
    cols = p.conjugate()
    hooks: Counter[int] = Counter()
    for i, row in enumerate(p.parts):
        for j in range(row):
            hooks[(row - j - 1) + (cols[j] - i - 1) + 1] += 1
    return hooks


def perimeter(p: Partition | tuple[int, ...]) -> int:
    """Largest hook length; 0 for the empty partition."""
    p = _as_partition(p)
    if not p.parts:
        return 0
    return p.parts[0] + len(p.parts) - 1


def is_t_core(p: Partition | tuple[int, ...], t: int) -> bool:
    if t < 1:
        raise ValueError("t must be positive")
    return t not in hook_lengths(p)


def has_distinct_parts(p: Partition | tuple[int, ...]) -> bool:
    parts = _as_partition(p).parts
    return all(parts[i] > parts[i + 1] for i in range(len(parts) - 1))


def _check_s(s: int) -> None:
    if not isinstance(s, int) or s < 1:
        raise ValueError(f"s must be a positive integer, got {s!r}")


def resolve_budget(budget: int | None = None) -> int:
    if budget is not None:
        return budget
    env = os.environ.get(BUDGET_ENV)
    return int(env) if env else DEFAULT_BUDGET


class _Counter:
    def __init__(self, budget: int):
        self.budget = budget
        self.seen = 0

    def tick(self) -> None:
        self.seen += 1
        if self.seen > self.budget:
            raise WorkBudgetExceeded(
                f"brute-force enumeration exceeded budget of {self.budget} partitions"
            )


def _distinct_lex(max_part: int, ok, prefix: tuple[int, ...], counter: _Counter):
    # Children of prefix in increasing lexicographic order: the prefix itself
    # precedes all its extensions, and extensions by a smaller next part come first.
    yield prefix
    upper = prefix[-1] - 1 if prefix else max_part
    for x in range(1, upper + 1):
        cand = prefix + (x,)
        counter.tick()
        if ok(cand):
            yield from _distinct_lex(max_part, ok, cand, counter)


def enumerate_Ps(s: int, budget: int | None = None) -> list[Partition]:
    """Distinct-part partitions with perimeter < s, lexicographically ascending.

    The empty partition comes first.
    """
    _check_s(s)
    counter = _Counter(resolve_budget(budget))
    # perimeter = first part + number of parts - 1 only grows along a branch
    # once the first part is fixed, so pruning on it is exact.
    ok = lambda c: c[0] + len(c) - 1 < s  # noqa: E731
    return [Partition(c) for c in _distinct_lex(s - 1, ok, (), counter)]


def distinct_partitions_up_to(n: int, budget: int | None = None) -> list[Partition]:
    """All distinct-part partitions of size at most n."""
    counter = _Counter(resolve_budget(budget))
    ok = lambda c: sum(c) <= n  # noqa: E731
    return [Partition(c) for c in _distinct_lex(n, ok, (), counter)]


def brute_force_gf(s: int, budget: int | None = None) -> QPoly:
    """``sum q^|p|`` over :func:`enumerate_Ps` (perimeter filter)."""
    coeffs = Counter(p.size for p in enumerate_Ps(s, budget))
    return _counter_to_poly(coeffs)


def hook_size_cutoff(s: int) -> int:
    """Size window searched by :func:`brute_force_gf_hooks`.

    ``s(s-1)/2``, the size of the staircase ``(s-1, ..., 1)``.  Roughly three
    times the largest size that actually occurs, so the hook test also sees a
    wide band of larger partitions that must all be rejected.
    """
    return s * (s - 1) // 2


def brute_force_gf_hooks(s: int, max_size: int | None = None, budget: int | None = None) -> QPoly:
    """Hook-filter variant: distinct-part partitions avoiding hooks s and s+1.

    Searches every distinct-part partition up to ``max_size`` (default
    :func:`hook_size_cutoff`) and tests the core property on hook lengths
    directly, without using perimeters.
    """
    _check_s(s)
    if max_size is None:
        max_size = hook_size_cutoff(s)
    coeffs: Counter[int] = Counter()
    for p in distinct_partitions_up_to(max_size, budget):
        hooks = hook_lengths(p)
        if s not in hooks and s + 1 not in hooks:
            coeffs[p.size] += 1
    return _counter_to_poly(coeffs)


def brute_force_gf_hooks_table(max_s: int, budget: int | None = None) -> dict[int, QPoly]:
    """Hook-filter polynomials for every s up to max_s from one shared pass.

    Each s still uses its own window :func:`hook_size_cutoff`; only the
    enumeration and hook computation are shared.
    """
    _check_s(max_s)
    cutoffs = {s: hook_size_cutoff(s) for s in range(1, max_s + 1)}
    tables: dict[int, Counter[int]] = {s: Counter() for s in cutoffs}
    for p in distinct_partitions_up_to(max(cutoffs.values()), budget):
        hooks = hook_lengths(p)
        n = p.size
        for s, cut in cutoffs.items():
            if n <= cut and s not in hooks and s + 1 not in hooks:
                tables[s][n] += 1
    return {s: _counter_to_poly(c) for s, c in tables.items()}


def _counter_to_poly(coeffs: Counter[int]) -> QPoly:
    if not coeffs:
        return QPoly()
    out = [0] * (max(coeffs) + 1)
    for n, c in coeffs.items():
        out[n] = c
    return QPoly(out)
