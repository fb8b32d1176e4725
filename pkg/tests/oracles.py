"""Slow, obviously-correct reference computations used only by the tests.

Nothing here imports the package's enumeration or polynomial code.
"""

from collections import Counter
from itertools import combinations, product


def cells(parts):
    return {(i, j) for i, row in enumerate(parts) for j in range(row)}


def hooks_by_cells(parts):
    """Hook multiset from the set of cells: walk right and down from each box."""
    box = cells(parts)
    out = Counter()
    for (i, j) in box:
        arm = sum(1 for jj in range(j + 1, j + 1000) if (i, jj) in box)
        leg = sum(1 for ii in range(i + 1, i + 1000) if (ii, j) in box)
        out[arm + leg + 1] += 1
    return out


def distinct_partitions_by_subsets(n, max_part=None):
    """Every set of distinct integers in [1, max_part] with sum <= n, decreasing."""
    out = []
    universe = range(1, (n if max_part is None else max_part) + 1)
    for m in range(0, len(universe) + 1):
        if m * (m + 1) // 2 > n:
            break
        for combo in combinations(universe, m):
            if sum(combo) <= n:
                out.append(tuple(sorted(combo, reverse=True)))
    return out


def partitions_in_box(rows, width):
    """Partitions with at most `rows` parts, each at most `width` (zeros dropped)."""
    out = []
    for seq in product(range(width + 1), repeat=rows):
        if all(seq[i] >= seq[i + 1] for i in range(rows - 1)):
            out.append(tuple(x for x in seq if x))
    return out


def size_poly(sizes):
    """Coefficient list of sum q^size."""
    c = Counter(sizes)
    if not c:
        return []
    return [c.get(n, 0) for n in range(max(c) + 1)]


def fib_naive(n):
    a, b = 1, 1
    for _ in range(n - 1):
        a, b = b, a + b
    return a


def poly_mul_naive(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    while out and out[-1] == 0:
        out.pop()
    return out
