from collections import Counter

import pytest

from coremoments.genfunc import (
    BASE_CASES,
    G_kl,
    Gs,
    Gs_closed,
    Gs_recurrence,
    Gs_sum,
    build_table,
    closed_form_degree,
    distinctify_bijection,
    fibonacci,
    verify_all_methods,
)
from coremoments.partitions import Partition, enumerate_Ps
from coremoments.qpoly import QPoly, qbinom, shift
from oracles import fib_naive, partitions_in_box, size_poly

G5 = QPoly([1, 1, 1, 2, 2, 1])


@pytest.mark.parametrize("n, f", [(1, 1), (2, 1), (5, 5), (10, 55), (50, 12586269025)])
def test_fibonacci(n, f):
    assert fibonacci(n) == f


def test_fibonacci_matches_naive():
    assert [fibonacci(n) for n in range(1, 300)] == [fib_naive(n) for n in range(1, 300)]
    with pytest.raises(ValueError):
        fibonacci(0)


def test_G_kl_examples():
    assert G_kl(2, 1) == QPoly.monomial(2)
    assert G_kl(1, 2) == QPoly()
    assert G_kl(3, 2) == QPoly([0, 0, 0, 0, 1, 1])


def test_G_kl_against_enumeration():
    # partitions with l distinct parts, largest exactly k, from the s=12 list
    for k in range(1, 9):
        for l in range(1, 5):
            sizes = [p.size for p in enumerate_Ps(k + l + 1) if p.parts[:1] == (k,) and len(p) == l]
            assert G_kl(k, l) == QPoly(size_poly(sizes))


@pytest.mark.parametrize("method", [Gs_sum, Gs_closed, Gs_recurrence])
def test_base_cases_every_method(method):
    for s, g in BASE_CASES.items():
        assert method(s) == g


def test_closed_s3_by_hand():
    # m=0 gives 1, m=1 gives q [2 choose 1]_q, m=2 vanishes
    assert Gs_closed(3) == QPoly([1]) + shift(qbinom(2, 1), 1)


def test_recurrence_step():
    assert Gs_recurrence(5) == G5
    assert G5(1) == 8


def test_s0_rejected():
    for f in (Gs_sum, Gs_closed, Gs_recurrence):
        with pytest.raises(ValueError):
            f(0)


@pytest.mark.parametrize("s", range(1, 41))
def test_three_fast_methods_agree(s):
    r = Gs_recurrence(s)
    assert Gs_sum(s) == r
    assert Gs_closed(s) == r


def test_counts_are_fibonacci():
    table = build_table(60)
    assert table.check_counts() == []
    assert all(table[s][0] == 1 and min(table[s].coeffs) >= 0 for s in range(1, 61))


def test_table_methods():
    assert build_table(10, "closed").polys == build_table(10).polys
    with pytest.raises(IndexError):
        build_table(3)[4]


@pytest.mark.parametrize("s", range(1, 13))
def test_degree_is_largest_partition(s):
    assert Gs(s).degree == max(p.size for p in enumerate_Ps(s))


def test_closed_form_degree():
    for s in range(1, 61):
        assert Gs_closed(s).degree == closed_form_degree(s)


def test_distinctify_examples():
    assert distinctify_bijection((), 2) == Partition((2, 1))
    assert distinctify_bijection((3, 3), 2) == Partition((5, 4))
    assert distinctify_bijection((1,), 2) == Partition((3, 1))
    with pytest.raises(ValueError):
        distinctify_bijection((1, 1, 1), 2)
    with pytest.raises(ValueError):
        distinctify_bijection((4,), 2, n=5)


@pytest.mark.parametrize("s", range(1, 11))
def test_bijection_rebuilds_closed_form(s):
    total = Counter()
    for m in range(1, s // 2 + 1):
        n = s - m
        box = partitions_in_box(m, n - m)
        images = [distinctify_bijection(p, m, n) for p in box]
        assert len(set(images)) == len(images)
        for p, img in zip(box, images):
            assert img.size == sum(p) + m * (m + 1) // 2
            assert len(img) == m and img.parts[0] <= n
            assert len(set(img.parts)) == m
        total.update(img.size for img in images)
        assert QPoly(size_poly(img.size for img in images)) == shift(qbinom(n, m), m * (m + 1) // 2)
    total[0] += 1
    assert QPoly(size_poly(total.elements())) == Gs_closed(s)


def test_verify_small():
    rep = verify_all_methods(4, 4)
    assert rep.passed
    assert verify_all_methods(1, 1).passed
    with pytest.raises(ValueError):
        verify_all_methods(3, 5)


def test_verify_reports_first_difference(monkeypatch):
    import coremoments.genfunc as gf

    bad = QPoly([1, 1, 1, 2, 2, 7])
    monkeypatch.setattr(gf, "Gs_sum", lambda s: bad if s == 5 else Gs_closed(s))
    rep = gf.verify_all_methods(5, 3)
    assert not rep.passed
    (fail,) = rep.failures
    assert fail.s == 5 and "q^5" in fail.detail and "7 vs 1" in fail.detail
