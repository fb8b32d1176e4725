from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from coremoments.qpoly import (
    QPoly,
    L_op,
    _mul_kronecker,
    _mul_schoolbook,
    add,
    moment_numerator,
    mul,
    qbinom,
    shift,
)
from oracles import partitions_in_box, poly_mul_naive, size_poly

coeff_lists = st.lists(st.integers(-(10**30), 10**30), max_size=60)


def test_basic_ops():
    assert add(QPoly([1, 1]), QPoly([0, 1])) == QPoly([1, 2])
    assert mul(QPoly([1, 1]), QPoly([1, 1])) == QPoly([1, 2, 1])
    assert shift(QPoly([1, 1]), 3) == QPoly([0, 0, 0, 1, 1])


def test_canonical_form():
    assert QPoly([1, 2, 0, 0]).coeffs == (1, 2)
    assert QPoly([0, 0]).is_zero()
    assert QPoly().degree == -1
    assert QPoly([1, -1]) + QPoly([-1, 1]) == QPoly()


def test_render():
    assert QPoly([1, 1, 1, 2]).render() == "1 + q + q^2 + 2*q^3"
    assert QPoly([1]).render() == "1"
    assert QPoly().render() == "0"
    assert QPoly([0, -1, 3]).render() == "-q + 3*q^2"


def test_rejects_float_coefficients():
    with pytest.raises(TypeError):
        QPoly([1.0])


@given(coeff_lists, coeff_lists)
def test_mul_matches_naive(a, b):
    assert mul(QPoly(a), QPoly(b)) == QPoly(poly_mul_naive(a, b))


@given(st.lists(st.integers(-(10**40), 10**40), min_size=1, max_size=80),
       st.lists(st.integers(-(10**40), 10**40), min_size=1, max_size=80))
def test_kronecker_matches_schoolbook(a, b):
    assert _mul_kronecker(a, b) == _mul_schoolbook(a, b)


def test_kronecker_large_path():
    a = [(-1) ** i * (i + 1) ** 20 for i in range(100)]
    b = [i**7 - 3 for i in range(90)]
    assert mul(QPoly(a), QPoly(b)) == QPoly(poly_mul_naive(a, b))


def test_qbinom_box_example():
    assert qbinom(4, 2) == QPoly([1, 1, 2, 1, 1])
    assert qbinom(4, 2) == QPoly(size_poly(sum(p) for p in partitions_in_box(2, 2)))


@pytest.mark.parametrize("n", range(0, 8))
def test_qbinom_zero_and_overflow(n):
    assert qbinom(n, 0) == QPoly([1])
    assert qbinom(n, n + 1) == QPoly()


@pytest.mark.parametrize("n, m", [(n, m) for n in range(0, 9) for m in range(0, n + 1)])
def test_qbinom_counts_box_partitions(n, m):
    sizes = [sum(p) for p in partitions_in_box(m, n - m)]
    assert qbinom(n, m) == QPoly(size_poly(sizes))


@given(st.integers(0, 40), st.data())
def test_qbinom_properties(n, data):
    m = data.draw(st.integers(0, n))
    g = qbinom(n, m)
    assert g.degree == m * (n - m)
    assert all(c > 0 for c in g.coeffs)
    assert g(1) == comb(n, m)
    assert g == qbinom(n, n - m)
    d = m * (n - m)
    assert all(g[i] == g[d - i] for i in range(d + 1))


def test_qbinom_deep_n_no_recursion_error():
    assert qbinom(600, 2)(1) == comb(600, 2)


def test_L_op_examples():
    assert L_op(QPoly([1, 1])) == QPoly([0, 1])
    assert L_op(L_op(QPoly.monomial(3))) == QPoly.monomial(3, 9)
    assert L_op(QPoly([1, 1, 1, 2])) == QPoly([0, 1, 2, 6])


def test_moment_numerator_examples():
    assert moment_numerator(QPoly([1, 1]), 1) == 1
    assert moment_numerator(QPoly([1, 1, 1, 2]), 1) == 9
    assert moment_numerator(QPoly([3, 4, 5]), 0) == 12


@given(st.lists(st.integers(-1000, 1000), max_size=51), st.integers(0, 5))
def test_moment_numerator_is_iterated_L(coeffs, k):
    f = QPoly(coeffs)
    g = f
    for _ in range(k):
        g = L_op(g)
    assert moment_numerator(f, k) == g(1)
