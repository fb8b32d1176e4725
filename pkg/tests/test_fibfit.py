from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from coremoments.fibexpr import FibExpr, SPoly, agree_on, from_fibonacci_terms
from coremoments.fibfit import (
    NoFit,
    Underdetermined,
    default_holdout,
    default_sample,
    fit_moments,
    fit_raw_moment,
    fit_raw_moment_detailed,
    limit_standardized,
    normal_moment,
    symbolic_central,
    validate_fit,
)
from coremoments.moments import central_moment, raw_moment
from coremoments.quadext import INV_PHI, QuadExt

F = Fraction

# keys are (power of s, power of F_s); the rest of the F-degree is F_{s+1}
MEAN_TERMS = {(2, 0): 5, (1, 1): -6, (1, 0): 7, (0, 1): -6}
VAR_TERMS = {
    (3, 1): 20, (3, 0): 10, (2, 2): -27, (2, 1): 33, (2, 0): 57,
    (1, 2): -54, (1, 1): -32, (1, 0): 65, (0, 2): -27, (0, 1): -45,
}


@pytest.fixture(scope="module")
def fits():
    return fit_moments(8)


def test_mean_fit_matches_theorem():
    e = fit_raw_moment(1)
    assert e.A == SPoly((F(-6, 50), F(-6, 50)))
    assert e.B == SPoly((0, F(7, 50), F(5, 50)))
    assert e.common_denominator() == (50, MEAN_TERMS)
    assert e.evaluate(2) == F(1, 2)


def test_zeroth_moment_fit():
    e = fit_raw_moment(0)
    assert e.A == SPoly() and e.B == SPoly((1,))


def test_explicit_degree_too_low_is_no_fit():
    with pytest.raises(NoFit):
        fit_raw_moment(2, degree_bound=2)


def test_auto_degree_escalates_from_low_start():
    fit = fit_raw_moment_detailed(1, min_degree=0)
    assert fit.degree == 2
    assert fit.expr == fit_raw_moment(1)
    with pytest.raises(NoFit):
        fit_raw_moment_detailed(3, min_degree=0, max_degree=4)


def test_underdetermined_sample():
    with pytest.raises(Underdetermined):
        fit_raw_moment(1, sample_range=range(2, 6))


def test_sample_must_start_at_two():
    with pytest.raises(ValueError):
        fit_raw_moment(1, sample_range=range(1, 20))


def test_fit_and_holdout_identity(fits):
    for k in range(1, 9):
        fit = fit_raw_moment_detailed(k)
        for s in fit.sample:
            assert fit.expr.evaluate(s) == raw_moment(s, k)
        hold = range(max(fit.sample) + 1, 71)
        v = validate_fit(fit.expr, k, hold, "raw", fit.sample)
        assert v.passed, v.summary()
        assert fits.raw[k - 1] == fit.expr


def test_validate_theorem_mean_and_variance():
    mean = from_fibonacci_terms(MEAN_TERMS, 50, 1)
    var = from_fibonacci_terms(VAR_TERMS, 1875, 2)
    v1 = validate_fit(mean, 1, range(41, 71))
    v2 = validate_fit(var, 2, range(41, 71), kind="central")
    assert v1.passed and v2.passed
    assert v1.count == 30
    assert "identity confirmed for all s in [41, 70]" in v1.summary()


def test_validate_catches_perturbation():
    e = fit_raw_moment(1)
    bad = e + FibExpr.constant(1)
    v = validate_fit(bad, 1, range(30, 40))
    assert not v.passed
    s, want, got = v.mismatch
    assert s == 30 and got == want + 1
    assert "s=30" in v.summary()


def test_validate_rejects_overlap():
    with pytest.raises(ValueError):
        validate_fit(fit_raw_moment(1), 1, range(5, 10), sample=range(2, 7))


def test_symbolic_central(fits):
    assert symbolic_central(1, fits.raw) == FibExpr()
    var = from_fibonacci_terms(VAR_TERMS, 1875, 2)
    assert agree_on(fits.central[2], var, range(2, 71)) is None
    assert fits.central[2].common_denominator() == (1875, VAR_TERMS)
    for k in range(3, 7):
        assert fits.central[k].r_degree <= k
        for s in (2, 5, 17, 44):
            assert fits.central[k].evaluate(s) == central_moment(s, k)


def test_third_central_leading_term(fits):
    coeffs = fits.central[3].substitute_r(INV_PHI)
    assert len(coeffs) - 1 == 4
    phi = 1 / INV_PHI
    paper = F(-3, 31250) * (65 * phi**3 - 40 * phi**2 - 40 * phi) / phi**3
    assert coeffs[4] == paper


def test_third_central_full_asymptotic(fits):
    # every s-power of the displayed phi-polynomial, not just the leading one
    phi = 1 / INV_PHI
    paper = {
        4: 65 * phi**3 - 40 * phi**2 - 40 * phi,
        3: 222 * phi**3 - 218 * phi**2 - 106 * phi + 36,
        2: -65 * phi**3 - 338 * phi**2 - 2 * phi + 108,
        1: -390 * phi**3 + 110 * phi**2 + 154 * phi + 108,
        0: 270 * phi**2 + 90 * phi + 36,
    }
    coeffs = fits.central[3].substitute_r(INV_PHI)
    for j, c in paper.items():
        assert coeffs[j] == F(-3, 31250) * c / phi**3


@pytest.mark.parametrize("k, want", [(1, 0), (2, 1), (3, 0), (6, 15), (8, 105), (10, 945), (16, 2027025)])
def test_normal_moment(k, want):
    assert normal_moment(k) == want


def test_limits(fits):
    for k in range(2, 9):
        lim = fits.limit(k)
        assert not lim.diverges
        assert lim.value == normal_moment(k)
    assert fits.limit(3).central_degree == 4


def test_limit_degree_cases():
    var = FibExpr((SPoly((0, 0, 0, 1)),))  # s^3
    grow = FibExpr((SPoly((0,) * 7 + (1,)),))  # s^7 against (s^3)^2
    assert limit_standardized(4, grow, var).diverges
    assert limit_standardized(4, FibExpr((SPoly((0,) * 6 + (2,)),)), var).value == 2
    assert limit_standardized(3, FibExpr((SPoly((0,) * 4 + (1,)),)), var).value == 0
    with pytest.raises(ValueError):
        limit_standardized(2, var, -var)


def test_fibexpr_json_roundtrip(fits):
    for e in fits.central[:6]:
        assert FibExpr.from_json(e.to_json()) == e
    d = fit_raw_moment(1).to_dict()
    assert d["r_terms"][1] == [["-3", "25"], ["-3", "25"]]


def test_render_forms():
    e = fit_raw_moment(1)
    assert e.render_fraction() == "(5*s^2*F[s+1] - 6*s*F[s] + 7*s*F[s+1] - 6*F[s])/(50*F[s+1])"
    assert e.render() == "(1/10*s^2 + 7/50*s) + (-3/25*s - 3/25)*Fs/Fs1"
    assert FibExpr().render() == "0"


small_fracs = st.fractions(min_value=-20, max_value=20, max_denominator=9)
fib_exprs = st.lists(st.lists(small_fracs, max_size=4).map(lambda c: SPoly(tuple(c))), max_size=3).map(
    lambda ps: FibExpr(tuple(ps))
)


@given(fib_exprs, fib_exprs, st.integers(1, 40))
def test_fibexpr_arithmetic_is_pointwise(e, f, s):
    assert (e * f).evaluate(s) == e.evaluate(s) * f.evaluate(s)
    assert (e + f).evaluate(s) == e.evaluate(s) + f.evaluate(s)


@given(fib_exprs)
def test_common_denominator_roundtrip(e):
    D, terms = e.common_denominator()
    back = from_fibonacci_terms(terms, D, max(e.r_degree, 0))
    assert back == e


@given(fib_exprs)
def test_substitution_matches_float_limit(e):
    coeffs = e.substitute_r(INV_PHI)
    s = 30
    approx = sum(float(c) * s**j for j, c in enumerate(coeffs)) if coeffs else 0.0
    assert float(e.evaluate(s)) == pytest.approx(approx, rel=1e-9, abs=1e-9)


def test_default_ranges():
    assert list(default_sample(2)) == list(range(2, 13))
    assert default_holdout(2)[0] == 13 and len(default_holdout(2)) == 20
