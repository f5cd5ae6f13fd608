import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from motzeta.errors import NonIntegralCoefficient, NonUnitConstantTerm
from motzeta.graded import GRADED, GRADED_LAMBDA, GradedElement, S
from motzeta.series import (
    QQ,
    ZZ,
    RationalForm,
    TruncatedSeries,
    exp_from_log_counts,
    fit_rational_form,
    from_polynomial,
    lambda_t,
    one_series,
    series_inverse,
    series_mul,
)


def zz(*coeffs):
    return TruncatedSeries(ZZ, coeffs)


def test_mul_difference_of_squares():
    assert series_mul(zz(1, 1, 0, 0), zz(1, -1, 0, 0)) == zz(1, 0, -1, 0)


def test_mul_unit_law():
    a = zz(3, -1, 4, 1, -5)
    assert series_mul(a, one_series(ZZ, 4)) == a


def test_mul_geometric_inverse():
    assert series_mul(zz(1, 1, 1, 1, 1, 1), zz(1, -1, 0, 0, 0, 0)) == zz(1, 0, 0, 0, 0, 0)


def test_mul_horizon_is_min():
    assert series_mul(zz(1, 2, 3, 4), zz(1, 1)).horizon == 1


def test_inverse_geometric():
    assert series_inverse(zz(1, -1, 0, 0, 0)) == zz(1, 1, 1, 1, 1)


def test_inverse_of_one():
    assert series_inverse(one_series(ZZ, 6)) == one_series(ZZ, 6)


def test_inverse_over_graded_ring():
    a = from_polynomial(GRADED, [GradedElement([1]), S], 3)
    inv = series_inverse(a)
    assert inv.coeffs == (GradedElement([1]), -S, S * S, -(S * S * S))
    # multiplying back is the independent check
    assert series_mul(a, inv) == one_series(GRADED, 3)


def test_inverse_rejects_non_unit():
    with pytest.raises(NonUnitConstantTerm):
        series_inverse(zz(2, 1))


def test_lambda_t_of_zero_and_one():
    assert lambda_t(GradedElement(), GRADED_LAMBDA, 5) == one_series(GRADED, 5)
    ones = lambda_t(GradedElement([1]), GRADED_LAMBDA, 6)
    assert ones.coeffs == (GradedElement([1]),) * 7


def test_lambda_t_low_coefficients():
    x = GradedElement([2, -1, 3])
    series = lambda_t(x, GRADED_LAMBDA, 4)
    assert series[0] == 1 and series[1] == x


def _euler_product_counts(counts, horizon):
    """|Sym^n X(F_q)| from closed-point counts: prod_e (1 - t^e)^(-a_e)."""

    def mobius(n):
        result, m, p = 1, n, 2
        while p * p <= m:
            if m % p == 0:
                m //= p
                if m % p == 0:
                    return 0
                result = -result
            p += 1
        return -result if m > 1 else result

    out = [1] + [0] * horizon
    for e in range(1, horizon + 1):
        a_e = sum(mobius(e // d) * counts[d - 1] for d in range(1, e + 1) if e % d == 0)
        assert a_e % e == 0
        a_e //= e
        assert a_e >= 0
        if a_e == 0:
            continue
        # multiply by (1 - t^e)^(-a_e) = sum_k C(a_e + k - 1, k) t^(ek)
        factor = [math.comb(a_e + k - 1, k) for k in range(horizon // e + 1)]
        out = [sum(factor[k] * out[n - e * k] for k in range(n // e + 1)) for n in range(horizon + 1)]
    return out


def test_exp_counts_projective_line_over_f2():
    series = exp_from_log_counts([2**m + 1 for m in range(1, 5)], 4)
    assert series.ring == ZZ
    assert list(series) == [1, 3, 7, 15, 31]
    assert list(series) == _euler_product_counts([2**m + 1 for m in range(1, 5)], 4)


def test_exp_counts_zero():
    assert list(exp_from_log_counts([0] * 6, 6)) == [1] * 1 + [0] * 6


def test_exp_counts_affine_line():
    assert list(exp_from_log_counts([3**m for m in range(1, 9)], 8)) == [3**n for n in range(9)]


def test_exp_counts_rejects_inconsistent_data():
    with pytest.raises(NonIntegralCoefficient):
        exp_from_log_counts([1, 0], 2)


def test_exp_counts_horizon_guard():
    with pytest.raises(ValueError):
        exp_from_log_counts([1, 2], 3)


@settings(max_examples=60, deadline=None)
@given(q=st.sampled_from([2, 3, 4, 5]), hodge=st.lists(st.integers(0, 3), min_size=1, max_size=4))
def test_exp_counts_matches_euler_product(q, hodge):
    # counts of a variety whose Frobenius eigenvalues are powers of q
    counts = [sum(h * q ** (i * m) for i, h in enumerate(hodge)) for m in range(1, 9)]
    assert list(exp_from_log_counts(counts, 8)) == _euler_product_counts(counts, 8)


@settings(max_examples=60, deadline=None)
@given(
    q=st.sampled_from([2, 3]),
    x=st.lists(st.integers(0, 2), min_size=1, max_size=3),
    y=st.lists(st.integers(0, 2), min_size=1, max_size=3),
)
def test_exp_counts_multiplicative_on_disjoint_union(q, x, y):
    def counts(h):
        return [sum(c * q ** (i * m) for i, c in enumerate(h)) for m in range(1, 9)]

    cx, cy = counts(x), counts(y)
    union = [a + b for a, b in zip(cx, cy)]
    assert exp_from_log_counts(union, 8) == series_mul(exp_from_log_counts(cx, 8), exp_from_log_counts(cy, 8))


series_zz = st.integers(0, 16).flatmap(
    lambda n: st.lists(st.integers(-50, 50), min_size=n + 1, max_size=n + 1)
).map(lambda c: TruncatedSeries(ZZ, c))


@settings(max_examples=150, deadline=None)
@given(series_zz, series_zz, series_zz)
def test_ring_laws(a, b, c):
    assert series_mul(series_mul(a, b), c) == series_mul(a, series_mul(b, c))
    assert series_mul(a, b) == series_mul(b, a)
    assert series_mul(a, b + c) == series_mul(a, b) + series_mul(a, c)
    assert (a + b) + c == a + (b + c)
    assert (a + b).horizon == min(a.horizon, b.horizon)


@settings(max_examples=150, deadline=None)
@given(series_zz, st.sampled_from([1, -1]))
def test_inverse_property(a, unit):
    a = TruncatedSeries(ZZ, (unit,) + a.coeffs[1:])
    assert series_mul(a, series_inverse(a)) == one_series(ZZ, a.horizon)


def test_fit_constant_sequence():
    form = fit_rational_form([1, 1, 1, 1, 1], 3)
    assert form == RationalForm((1,), (1, -1))


def test_fit_two_geometric_factors():
    form = fit_rational_form([1, 3, 7, 15, 31, 63], 3)
    # (1-t)(1-2t) = 1 - 3t + 2t^2
    assert form == RationalForm((1,), (1, -3, 2))
    assert form.expand(10) == [2 ** (n + 1) - 1 for n in range(11)]


def test_fit_fibonacci_needs_degree_two():
    assert fit_rational_form([1, 1, 2, 3, 5, 8], 1) is None
    assert fit_rational_form([1, 1, 2, 3, 5, 8], 2) == RationalForm((1,), (1, -1, -1))


@settings(max_examples=100, deadline=None)
@given(
    num=st.lists(st.integers(-5, 5), min_size=1, max_size=3),
    den_tail=st.lists(st.integers(-5, 5), min_size=0, max_size=3),
)
def test_fit_recovers_random_rational_functions(num, den_tail):
    den = [1] + den_tail
    terms = RationalForm(tuple(num), tuple(den)).expand(15)
    form = fit_rational_form(terms, 6)
    assert form is not None
    assert form.degree <= max(len(num), len(den))
    assert form.expand(15) == terms


def test_json_round_trip():
    a = TruncatedSeries(ZZ, (1, -2, 10**40))
    obj = a.to_json()
    assert obj == {"horizon": 2, "coeffs": ["1", "-2", str(10**40)]}
    assert TruncatedSeries.from_json(ZZ, obj) == a
    q = TruncatedSeries(QQ, (Fraction(1), Fraction(-1, 3)))
    assert TruncatedSeries.from_json(QQ, q.to_json()) == q


def test_scale_variable():
    a = zz(1, 1, 1, 1)
    assert a.scale_variable(2) == zz(1, 2, 4, 8)
