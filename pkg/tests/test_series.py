import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tetrainst.series import (
    BadConstantTermError,
    QPSeries,
    QSeries,
    macmahon,
    macmahon_power,
    plethystic_exp,
    substitute_q_scale,
)

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=20)


def geometric(order):
    return QSeries([1] * (order + 1))


def test_exp_log_roundtrip():
    f = QSeries([1, 1, 0, 0, 0])
    assert f.log().exp() == f


def test_geometric_inverse():
    # (1 - q) * sum q^n = 1
    one_minus_q = QSeries.binomial(-1, 1, 6)
    assert one_minus_q * geometric(6) == QSeries.one(6)
    assert one_minus_q.invert() == geometric(6)


def test_binomial_product_order3():
    f = QSeries.binomial(1, 1, 3) * QSeries.binomial(1, 2, 3)
    assert f == QSeries([1, 1, 1, 1])


def test_invert_needs_nonzero_constant():
    with pytest.raises(BadConstantTermError):
        QSeries([0, 1, 2]).invert()


def test_exp_needs_zero_constant():
    with pytest.raises(BadConstantTermError):
        QSeries([1, 1]).exp()


def test_pow_negative():
    f = QSeries.binomial(-1, 1, 5)
    assert f ** -2 == (f.invert()) ** 2


def test_stretch_and_shift():
    f = QSeries([1, 2, 3, 0, 0, 0])
    assert f.stretch(2) == QSeries([1, 0, 2, 0, 3, 0])
    assert f.shift(1).coeffs[:3] == (Fraction(0), Fraction(1), Fraction(2))
    with pytest.raises(ValueError):
        f.shift(-1)
    assert QSeries([0, 0, 5, 7]).shift(-2) == QSeries([5, 7, 0, 0])


def test_q_scale():
    f = QSeries([1, 1, 0])
    assert substitute_q_scale(f, 1, 1) == f
    assert substitute_q_scale(f, 2, 1) == QSeries([1, 2, 0])
    # double substitution composes multiplicatively
    g = f.q_scale(2).q_scale(3)
    assert g == f.q_scale(6)
    assert f.q_scale(1, -1) == QSeries([1, -1, 0])


def test_plethystic_exp_geometric():
    # Exp(q) = 1/(1-q)
    f = plethystic_exp(lambda n: QSeries([0, 1, 0, 0, 0, 0, 0]), 6)
    assert f == geometric(6)


def test_plethystic_exp_macmahon():
    # Exp(q/(1-q)^2) = M(q)
    def body(n):
        inner = QSeries.binomial(-1, 1, 6).invert() ** 2
        return inner.shift(1)

    assert plethystic_exp(body, 6) == macmahon(6)


def test_plethystic_exp_zero():
    assert plethystic_exp(lambda n: QSeries.zero(4), 4) == QSeries.one(4)


def test_plethystic_exp_additive():
    rng = random.Random(11)
    f_coeffs = [0] + [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(5)]
    g_coeffs = [0] + [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(5)]

    def f(n):
        return QSeries([c * Fraction(2, 3) ** (n * k) for k, c in enumerate(f_coeffs)])

    def g(n):
        return QSeries([c * Fraction(2, 3) ** (n * k) for k, c in enumerate(g_coeffs)])

    def both(n):
        return f(n) + g(n)

    assert plethystic_exp(both, 5) == plethystic_exp(f, 5) * plethystic_exp(g, 5)


def test_macmahon_coefficients():
    assert [int(c) for c in macmahon(6).coeffs] == [1, 1, 3, 6, 13, 24, 48]


def test_macmahon_power():
    assert macmahon_power(0, 5) == QSeries.one(5)
    assert macmahon_power(1, 6) == macmahon(6)
    assert macmahon_power(2, 5) == macmahon(5) ** 2
    assert macmahon_power(Fraction(1, 2), 5) ** 2 == macmahon(5)


def test_macmahon_coefficients_are_positive_integers():
    for c in macmahon(8).coeffs:
        assert c.denominator == 1 and c > 0


@given(st.lists(rationals, min_size=9, max_size=9), st.lists(rationals, min_size=9, max_size=9))
def test_truncation_consistency_mul(a, b):
    f8, g8 = QSeries(a), QSeries(b)
    f4, g4 = f8.truncate(4), g8.truncate(4)
    assert (f8 * g8).truncate(4) == f4 * g4


@given(st.lists(rationals, min_size=8, max_size=8))
def test_truncation_consistency_exp(a):
    f8 = QSeries([0] + a)
    assert f8.exp().truncate(4) == f8.truncate(4).exp()


def brute_force_expansion(c, order):
    """1/([k^(1/2)q][k^(1/2)q^(-1)]) for k = c**2, expanded around q = 0.

    The product of brackets is k^(1/2) + k^(-1/2) - q - 1/q, so multiplying
    through by q the function is -q / (q**2 - (c + 1/c)q + 1); expand the
    denominator polynomial directly.
    """
    c = Fraction(c)
    den = QSeries([1, -(c + 1 / c), 1]).truncate(order)
    return -(den.invert().shift(1))


def test_expansion_convention_oracle():
    # the adopted c_m rule: 1/([k^(1/2)q][k^(1/2)q^(-1)]) = -sum ([k^m]/[k]) q^m
    for c in (Fraction(2), Fraction(3, 5), Fraction(7, 4)):
        expected = [Fraction(0)]
        for m in range(1, 6):
            expected.append(-(c ** m - c ** -m) / (c - 1 / c))
        assert brute_force_expansion(c, 5) == QSeries(expected)


def test_qpseries_basics():
    rows = [QSeries([1, 2, 3]), QSeries([0, 5, 0])]
    f = QPSeries(rows)
    assert f.q_order == 1 and f.p_order == 2
    assert f.coefficient(1, 1) == 5
    assert f.p_slice(1) == QSeries([2, 5])
    assert f == QPSeries(rows)
    with pytest.raises(ValueError):
        QPSeries([QSeries([1]), QSeries([1, 2])])
