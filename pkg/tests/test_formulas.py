from fractions import Fraction

import pytest

from tetrainst.algebra import Character, CohPoint, EvalPoint, bracket_eval, eval_monomial, t_monomial
from tetrainst.formulas import (
    RankVector,
    check_kappa_identity,
    closed_Z_K,
    closed_Z_coh,
    factorization_scale,
    factorized_Z,
    rank1_Z,
    rank1_relation_residual,
)
from tetrainst.localization import sample_until
from tetrainst.series import QSeries


def kpoint(seed):
    from tetrainst.localization import sample_point

    return sample_point(seed, (0, 0, 0, 0), "k")


def test_rank_vector():
    rv = RankVector((1, 0, 2, 0))
    assert rv.r == 3
    assert rv.kappa_rbar() == t_monomial(1, -1) * t_monomial(3, -2)
    assert RankVector((1, 1, 1, 1)).kappa_rbar().is_trivial()
    with pytest.raises(ValueError):
        RankVector((1, 2, 3))


def test_closed_Z_K_vanishing():
    p = kpoint(2)
    f = closed_Z_K((1, 1, 1, 1), 3, p)
    assert f == QSeries.one(3)
    assert closed_Z_K((2, 2, 2, 2), 2, p) == QSeries.one(2)


def test_closed_Z_K_order_zero():
    assert closed_Z_K((0, 0, 0, 1), 0, kpoint(3)) == QSeries.one(0)


def one_box_weight(p):
    # [t1t2][t1t3][t2t3] / ([t1][t2][t3]) at p
    num = Character.zero()
    den = Character.zero()
    for i, j in ((1, 2), (1, 3), (2, 3)):
        num = num + Character.of((t_monomial(i) * t_monomial(j)).canonical())
    for i in (1, 2, 3):
        den = den + Character.of(t_monomial(i))
    return bracket_eval(num - den, p)


def test_closed_Z_K_first_coefficient():
    def run(p):
        return closed_Z_K((0, 0, 0, 1), 1, p).coefficient(1), one_box_weight(p)

    (got, want), _, _ = sample_until(run, 5, (0, 0, 0, 1))
    assert got == want


def test_rank1_leg4_is_unit_vector_formula():
    p = kpoint(7)
    assert rank1_Z(4, 3, p) == closed_Z_K((0, 0, 0, 1), 3, p)


def test_rank1_symmetry_under_swap():
    # swapping a1 and a4 exchanges legs 1 and 4
    p = EvalPoint((Fraction(2, 3), Fraction(5, 7), Fraction(3, 4)))
    swapped = EvalPoint((p.sqrt_t[3], p.sqrt_t[1], p.sqrt_t[2]))
    assert swapped.sqrt_t[3] == p.sqrt_t[0]
    assert rank1_Z(1, 3, swapped) == rank1_Z(4, 3, p)


def test_factorization_scale_exponents():
    # rvec = (2,0,0,0): the two factors carry kappa_1^(-1/2) and kappa_1^(1/2)
    assert factorization_scale((2, 0, 0, 0), 1, 1) == t_monomial(1, 1, half=True)
    assert factorization_scale((2, 0, 0, 0), 1, 2) == t_monomial(1, -1, half=True)
    # a single rank-1 slot carries no rescaling at all
    assert factorization_scale((0, 0, 0, 1), 4, 1).is_trivial()


def test_factorized_rank1_is_rank1():
    p = kpoint(11)
    assert factorized_Z((0, 0, 0, 1), 3, p) == rank1_Z(4, 3, p)


@pytest.mark.parametrize("rvec", [(1, 1, 0, 0), (2, 0, 0, 0), (1, 0, 1, 0)])
def test_factorized_equals_closed(rvec):
    for seed in range(5):
        def run(p):
            return closed_Z_K(rvec, 3, p), factorized_Z(rvec, 3, p)

        (a, b), _, _ = sample_until(run, 100 + seed, rvec)
        assert a == b


def test_closed_Z_coh_vanishing():
    p = CohPoint((1, 2, 3))
    assert closed_Z_coh((1, 1, 1, 1), 4, p) == QSeries.one(4)


def test_closed_Z_coh_first_coefficient():
    # s = (1,2,3,-6), rvec = (0,0,0,1): exponent -(3)(4)(5)(-6)/(1*2*3*(-6)) = -10,
    # and the (-1)^r twist flips the q^1 coefficient to +10
    p = CohPoint((1, 2, 3))
    f = closed_Z_coh((0, 0, 0, 1), 1, p)
    assert f.coefficient(1) == 10


def test_closed_Z_coh_ignores_framing_components():
    a = CohPoint((1, 2, 3), (5,))
    b = CohPoint((1, 2, 3), (-9,))
    assert closed_Z_coh((0, 0, 0, 1), 3, a) == closed_Z_coh((0, 0, 0, 1), 3, b)


def test_kappa_identity_rank1():
    assert check_kappa_identity([Fraction(3, 2)], 6)


def test_kappa_identity_higher_rank():
    assert check_kappa_identity([Fraction(2), Fraction(5, 3)], 6)
    assert check_kappa_identity([Fraction(2), Fraction(3), Fraction(7, 5)], 6)
    assert check_kappa_identity([Fraction(2), Fraction(3, 2), Fraction(5, 4), Fraction(7, 6)], 6)


def test_kappa_identity_product_one():
    # total weight 1: the right side is identically zero, so the left side
    # must cancel order by order
    assert check_kappa_identity([Fraction(2), Fraction(1, 2)], 6)


def test_kappa_identity_rejects_nonpositive():
    with pytest.raises(ValueError):
        check_kappa_identity([Fraction(-2)], 4)


def test_rank1_relation():
    for seed in range(5):
        val, _, _ = sample_until(rank1_relation_residual, 50 + seed, (0, 0, 0, 1))
        assert val == 0
