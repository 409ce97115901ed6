import random

from tetrainst.algebra import Character, Monomial, t_monomial, trivial_monomial, w_monomial
from tetrainst.partitions import Configuration, PlanePartition, enumerate_configurations
from tetrainst.vertex import (
    ambient_tangent,
    build_fixed_point,
    char_P,
    obstruction_fiber,
    other_indices,
    partition_character,
    tilde_vertex,
    vertex,
    vertex_block,
    vertex_from_blocks,
    virtual_tangent,
    virtual_tangent_via_ambient,
)

RVECS = [(0, 0, 0, 1), (1, 0, 0, 0), (1, 1, 0, 0), (1, 0, 1, 0), (2, 0, 0, 0), (1, 1, 1, 1)]


def configs_up_to(rvec, nmax):
    for n in range(nmax + 1):
        yield from enumerate_configurations(rvec, n)


def one_box_leg4():
    return Configuration((0, 0, 0, 1), ((), (), (), (PlanePartition([(0, 0, 0)]),)))


def test_char_P():
    assert char_P(set()) == Character.one()
    assert char_P({1}) == Character.one() - Character.of(t_monomial(1))
    P = char_P({1, 2, 3})
    assert P + P.dual() == char_P({1, 2, 3, 4})


def test_other_indices():
    assert other_indices(1) == (2, 3, 4)
    assert other_indices(4) == (1, 2, 3)


def test_partition_character_leg4():
    pp = PlanePartition([(0, 0, 0), (1, 0, 0)])
    Z = partition_character(pp, 4)
    assert Z == Character({trivial_monomial(): 1, t_monomial(1): 1})


def test_partition_character_leg1():
    # leg 1 uses the variable set {2,3,4} in increasing order
    pp = PlanePartition([(0, 0, 0), (1, 0, 0)])
    Z = partition_character(pp, 1)
    assert Z == Character({trivial_monomial(): 1, t_monomial(2): 1})


def test_build_fixed_point_single_box():
    fp = build_fixed_point(one_box_leg4())
    assert fp.Z[(4, 1)] == Character.one(1)
    assert fp.Q == Character.of(w_monomial(0, 1, 1))
    assert fp.Q.rank() == 1
    assert fp.K == Character.of(w_monomial(0, 1, 1))


def test_build_fixed_point_empty():
    fp = build_fixed_point(Configuration((1, 1, 0, 0), ((PlanePartition([]),), (PlanePartition([]),), (), ())))
    assert fp.Q.is_zero()
    assert fp.K.rank() == 2


def test_rank_of_Q_is_size():
    for config in configs_up_to((1, 1, 0, 0), 3):
        fp = build_fixed_point(config)
        assert fp.Q.rank() == config.size


def test_one_box_vertex_explicit():
    fp = build_fixed_point(one_box_leg4())
    v = vertex(fp)
    expected = Character.zero()
    for i in (1, 2, 3):
        expected = expected + Character.of(t_monomial(i, -1, nslots=1))
    for i, j in ((1, 2), (1, 3), (2, 3)):
        m = (t_monomial(i, -1, nslots=1) * t_monomial(j, -1, nslots=1)).canonical()
        expected = expected - Character.of(m)
    assert v == expected


def test_one_box_tilde_vertex():
    fp = build_fixed_point(one_box_leg4())
    vt = tilde_vertex(fp)
    assert vt == Character.one(1) - char_P({1, 2, 3}, 1).dual()


def test_virtual_tangent_rank_zero():
    for rvec in [(0, 0, 0, 1), (1, 1, 0, 0)]:
        for config in configs_up_to(rvec, 3):
            fp = build_fixed_point(config)
            assert virtual_tangent(fp).rank() == 0


def test_virtual_tangent_two_routes():
    for rvec in RVECS:
        for config in configs_up_to(rvec, 3):
            fp = build_fixed_point(config)
            assert virtual_tangent(fp) == virtual_tangent_via_ambient(fp)


def test_square_root_and_movability():
    for rvec in RVECS:
        for config in configs_up_to(rvec, 3):
            fp = build_fixed_point(config)
            v = vertex(fp)
            assert v + v.dual() == virtual_tangent(fp)
            assert v.fixed_part().is_zero()
            assert tilde_vertex(fp).fixed_part().is_zero()


def test_K_t_Qbar_is_movable():
    for config in configs_up_to((1, 0, 1, 0), 3):
        fp = build_fixed_point(config)
        for i in range(1, 5):
            ti = Character.of(t_monomial(i, nslots=fp.registry.rank))
            part = fp.K_leg[i - 1] * ti * fp.Q.dual()
            assert part.fixed_part().is_zero()


def test_empty_config_everything_vanishes():
    fp = build_fixed_point(Configuration((0, 0, 0, 1), ((), (), (), (PlanePartition([]),))))
    assert vertex(fp).is_zero()
    assert virtual_tangent(fp).is_zero()
    assert tilde_vertex(fp).is_zero()
    assert ambient_tangent(fp).is_zero()
    assert obstruction_fiber(fp).is_zero()


def test_diagonal_block_is_rank1_vertex():
    fp = build_fixed_point(one_box_leg4())
    assert vertex_block(fp, 4, 1, 4, 1) == vertex(fp)


def test_blocks_sum_to_vertex():
    rng = random.Random(23)
    pool = []
    for rvec in RVECS:
        pool.extend(configs_up_to(rvec, 3))
    picks = rng.sample(pool, 50)
    for config in picks:
        fp = build_fixed_point(config)
        assert vertex_from_blocks(fp) == vertex(fp)


def test_off_diagonal_block_of_empty_partitions():
    config = Configuration(
        (1, 1, 0, 0), ((PlanePartition([]),), (PlanePartition([]),), (), ())
    )
    fp = build_fixed_point(config)
    assert vertex_block(fp, 1, 1, 2, 1).is_zero()
