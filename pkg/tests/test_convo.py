import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aqcc.errors import (
    ContainmentFailed,
    NotBasic,
    PartitionInvalid,
    RankConditionViolated,
    RankDeficient,
)
from aqcc.convo import (
    DegreeInfo,
    PolyMatrix,
    contains,
    degree_accounting,
    dual_generator,
    is_basic,
    is_reduced,
    padd,
    pdeg,
    pdivmod,
    peval,
    pmonic,
    pmul,
    poly_vector_weight,
    pshift,
    reduce,
    right_inverse,
    smith_form,
    split_to_generator,
)
from aqcc.gf import FiniteField
from aqcc.matrix import MatrixGF


@pytest.fixture(scope="module")
def gf3():
    return FiniteField.get(3, 1)


class TestPolyOps:
    def test_product_gf3(self, gf3):
        assert pmul(gf3, (1, 2), (2, 1)) == (2, 2, 2)

    def test_degree_sentinel(self):
        assert pdeg(()) == -1
        assert pdeg((0, 1)) == 1

    def test_addition_cancels(self, gf3):
        assert padd(gf3, (1, 2), (2, 1)) == ()

    def test_divmod(self, gf3):
        q, r = pdivmod(gf3, (2, 2, 2), (1, 2))
        assert q == (2, 1) and r == ()
        q, r = pdivmod(gf3, (1, 0, 1), (0, 1))
        assert q == (0, 1) and r == (1,)
        with pytest.raises(ZeroDivisionError):
            pdivmod(gf3, (1,), ())

    def test_shift_monic_eval(self, gf3):
        assert pshift((1, 2), 2) == (0, 0, 1, 2)
        assert pshift((), 3) == ()
        assert pmonic(gf3, (1, 2)) == (2, 1)
        assert peval(gf3, (1, 2, 1), 2) == gf3.add(1, gf3.add(gf3.mul(2, 2), gf3.mul(1, gf3.pow(2, 2))))

    def test_vector_weight(self):
        assert poly_vector_weight(((1, 0, 2), (), (3,))) == 3


class TestPolyMatrix:
    def test_coefficient_roundtrip(self, gf3):
        c0 = MatrixGF(gf3, [[1, 0], [2, 1]])
        c1 = MatrixGF(gf3, [[0, 1], [0, 0]])
        m = PolyMatrix.from_coefficients(gf3, [c0, c1])
        assert m.coefficient(0) == c0
        assert m.coefficient(1) == c1
        assert m.coefficient(5) == MatrixGF.zeros(gf3, 2, 2)
        assert m.max_degree == 1
        assert m.row_degrees == (1, 0)

    def test_matmul_against_hand_product(self, gf3):
        a = PolyMatrix(gf3, [[(1,), (0, 1)]])  # [1, D]
        b = PolyMatrix(gf3, [[(0, 1)], [(1,)]])  # [D, 1]^T
        assert a @ b == PolyMatrix(gf3, [[(0, 2)]])  # D + D = 2D

    def test_reverse(self, gf3):
        m = PolyMatrix(gf3, [[(0, 1), (1,)]])
        assert m.reverse() == PolyMatrix(gf3, [[(1,), (0, 1)]])
        rev2 = m.reverse(2)
        assert rev2.entry(0, 0) == (0, 1) and rev2.entry(0, 1) == (0, 0, 1)
        with pytest.raises(ValueError):
            PolyMatrix(gf3, [[(0, 0, 1)]]).reverse(1)

    def test_transpose_empty_shapes(self, gf3):
        z = PolyMatrix.zeros(gf3, 0, 3)
        assert z.T.shape == (3, 0)
        assert z.T.T.shape == (0, 3)

    def test_eval_at(self, gf3):
        m = PolyMatrix(gf3, [[(1, 1), (0, 0, 2)]])
        assert m.eval_at(2) == MatrixGF(gf3, [[gf3.add(1, 2), gf3.mul(2, gf3.pow(2, 2))]])

    def test_text_roundtrip_byte_identical(self, gf3):
        m = PolyMatrix(gf3, [[(1, 2), ()], [(0, 1), (2,)]])
        text = m.to_text()
        assert text == "3 2 2\n0 0 : 1 2\n0 1 :\n1 0 : 0 1\n1 1 : 2\n"
        assert PolyMatrix.from_text(text) == m
        assert PolyMatrix.from_text(text).to_text() == text

    def test_leading_row_matrix(self, gf3):
        m = PolyMatrix(gf3, [[(1, 1), (0, 1)], [(1,), (2,)]])
        assert m.leading_row_matrix() == MatrixGF(gf3, [[1, 1], [1, 2]])


def assert_smith_invariants(m):
    sf = smith_form(m)
    f = m.field
    assert sf.u @ m @ sf.v == sf.s
    assert sf.u @ sf.u_inv == PolyMatrix.identity(f, m.rows)
    assert sf.v @ sf.v_inv == PolyMatrix.identity(f, m.cols)
    factors = sf.invariant_factors
    for p in factors:
        assert p[-1] == 1  # monic
    for a, b in zip(factors, factors[1:]):
        assert pdivmod(f, b, a)[1] == ()
    # off-diagonal must vanish
    for i in range(sf.s.rows):
        for j in range(sf.s.cols):
            if i != j:
                assert sf.s.entry(i, j) == ()
    return sf


class TestSmith:
    def test_single_row(self, gf3):
        sf = assert_smith_invariants(PolyMatrix(gf3, [[(1,), (0, 1)]]))
        assert sf.invariant_factors == ((1,),)

    def test_common_factor_detected(self):
        f = FiniteField.get(2, 1)
        sf = assert_smith_invariants(PolyMatrix(f, [[(0, 1), (0, 0, 1)]]))
        assert sf.invariant_factors == ((0, 1),)

    def test_triangular(self, gf3):
        m = PolyMatrix(gf3, [[(1,), (0, 1)], [(), (1, 1)]])
        sf = assert_smith_invariants(m)
        assert sf.invariant_factors == ((1,), (1, 1))

    def test_zero_matrix(self, gf3):
        sf = assert_smith_invariants(PolyMatrix.zeros(gf3, 2, 3))
        assert sf.invariant_factors == ()
        assert sf.rank == 0


@st.composite
def small_polymatrix(draw):
    q_choice = draw(st.sampled_from([(2, 1), (2, 2), (5, 1)]))
    field = FiniteField.get(*q_choice)
    rows = draw(st.integers(1, 3))
    cols = draw(st.integers(1, 3))
    ent = [
        [
            tuple(draw(st.integers(0, field.q - 1)) for _ in range(draw(st.integers(0, 3))))
            for _ in range(cols)
        ]
        for _ in range(rows)
    ]
    return PolyMatrix(field, ent)


@settings(max_examples=60, deadline=None)
@given(small_polymatrix())
def test_smith_invariants_random(m):
    assert_smith_invariants(m)


class TestBasic:
    def test_basic_examples(self, gf3):
        assert is_basic(PolyMatrix(gf3, [[(1,), (0, 1)]]))
        assert is_basic(PolyMatrix.identity(gf3, 2))
        f2 = FiniteField.get(2, 1)
        assert not is_basic(PolyMatrix(f2, [[(0, 1), (0, 0, 1)]]))

    def test_right_inverse(self, gf3):
        g = PolyMatrix(gf3, [[(1,), (0, 1)]])
        r = right_inverse(g)
        assert g @ r == PolyMatrix.identity(gf3, 1)
        assert r.shape == (2, 1)

    def test_right_inverse_rejects_catastrophic(self):
        f2 = FiniteField.get(2, 1)
        with pytest.raises(NotBasic):
            right_inverse(PolyMatrix(f2, [[(0, 1), (0, 0, 1)]]))

    def test_right_inverse_rejects_rank_deficient(self, gf3):
        g = PolyMatrix(gf3, [[(1,), (0, 1)], [(2,), (0, 2)]])
        assert not is_basic(g)
        with pytest.raises(RankDeficient):
            right_inverse(g)


class TestReduced:
    def test_detects_unreduced(self):
        f2 = FiniteField.get(2, 1)
        g = PolyMatrix(f2, [[(1, 1), (0, 1)], [(1,), (1,)]])
        assert not is_reduced(g)
        red = reduce(g)
        assert is_reduced(red)
        assert degree_accounting(red).gamma < degree_accounting(g).gamma
        # same module both ways
        contains(red, g)
        contains(g, red)

    def test_reduce_keeps_reduced_input(self, gf3):
        g = PolyMatrix(gf3, [[(1,), (0, 1)], [(0, 1), (1,)]])
        assert is_reduced(g)
        assert reduce(g) == g

    def test_reduce_raises_on_rank_loss(self, gf3):
        g = PolyMatrix(gf3, [[(1,), (2,)], [(2,), (1,)]])  # row1 = 2*row0
        with pytest.raises(RankDeficient):
            reduce(g)

    def test_degree_accounting(self, gf3):
        g = PolyMatrix(gf3, [[(1,), (0, 1), (0, 0, 1)], [(0, 1), (1,), ()]])
        info = degree_accounting(g)
        assert info == DegreeInfo((2, 1), 3, 2)
        with pytest.raises(RankDeficient):
            degree_accounting(PolyMatrix.zeros(gf3, 1, 2))


class TestDual:
    def test_dual_of_unit_delay_pair(self, gf3):
        g = PolyMatrix(gf3, [[(1,), (0, 1)]])
        h = dual_generator(g)
        assert h.rows == 1
        # pairing: sum_t g_t . h_t over all relative shifts must vanish;
        # for row degree 1 that is c0.d0 + c1.d1 = 0 and the cross terms
        assert h == PolyMatrix(gf3, [[(1,), (0, 2)]])

    def test_dual_respects_time_pairing(self, gf3):
        g = PolyMatrix(gf3, [[(1,), (0, 1)]])
        h = dual_generator(g)
        mu = max(g.max_degree, h.max_degree)
        assert (g.reverse(mu) @ h.T).is_zero()
        assert (h.reverse(mu) @ g.T).is_zero()

    def test_dual_of_full_rank_square_is_empty(self, gf3):
        h = dual_generator(PolyMatrix.identity(gf3, 2))
        assert h.shape == (0, 2)

    def test_double_dual_restores_module(self):
        f = FiniteField.get(2, 2)
        g = PolyMatrix(f, [[(1,), (0, 1), (1, 1)], [(), (2,), (0, 0, 1)]])
        assert is_basic(g)
        dd = dual_generator(dual_generator(g))
        contains(dd, g)
        contains(g, dd)

    def test_dual_dimensions_add_up(self, gf3):
        g = PolyMatrix(gf3, [[(1,), (1,), (0, 1)], [(0, 1), (), (1,)]])
        h = dual_generator(g)
        assert h.rows == g.cols - g.rows
        assert is_basic(h) and is_reduced(h)


class TestContains:
    def test_multiple_is_contained(self, gf3):
        g = PolyMatrix(gf3, [[(1,), (0, 1)]])
        inner = PolyMatrix(gf3, [[(0, 1), (0, 0, 1)]])  # D * g
        x = contains(g, inner)
        assert x @ g == inner
        assert x == PolyMatrix(gf3, [[(0, 1)]])

    def test_combination_of_rows(self, gf3):
        g = PolyMatrix(gf3, [[(1,), (), (0, 1)], [(), (1,), (1,)]])
        x_true = PolyMatrix(gf3, [[(1, 1), (2,)]])
        inner = x_true @ g
        x = contains(g, inner)
        assert x @ g == inner

    def test_outside_module_fails(self, gf3):
        g = PolyMatrix(gf3, [[(1,), (0, 1)]])
        with pytest.raises(ContainmentFailed):
            contains(g, PolyMatrix(gf3, [[(1,), (1,)]]))

    def test_divisibility_obstruction(self):
        f2 = FiniteField.get(2, 1)
        g = PolyMatrix(f2, [[(0, 1), (0, 1)]])  # D * [1, 1]
        with pytest.raises(ContainmentFailed):
            contains(g, PolyMatrix(f2, [[(1,), (1,)]]))


class TestSplit:
    def test_identity_partition(self):
        f = FiniteField.get(5, 1)
        eye = MatrixGF.identity(f, 4)
        g = split_to_generator([
            MatrixGF(f, eye.a[:2]),
            MatrixGF(f, eye.a[2:3]),
            MatrixGF(f, eye.a[3:4]),
        ])
        assert g == PolyMatrix(f, [
            [(1,), (), (0, 1), (0, 0, 1)],
            [(), (1,), (), ()],
        ])
        assert is_basic(g) and is_reduced(g)
        assert degree_accounting(g) == DegreeInfo((2, 0), 2, 2)

    def test_placement_moves_partner_rows(self):
        f = FiniteField.get(5, 1)
        eye = MatrixGF.identity(f, 4)
        g = split_to_generator(
            [MatrixGF(f, eye.a[:2]), MatrixGF(f, eye.a[2:3])],
            placements=[(0, 1), (1,)],
        )
        assert g.entry(1, 2) == (0, 1)
        assert g.row_degrees == (0, 1)

    def test_oversized_block_rejected(self):
        f = FiniteField.get(5, 1)
        eye = MatrixGF.identity(f, 4)
        with pytest.raises(RankConditionViolated):
            split_to_generator([MatrixGF(f, eye.a[:1]), MatrixGF(f, eye.a[1:3])])

    def test_dependent_stack_rejected(self):
        f = FiniteField.get(5, 1)
        rows = MatrixGF(f, [[1, 2, 0], [2, 4, 0]])
        with pytest.raises(RankDeficient):
            split_to_generator([rows])

    def test_bad_placement_rejected(self):
        f = FiniteField.get(5, 1)
        eye = MatrixGF.identity(f, 4)
        with pytest.raises(PartitionInvalid):
            split_to_generator(
                [MatrixGF(f, eye.a[:2]), MatrixGF(f, eye.a[2:3])],
                placements=[(0, 1), (5,)],
            )
        with pytest.raises(PartitionInvalid):
            split_to_generator(
                [MatrixGF(f, eye.a[:2]), MatrixGF(f, eye.a[2:3])],
                placements=[(1, 0), (0,)],
            )
