import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from aqcc.errors import (
    FieldMismatch,
    NonPrimeCharacteristic,
    NotCoprime,
    OrderNotDividing,
    ReducibleModulus,
)
from aqcc.gf import (
    FiniteField,
    SubfieldBasis,
    default_modulus,
    embedding,
    multiplicative_order,
    poly_is_irreducible,
    prime_factors,
)


def packed(coeffs, p):
    return sum(c * p ** i for i, c in enumerate(coeffs))


class TestModulusSelection:
    def test_canonical_moduli(self):
        # frozen: smallest packed-index monic irreducible per degree
        assert default_modulus(2, 1) == (0, 1)
        assert default_modulus(2, 2) == (1, 1, 1)
        assert default_modulus(2, 3) == (1, 1, 0, 1)
        assert default_modulus(2, 4) == (1, 1, 0, 0, 1)
        assert default_modulus(3, 2) == (1, 0, 1)
        assert packed(default_modulus(2, 8), 2) == 283
        assert packed(default_modulus(2, 10), 2) == 1033

    @pytest.mark.parametrize("p,l", [(2, 4), (2, 8), (3, 2), (3, 3), (5, 2), (11, 2)])
    def test_default_modulus_agrees_with_sympy(self, p, l):
        mod = default_modulus(p, l)
        x = sympy.symbols("x")
        poly = sympy.Poly(list(reversed(mod)), x, modulus=p)
        assert sympy.factor_list(poly.as_expr(), modulus=p)[1][0][1] == 1
        assert poly.degree() == l
        # nothing smaller is irreducible
        for m in range(p ** l, packed(mod, p)):
            cand = [(m // p ** i) % p for i in range(l + 1)]
            assert not poly_is_irreducible(tuple(cand), p)

    def test_irreducibility_by_trial_division(self):
        assert poly_is_irreducible((1, 1, 1), 2)
        assert not poly_is_irreducible((1, 0, 0, 0, 1), 2)  # (x+1)**4
        assert not poly_is_irreducible((1,), 2)
        assert poly_is_irreducible((1, 0, 1), 3)
        assert not poly_is_irreducible((2, 0, 1), 3)  # x**2 - 1


class TestConstruction:
    def test_rejects_composite_characteristic(self):
        with pytest.raises(NonPrimeCharacteristic):
            FiniteField(4)
        with pytest.raises(NonPrimeCharacteristic):
            FiniteField(15, 1)

    def test_rejects_reducible_modulus(self):
        with pytest.raises(ReducibleModulus):
            FiniteField(2, 4, modulus=(1, 0, 0, 0, 1))

    def test_rejects_wrong_degree_modulus(self):
        with pytest.raises(ValueError):
            FiniteField(2, 4, modulus=(1, 1, 1))
        with pytest.raises(ValueError):
            FiniteField(2, 2, modulus=(1, 1, 2))  # reduces to non monic

    def test_get_shares_instances(self, gf16):
        assert FiniteField.get(2, 4) is gf16
        assert FiniteField(2, 4) == gf16
        assert hash(FiniteField(2, 4)) == hash(gf16)


def exhaustive_axioms(field):
    q = field.q
    a = np.arange(q).reshape(-1, 1, 1)
    b = np.arange(q).reshape(1, -1, 1)
    c = np.arange(q).reshape(1, 1, -1)
    assert np.array_equal(field.add(a, b), field.add(b, a))
    assert np.array_equal(field.mul(a, b), field.mul(b, a))
    assert np.array_equal(field.add(field.add(a, b), c), field.add(a, field.add(b, c)))
    assert np.array_equal(field.mul(field.mul(a, b), c), field.mul(a, field.mul(b, c)))
    assert np.array_equal(
        field.mul(a, field.add(b, c)),
        field.add(field.mul(a, b), field.mul(a, c)),
    )
    nz = np.arange(1, q)
    assert np.array_equal(field.mul(nz, field.inv(nz)), np.ones(q - 1, dtype=np.int32))
    assert np.array_equal(field.add(np.arange(q), field.neg(np.arange(q))), np.zeros(q, dtype=np.int32))


@pytest.mark.parametrize("p,l", [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (3, 2), (2, 4), (17, 1)])
def test_field_axioms_exhaustive(p, l):
    exhaustive_axioms(FiniteField.get(p, l))


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 255), st.integers(0, 255), st.integers(0, 255))
def test_gf256_axioms_sampled(a, b, c):
    f = FiniteField.get(2, 8)
    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
    if a:
        assert f.mul(a, f.inv(a)) == 1


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 1023), st.integers(0, 1023))
def test_gf1024_products_match_raw_polynomials(a, b):
    f = FiniteField.get(2, 10)
    assert f.mul(a, b) == f._mul_raw(a, b)
    assert f.add(a, b) == a ^ b


class TestGeneratorAndLogs:
    def test_known_generators(self, gf11):
        assert gf11.generator == 2
        assert FiniteField.get(3, 2).generator == 4  # x + 1 mod x**2 + 1

    def test_exp_log_roundtrip(self, gf16):
        for a in range(1, 16):
            assert gf16.exp(gf16.log(a)) == a
        assert gf16.log(1) == 0
        with pytest.raises(ZeroDivisionError):
            gf16.log(0)

    def test_order_of(self, gf16):
        assert gf16.order_of(1) == 1
        assert gf16.order_of(gf16.generator) == 15
        orders = sorted({gf16.order_of(a) for a in range(1, 16)})
        assert orders == [1, 3, 5, 15]

    def test_pow(self, gf16):
        g = gf16.generator
        assert gf16.pow(g, 15) == 1
        assert gf16.pow(g, -1) == gf16.inv(g)
        assert gf16.pow(0, 0) == 1
        assert gf16.pow(0, 3) == 0
        with pytest.raises(ZeroDivisionError):
            gf16.pow(0, -2)


class TestOrders:
    def test_multiplicative_order_values(self):
        assert multiplicative_order(16, 17) == 2
        assert multiplicative_order(32, 33) == 2
        assert multiplicative_order(11, 10) == 1
        assert multiplicative_order(9, 10) == 2
        assert multiplicative_order(2, 7) == 3
        assert multiplicative_order(5, 1) == 1

    def test_multiplicative_order_rejects_shared_factor(self):
        with pytest.raises(NotCoprime):
            multiplicative_order(9, 3)

    def test_root_of_unity(self, gf16):
        z = gf16.root_of_unity(5)
        assert gf16.order_of(z) == 5
        assert gf16.root_of_unity(1) == 1
        with pytest.raises(OrderNotDividing):
            gf16.root_of_unity(7)

    def test_root_of_unity_powers_distinct(self, gf11):
        z = gf11.root_of_unity(10)
        powers = {gf11.pow(z, i) for i in range(10)}
        assert len(powers) == 10


class TestCoordinates:
    def test_pack_unpack(self, gf16):
        assert gf16.element((1, 1, 0, 0)) == 3
        assert gf16.coeffs(3) == (1, 1, 0, 0)
        for a in range(16):
            assert gf16.element(gf16.coeffs(a)) == a

    def test_element_reduces_mod_p(self):
        f = FiniteField.get(3, 2)
        assert f.element((4, 5)) == 1 + 2 * 3


class TestEmbedding:
    def test_requires_compatible_fields(self):
        with pytest.raises(FieldMismatch):
            embedding(FiniteField.get(2, 2), FiniteField.get(2, 3))
        with pytest.raises(FieldMismatch):
            embedding(FiniteField.get(3, 1), FiniteField.get(2, 4))

    @pytest.mark.parametrize("a,b", [(1, 4), (2, 4), (1, 2), (4, 8), (2, 8), (1, 10), (5, 10)])
    def test_is_field_homomorphism(self, a, b):
        sub = FiniteField.get(2, a)
        ext = FiniteField.get(2, b)
        t = embedding(sub, ext)
        x = np.arange(sub.q).reshape(-1, 1)
        y = np.arange(sub.q).reshape(1, -1)
        assert np.array_equal(t[sub.add(x, y)], ext.add(t[x], t[y]))
        assert np.array_equal(t[sub.mul(x, y)], ext.mul(t[x], t[y]))
        assert t[0] == 0 and t[1] == 1
        assert len(set(t.tolist())) == sub.q

    def test_image_is_frobenius_fixed_field(self, gf16, gf256):
        t = embedding(gf16, gf256)
        fixed = {a for a in range(256) if gf256.pow(a, 16) == a}
        assert set(t.tolist()) == fixed

    def test_odd_characteristic(self):
        sub = FiniteField.get(3, 1)
        ext = FiniteField.get(3, 2)
        t = embedding(sub, ext)
        assert t.tolist() == [0, 1, 2]

    def test_prime_subfield_of_gf81(self):
        sub = FiniteField.get(3, 2)
        ext = FiniteField.get(3, 4)
        t = embedding(sub, ext)
        x = np.arange(9).reshape(-1, 1)
        y = np.arange(9).reshape(1, -1)
        assert np.array_equal(t[sub.mul(x, y)], ext.mul(t[x], t[y]))


class TestSubfieldBasis:
    def test_roundtrip_gf256_over_gf16(self, gf16, gf256):
        basis = SubfieldBasis(gf16, gf256)
        assert basis.L == 2
        for e in range(256):
            coords = basis.expand(e)
            assert len(coords) == 2
            assert basis.combine(coords) == e

    def test_expand_is_subfield_linear(self, gf16, gf256):
        basis = SubfieldBasis(gf16, gf256)
        emb = embedding(gf16, gf256)
        rng = np.random.default_rng(7)
        for _ in range(50):
            a, b = rng.integers(0, 256, 2)
            c = int(rng.integers(0, 16))
            ea = np.array(basis.expand(int(a)))
            eb = np.array(basis.expand(int(b)))
            assert np.array_equal(
                np.array(basis.expand(gf256.add(int(a), int(b)))), gf16.add(ea, eb)
            )
            scaled = gf256.mul(int(emb[c]), int(a))
            assert np.array_equal(np.array(basis.expand(scaled)), gf16.mul(c, ea))

    def test_expand_array_matches_scalar(self, gf16, gf256):
        basis = SubfieldBasis(gf16, gf256)
        arr = np.arange(256).reshape(16, 16)
        out = basis.expand_array(arr)
        assert out.shape == (16, 16, 2)
        assert tuple(out[3, 5]) == basis.expand(3 * 16 + 5)

    def test_trivial_basis(self, gf16):
        basis = SubfieldBasis(gf16, gf16)
        assert basis.L == 1
        assert basis.expand(9) == (9,)

    def test_gf1024_over_gf32(self):
        sub = FiniteField.get(2, 5)
        ext = FiniteField.get(2, 10)
        basis = SubfieldBasis(sub, ext)
        assert basis.L == 2
        for e in (0, 1, 2, 500, 1023):
            assert basis.combine(basis.expand(e)) == e


def test_prime_factors():
    assert prime_factors(1) == []
    assert prime_factors(15) == [3, 5]
    assert prime_factors(1024) == [2]
    assert prime_factors(255) == [3, 5, 17]
