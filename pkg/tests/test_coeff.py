"""Field arithmetic, extensions, and univariate factorization."""

import random
from fractions import Fraction

import pytest

from gradedmod.coeff import (
    QQ,
    ExtensionField,
    PrimeField,
    UniPoly,
    default_extension,
    extend_field,
    factor_squarefree_unipoly,
    is_irreducible,
    is_prime,
    parse_field,
)
from gradedmod.errors import DivisionByZero, ReducibleModulus


def gf4():
    return parse_field("GF(2^2; w^2+w+1)")


class TestBasicArithmetic:
    def test_rational_add(self):
        assert QQ(Fraction(1, 3)) + QQ(Fraction(1, 6)) == QQ(Fraction(1, 2))

    def test_gf7_inverse(self):
        F = PrimeField(7)
        assert F(3).inv() == F(5)
        assert F(3) * F(5) == F.one

    def test_gf4_generator_square(self):
        F = gf4()
        w = F.gen
        assert w * w == w + F.one

    def test_division_by_zero(self):
        F = PrimeField(7)
        with pytest.raises(DivisionByZero):
            F.zero.inv()
        with pytest.raises(DivisionByZero):
            QQ.zero.inv()

    def test_pow_negative(self):
        F = PrimeField(5)
        assert F(2) ** -1 == F(3)
        assert F(2) ** 0 == F.one


def random_element(field, rng):
    if field is QQ:
        return field(Fraction(rng.randrange(-9, 10), rng.randrange(1, 10)))
    return field(rng.randrange(field.order))


@pytest.mark.parametrize("field", [QQ, PrimeField(2), PrimeField(7),
                                   default_extension(3, 2)])
def test_field_axioms_random(field):
    """Associativity, commutativity, distributivity, inverses; seeded triples."""
    rng = random.Random(11)
    for _ in range(250):
        a = random_element(field, rng)
        b = random_element(field, rng)
        c = random_element(field, rng)
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert a + (-a) == field.zero
        assert a * field.one == a
        if a:
            assert a * a.inv() == field.one


@pytest.mark.parametrize("field", [PrimeField(5), default_extension(2, 3)])
def test_fermat(field):
    q = field.order
    for raw in field.elements():
        a = field(raw) if not hasattr(raw, "field") else raw
        assert a ** q == a


class TestFactorization:
    def test_char2_square(self):
        F = PrimeField(2)
        f = UniPoly(F, [F.one, F.zero, F.one])  # X^2 + 1
        fac = factor_squarefree_unipoly(f)
        assert fac == [(UniPoly(F, [F.one, F.one]), 2)]

    def test_irreducible_quadratic(self):
        F = PrimeField(2)
        f = UniPoly(F, [F.one, F.one, F.one])  # X^2 + X + 1
        assert is_irreducible(f)
        assert factor_squarefree_unipoly(f) == [(f, 1)]

    def test_split_cubic_gf3(self):
        F = PrimeField(3)
        # X^3 - X = X (X+1) (X+2)
        f = UniPoly(F, [F.zero, F(-1), F.zero, F.one])
        fac = factor_squarefree_unipoly(f)
        expect = sorted([UniPoly(F, [F.zero, F.one]),
                         UniPoly(F, [F.one, F.one]),
                         UniPoly(F, [F(2), F.one])],
                        key=lambda g: [c.value for c in g.coeffs])
        assert [g for g, _ in fac] == expect
        assert all(m == 1 for _, m in fac)

    def test_reconstruction_random(self):
        """Factor random polynomials and multiply the factors back."""
        rng = random.Random(7)
        for p in (2, 3, 5):
            F = PrimeField(p)
            for _ in range(60):
                deg = rng.randrange(1, 9)
                coeffs = [F(rng.randrange(p)) for _ in range(deg)] + [F.one]
                f = UniPoly(F, coeffs)
                fac = factor_squarefree_unipoly(f, seed=rng.randrange(1000))
                prod = UniPoly.constant(F, f.leading())
                for g, mult in fac:
                    assert is_irreducible(g)
                    assert g.leading() == F.one
                    for _ in range(mult):
                        prod = prod * g
                assert prod == f

    def test_extension_field_factor(self):
        F = gf4()
        w = F.gen
        # (X - w)(X - w^2) = X^2 + X + 1 over GF(4)
        f = UniPoly(F, [F.one, F.one, F.one])
        fac = factor_squarefree_unipoly(f)
        roots = sorted([(-g.coeffs[0]).value for g, _ in fac])
        assert len(fac) == 2
        assert roots == sorted([w.value, (w * w).value])


class TestExtensions:
    def test_build_gf4(self):
        F = gf4()
        assert F.order == 4
        assert F.char == 2

    def test_build_gf9(self):
        F3 = PrimeField(3)
        t2_plus_1 = UniPoly(F3, [F3.one, F3.zero, F3.one])
        # no root in GF(3): brute check backs the irreducibility claim
        assert all(t2_plus_1.evaluate(F3(a)) for a in range(3))
        F9 = extend_field(F3, t2_plus_1)
        assert F9.order == 9
        assert F9.gen * F9.gen == F9(-1)

    def test_reducible_modulus_rejected(self):
        F2 = PrimeField(2)
        x_sq = UniPoly(F2, [F2.zero, F2.zero, F2.one])
        with pytest.raises(ReducibleModulus):
            extend_field(F2, x_sq)

    def test_tower_flattening(self):
        """GF(4) extended by a degree-2 irreducible gives GF(16) over GF(2)."""
        F4 = gf4()
        w = F4.gen
        # find an irreducible quadratic over GF(4)
        cand = None
        for a_raw in F4.elements():
            a = F4(a_raw) if not hasattr(a_raw, "field") else a_raw
            f = UniPoly(F4, [w, a, F4.one])
            if is_irreducible(f):
                cand = f
                break
        assert cand is not None
        F16 = extend_field(F4, cand)
        assert F16.order == 16
        assert F16.char == 2
        assert F16.k == 4  # flattened over the prime field

    def test_embedding_is_ring_hom(self):
        F4 = gf4()
        w = F4.gen
        f = UniPoly(F4, [w, F4.one, F4.one])
        if not is_irreducible(f):
            f = UniPoly(F4, [w * w, w, F4.one])
        assert is_irreducible(f)
        F16 = extend_field(F4, f)
        rng = random.Random(3)
        elems = [F4(rng.randrange(4)) for _ in range(20)]
        for a, b in zip(elems, elems[1:]):
            assert F16.embed(a * b) == F16.embed(a) * F16.embed(b)
            assert F16.embed(a + b) == F16.embed(a) + F16.embed(b)
        assert F16.embed(F4.one) == F16.one
        # the adjoined root satisfies the modulus inside the flat field
        root = F16.adjoined_root
        acc = F16.zero
        for i, c in enumerate(f.coeffs):
            acc = acc + F16.embed(c) * root ** i
        assert acc == F16.zero


class TestParsing:
    def test_parse_q(self):
        assert parse_field("Q") is QQ

    def test_parse_prime(self):
        assert parse_field("GF(7)") == PrimeField(7)

    def test_parse_extension(self):
        F = parse_field("GF(2^2; w^2+w+1)")
        assert isinstance(F, ExtensionField)
        assert F.order == 4

    def test_default_extension_sizes(self):
        for p, e in ((2, 2), (2, 3), (3, 2), (5, 2)):
            F = default_extension(p, e)
            assert F.order == p ** e


def test_is_prime():
    assert is_prime(2) and is_prime(7) and is_prime(97)
    assert not is_prime(1) and not is_prime(91) and not is_prime(2 ** 16)
    assert is_prime(2 ** 31 - 1)
