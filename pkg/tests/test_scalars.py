"""Exact scalar domains: Q(i), quadratic extensions, GF(p)."""

import random
from fractions import Fraction

import pytest

from leibkit.scalars import (
    DenominatorDividesP,
    FieldMismatch,
    GaussianRational,
    PrimeField,
    QuadExtField,
    gaussian_sqrt,
    is_rational_square,
    quadext_sqrt,
    rational_sqrt,
    reduce_mod_p,
)


def rand_gaussian(rng):
    return GaussianRational(
        Fraction(rng.randint(-9, 9), rng.randint(1, 9)),
        Fraction(rng.randint(-9, 9), rng.randint(1, 9)),
    )


def test_gaussian_arithmetic_concrete():
    a = GaussianRational(1, 2)
    b = GaussianRational(3, -1)
    assert a + b == GaussianRational(4, 1)
    assert a - b == GaussianRational(-2, 3)
    assert a * b == GaussianRational(5, 5)
    assert -a == GaussianRational(-1, -2)
    assert a.conj() == GaussianRational(1, -2)


def test_gaussian_mixed_operands():
    a = GaussianRational(1, 1)
    assert a + 1 == GaussianRational(2, 1)
    assert 2 - a == GaussianRational(1, -1)
    assert Fraction(1, 2) * a == GaussianRational(Fraction(1, 2), Fraction(1, 2))
    assert 2 / a == GaussianRational(1, -1)
    assert GaussianRational(3) == 3
    assert a != "1+i"


def test_gaussian_inv_and_pow():
    a = GaussianRational(1, 1)
    assert a.inv() == GaussianRational(Fraction(1, 2), Fraction(-1, 2))
    assert a * a.inv() == GaussianRational(1)
    assert a ** 2 == GaussianRational(0, 2)
    assert a ** 0 == GaussianRational(1)
    assert a ** -2 == GaussianRational(0, Fraction(-1, 2))
    with pytest.raises(ZeroDivisionError):
        GaussianRational(0).inv()


def test_gaussian_immutable_and_hashable():
    a = GaussianRational(1, 2)
    with pytest.raises(AttributeError):
        a.re = Fraction(5)
    assert hash(a) == hash(GaussianRational(1, 2))
    assert len({a, GaussianRational(1, 2)}) == 1


def test_gaussian_field_axioms_random():
    rng = random.Random(101)
    for _ in range(40):
        a, b, c = (rand_gaussian(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        if not a.is_zero():
            assert a * a.inv() == GaussianRational(1)


def test_rational_square_helpers():
    assert is_rational_square(Fraction(9, 4))
    assert not is_rational_square(Fraction(2))
    assert not is_rational_square(Fraction(-1))
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(Fraction(2)) is None
    assert rational_sqrt(Fraction(0)) == 0


def test_gaussian_sqrt_concrete():
    assert gaussian_sqrt(GaussianRational(0, 2)) in (
        GaussianRational(1, 1), GaussianRational(-1, -1))
    r = gaussian_sqrt(GaussianRational(-4))
    assert r is not None and r * r == GaussianRational(-4)
    r = gaussian_sqrt(GaussianRational(5, 12))
    assert r is not None and r * r == GaussianRational(5, 12)
    assert gaussian_sqrt(GaussianRational(Fraction(9, 4))) == GaussianRational(Fraction(3, 2))
    assert gaussian_sqrt(GaussianRational(2)) is None
    assert gaussian_sqrt(GaussianRational(0, 1)) is None  # sqrt(i) leaves Q(i)


def test_gaussian_sqrt_random_squares():
    rng = random.Random(202)
    for _ in range(30):
        g = rand_gaussian(rng)
        r = gaussian_sqrt(g * g)
        assert r is not None and r * r == g * g


def test_quadext_field_rejects_squares():
    with pytest.raises(ValueError):
        QuadExtField(4)
    with pytest.raises(ValueError):
        QuadExtField(Fraction(9, 4))
    with pytest.raises(ValueError):
        QuadExtField(0)
    assert QuadExtField(2) == QuadExtField(2)
    assert QuadExtField(2) != QuadExtField(3)


def test_quadext_arithmetic():
    f = QuadExtField(2)
    s = f.sqrt_d
    one = f.one
    assert s * s == f.embed(2)
    assert (one + s) * (one - s) == f.embed(-1)
    x = one + s
    assert x.inv() == -one + s  # (1+s)(-1+s) = 2-1
    assert x * x.inv() == one
    assert x ** 2 == f.embed(3) + s * 2
    assert (x ** -1) * x == one


def test_quadext_sqrt():
    f = QuadExtField(2)
    x = f.embed(3) + f.sqrt_d * 2  # (1+sqrt2)^2
    r = quadext_sqrt(x)
    assert r is not None and r * r == x
    assert quadext_sqrt(f.embed(3)) is None
    assert quadext_sqrt(f.zero) == f.zero
    assert quadext_sqrt(f.embed(Fraction(1, 4))) == f.embed(Fraction(1, 2))


def test_quadext_field_mismatch():
    a = QuadExtField(2).sqrt_d
    b = QuadExtField(3).sqrt_d
    with pytest.raises(FieldMismatch):
        a + b
    with pytest.raises(FieldMismatch):
        a * b


def test_prime_field_construction():
    f = PrimeField(13)
    assert f.i_residue == 5 and (5 * 5) % 13 == 12
    assert PrimeField(29).i_residue == 12
    with pytest.raises(ValueError):
        PrimeField(7)  # 7 = 3 mod 4
    with pytest.raises(ValueError):
        PrimeField(15)


def test_prime_field_elements():
    f = PrimeField(13)
    a = f.elem(5)
    assert a.inv() == f.elem(8)
    assert a + 10 == f.elem(2)
    assert (a / f.elem(2)) * 2 == a
    assert a ** -1 == f.elem(8)
    with pytest.raises(ZeroDivisionError):
        f.zero.inv()


def test_reduce_mod_p_values():
    f = PrimeField(13)
    x = GaussianRational(Fraction(1, 2), 1)
    assert reduce_mod_p(x, f) == f.elem(7 + 5)
    with pytest.raises(DenominatorDividesP):
        reduce_mod_p(GaussianRational(Fraction(1, 13)), f)
    with pytest.raises(DenominatorDividesP):
        reduce_mod_p(GaussianRational(0, Fraction(2, 39)), f)


def test_reduce_mod_p_is_homomorphism():
    f = PrimeField(29)
    rng = random.Random(303)
    for _ in range(30):
        a, b = rand_gaussian(rng), rand_gaussian(rng)
        assert reduce_mod_p(a + b, f) == reduce_mod_p(a, f) + reduce_mod_p(b, f)
        assert reduce_mod_p(a * b, f) == reduce_mod_p(a, f) * reduce_mod_p(b, f)
