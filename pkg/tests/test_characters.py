"""Gauss sums: the psi character and the scalar Weil index gamma."""

import numpy as np
import pytest

from weilchar.characters import AdditiveCharacter, approx_eq
from weilchar.errors import ZeroFormClass
from weilchar.field import Fp, SquareClass

# gamma(1) from the classical Gauss sum: sum psi(x^2) is sqrt(p) for
# p = 1 mod 4 and i sqrt(p) for p = 3 mod 4, twisted by legendre((p+1)/2).
GAMMA_ONE = {3: -1j, 5: -1, 7: 1j, 11: -1j, 13: -1, 17: 1}


def test_psi_is_additive_and_periodic():
    ch = AdditiveCharacter(Fp(7))
    for a in range(14):
        for b in range(14):
            assert approx_eq(ch.psi(a) * ch.psi(b), ch.psi(a + b), 1e-12)
    assert approx_eq(ch.psi(7), 1.0, 1e-12)
    assert abs(ch.psi(1) - 1.0) > 0.5  # nontrivial


def test_psi_scale_twists_the_argument():
    f = Fp(11)
    base = AdditiveCharacter(f)
    twisted = AdditiveCharacter(f, 4)
    for x in range(11):
        assert approx_eq(twisted.psi(x), base.psi(4 * x), 1e-12)
    with pytest.raises(ValueError):
        AdditiveCharacter(f, 0)
    with pytest.raises(ValueError):
        AdditiveCharacter(f, 22)


def test_psi_array_matches_scalar_psi():
    ch = AdditiveCharacter(Fp(13), 2)
    xs = np.arange(40)
    arr = ch.psi_array(xs)
    for i, x in enumerate(xs):
        assert approx_eq(arr[i], ch.psi(int(x)), 1e-12)


@pytest.mark.parametrize("p", sorted(GAMMA_ONE))
def test_gamma_one_frozen_values(p):
    ch = AdditiveCharacter(Fp(p))
    assert abs(ch.gamma(1) - GAMMA_ONE[p]) < 1e-12


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_gamma_unit_modulus(p):
    ch = AdditiveCharacter(Fp(p))
    for a in range(1, p):
        assert abs(abs(ch.gamma(a)) - 1.0) < 1e-10


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_gamma_product_rule(p):
    ch = AdditiveCharacter(Fp(p))
    for a in range(1, p):
        for b in range(1, p):
            lhs = ch.gamma(a) * ch.gamma(b)
            rhs = ch.gamma(1) * ch.gamma(a * b % p)
            assert approx_eq(lhs, rhs, 1e-10)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_gamma_depends_only_on_square_class(p):
    ch = AdditiveCharacter(Fp(p))
    for a in range(1, p):
        for s in range(1, p):
            assert approx_eq(ch.gamma(a), ch.gamma(a * s * s % p), 1e-10)
        cls = SquareClass.of(ch.field, a)
        assert approx_eq(ch.gamma_class(cls), ch.gamma(a), 1e-12)


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_chi_equals_legendre(p):
    f = Fp(p)
    ch = AdditiveCharacter(f)
    for a in range(1, p):
        chi = ch.chi(a)
        assert abs(chi.imag) < 1e-10
        assert round(chi.real) == f.legendre(a)


def test_gamma_one_squared_is_chi_minus_one():
    for p in (3, 5, 7, 11, 13, 17):
        f = Fp(p)
        ch = AdditiveCharacter(f)
        assert approx_eq(ch.gamma(1) ** 2, f.legendre(-1), 1e-10)


def test_gamma_rejects_zero():
    ch = AdditiveCharacter(Fp(5))
    with pytest.raises(ZeroFormClass):
        ch.gamma(0)
    with pytest.raises(ZeroFormClass):
        ch.gamma(10)


def test_character_equality_and_hash():
    f = Fp(7)
    assert AdditiveCharacter(f, 3) == AdditiveCharacter(f, 10)
    assert AdditiveCharacter(f, 3) != AdditiveCharacter(f, 2)
    assert hash(AdditiveCharacter(f, 3)) == hash(AdditiveCharacter(f, 3))


def test_gamma_under_scale_twist():
    # twisting psi by s multiplies the form by s inside gamma
    f = Fp(11)
    base = AdditiveCharacter(f)
    for s in (2, 3, 7):
        tw = AdditiveCharacter(f, s)
        for a in range(1, 11):
            assert approx_eq(tw.gamma(a), base.gamma(a * s % 11), 1e-10)
