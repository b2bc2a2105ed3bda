import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lenseta.errors import NoNearbyRational, NotCoprime, PreconditionError
from lenseta.exactmath import (
    ResidueQmodZ,
    circle_distance,
    gcd_ext,
    mod_inverse,
    rational_reconstruct,
    residue,
    root_of_unity,
)

rationals = st.fractions(max_denominator=10**6).filter(lambda x: abs(x) < 10**9)


@pytest.mark.parametrize(
    "a, b, expected",
    [((0, 7), None, (7, 0, 1)), ((3, 10), None, (1, 7, -2)), ((6, 4), None, (2, 1, -1))],
)
def test_gcd_ext_examples(a, b, expected):
    assert gcd_ext(*a) == expected


def test_gcd_ext_degenerate():
    assert gcd_ext(0, 0) == (0, 0, 0)
    g, u, v = gcd_ext(-12, 0)
    assert g == 12 and u * -12 + v * 0 == 12


def test_gcd_ext_random_64bit():
    rng = random.Random(7)
    for _ in range(10_000):
        a = rng.randrange(-(2**63), 2**63)
        b = rng.randrange(-(2**63), 2**63)
        g, u, v = gcd_ext(a, b)
        assert g == math.gcd(a, b)
        assert u * a + v * b == g
        if g and b:
            assert 0 <= u < abs(b) // g


def test_mod_inverse_examples():
    assert mod_inverse(1, 9) == 1
    assert mod_inverse(3, 10) == 7
    with pytest.raises(NotCoprime):
        mod_inverse(2, 4)


def test_mod_inverse_exhaustive_small():
    rng = random.Random(3)
    for _ in range(3000):
        m = rng.randrange(1, 10**4 + 1)
        x = rng.randrange(-(10**6), 10**6)
        if math.gcd(x, m) != 1:
            continue
        d = mod_inverse(x, m)
        assert 0 <= d < m and (d * x) % m == 1 % m


@pytest.mark.parametrize(
    "r, expected",
    [(0, Fraction(0)), (Fraction(-21, 5), Fraction(4, 5)), (Fraction(7, 3), Fraction(1, 3))],
)
def test_residue_examples(r, expected):
    assert residue(r).value == expected


@given(rationals)
def test_residue_idempotent(r):
    once = residue(r)
    assert residue(once.value) == once
    assert 0 <= once.value < 1


def test_residue_additive_random():
    rng = random.Random(11)
    for _ in range(10_000):
        a = Fraction(rng.randrange(-(10**6), 10**6), rng.randrange(1, 10**4))
        b = Fraction(rng.randrange(-(10**6), 10**6), rng.randrange(1, 10**4))
        assert residue(a) + residue(b) == residue(a + b)
        assert -residue(a) == residue(-a)


def test_residue_signed_representative():
    assert ResidueQmodZ(Fraction(4, 5)).signed == Fraction(-1, 5)
    assert ResidueQmodZ(Fraction(1, 2)).signed == Fraction(1, 2)


def test_root_of_unity_examples():
    assert root_of_unity(7, 0) == 1
    assert root_of_unity(4, 1) == 1j
    z = root_of_unity(8, 1)
    assert z.real == pytest.approx(math.sqrt(0.5), abs=1e-15)
    assert z.imag == pytest.approx(math.sqrt(0.5), abs=1e-15)


@given(st.integers(1, 10**6), st.integers(-(10**12), 10**12))
def test_root_of_unity_periodic_and_unit(n, k):
    z = root_of_unity(n, k)
    assert abs(abs(z) - 1) < 1e-12
    assert root_of_unity(n, k + n) == z


def test_rational_reconstruct_examples():
    assert rational_reconstruct(0.25, 4, 1e-8) == Fraction(1, 4)
    assert rational_reconstruct(0.7999999999, 10, 1e-8) == Fraction(4, 5)
    with pytest.raises(NoNearbyRational):
        rational_reconstruct(0.123456, 4, 1e-8)


def test_rational_reconstruct_wraps_and_rejects_coarse_tol():
    assert rational_reconstruct(-0.2, 5, 1e-8) == Fraction(4, 5)
    assert rational_reconstruct(0.99999999999, 7, 1e-8) == 0
    with pytest.raises(PreconditionError):
        rational_reconstruct(0.5, 10, 0.01)


def test_circle_distance():
    assert circle_distance(0.999, 0.001) == pytest.approx(0.002)
    assert circle_distance(-0.2, 0.8) == pytest.approx(0.0)
