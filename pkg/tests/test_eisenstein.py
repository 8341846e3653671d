from __future__ import annotations


import pytest
from hypothesis import given, strategies as st

from eislat.eisenstein import (
    ONE,
    THETA,
    UNITS,
    ZERO,
    ZETA,
    EisensteinInt,
    EisensteinRational,
    canonical_associate,
    eis_arith,
    eis_content,
    eis_divmod,
    eis_gcd,
    eis_xgcd,
    is_theta_multiple,
)

from conftest import rand_eis

ints = st.integers(min_value=-10**6, max_value=10**6)
eis = st.builds(EisensteinInt, ints, ints)
small_eis = st.builds(EisensteinInt, st.integers(-60, 60), st.integers(-60, 60))


def E(a, b=0):
    return EisensteinInt(a, b)


class TestExamples:
    def test_theta_squared(self):
        assert eis_arith("mul", THETA, THETA) == E(-3, 0)

    def test_norm_two_plus_zeta(self):
        assert eis_arith("norm", E(2, 1)) == 3

    def test_conj_zeta(self):
        assert eis_arith("conj", ZETA) == E(-1, -1)

    def test_unit_test(self):
        assert eis_arith("unit_test", -ZETA)
        assert not eis_arith("unit_test", THETA)

    def test_divmod_exact(self):
        assert eis_divmod(E(1, 2), E(1, -1)) == (ZETA, ZERO)

    def test_divmod_rational_integers(self):
        q, r = eis_divmod(5, 2)
        assert q in (E(2), E(3)) and r.norm() == 1
        assert q * 2 + r == E(5)

    def test_divmod_unit_divisor(self):
        x = E(17, -4)
        assert eis_divmod(x, 1) == (x, ZERO)

    def test_divide_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            eis_divmod(E(1, 1), 0)

    def test_gcd_three_theta(self):
        g = eis_gcd(3, THETA)
        assert canonical_associate(THETA) == g
        assert g.norm() == 3

    def test_gcd_coprime(self):
        assert eis_gcd(2, 3) == ONE

    def test_gcd_self(self):
        x = E(-4, 7)
        assert eis_gcd(x, x) == canonical_associate(x)
        assert eis_gcd(x, 0) == canonical_associate(x)

    def test_gcd_both_zero(self):
        with pytest.raises(ValueError):
            eis_gcd(0, 0)


class TestStructure:
    def test_units_are_norm_one(self):
        assert len(set(UNITS)) == 6
        assert all(u.norm() == 1 and u.is_unit() for u in UNITS)
        # the only norm-1 elements in a generous box
        found = {E(a, b) for a in range(-3, 4) for b in range(-3, 4) if E(a, b).norm() == 1}
        assert found == set(UNITS)

    def test_zeta_relation(self):
        assert ZETA * ZETA + ZETA + ONE == ZERO

    def test_theta_conj(self):
        assert THETA.conj() == -THETA

    def test_theta_multiple(self):
        for a in range(-6, 7):
            for b in range(-6, 7):
                x = E(a, b)
                assert is_theta_multiple(x) == THETA.divides(x)

    def test_canonical_associate_is_unique(self):
        for a in range(-5, 6):
            for b in range(-5, 6):
                x = E(a, b)
                if not x:
                    continue
                cands = [u * x for u in UNITS if (u * x).is_canonical()]
                assert len(cands) == 1
                u, c = x.canonical()
                assert u * x == c == cands[0]

    def test_json(self):
        assert E(3, -2).to_json() == [3, -2]
        assert EisensteinInt.coerce([3, -2]) == E(3, -2)

    def test_immutable(self):
        with pytest.raises(AttributeError):
            E(1, 2).a = 5

    def test_content(self):
        assert eis_content([E(3), THETA * 2, ZERO]) == canonical_associate(THETA)
        assert eis_content([ZERO, ZERO]) == ZERO

    def test_rational_field(self):
        x = EisensteinRational(E(2, 4), 6)
        assert (x.num, x.den) == (E(1, 2), 3)
        assert x * x.inverse() == EisensteinRational(1)
        assert EisensteinRational(E(1, 1), -2).den == 2
        with pytest.raises(ZeroDivisionError):
            EisensteinRational(1, 0)


class TestRandomized:
    def test_thousand_divmods(self, rng):
        for _ in range(1500):
            a, b = rand_eis(rng), rand_eis(rng)
            if not b:
                continue
            q, r = eis_divmod(a, b)
            assert a == q * b + r
            assert r.norm() < b.norm()
            assert 4 * r.norm() <= 3 * b.norm()

    def test_thousand_ring_laws(self, rng):
        for _ in range(1000):
            x, y = rand_eis(rng), rand_eis(rng)
            assert (x * y).norm() == x.norm() * y.norm()
            assert (x * y).conj() == x.conj() * y.conj()

    def test_gcd_divides_and_is_maximal(self, rng):
        primes = [E(2), E(1, -1), E(2, -1), E(3, 1), E(4, 1), E(5)]
        for _ in range(300):
            common = ONE
            for _ in range(rng.randint(0, 3)):
                common = common * rng.choice(primes)
            a = common * rand_eis(rng, -9, 9)
            b = common * rand_eis(rng, -9, 9)
            if not a and not b:
                continue
            g = eis_gcd(a, b)
            assert g.divides(a) and g.divides(b)
            assert common.divides(g)

    def test_xgcd_bezout(self, rng):
        for _ in range(500):
            a, b = rand_eis(rng), rand_eis(rng)
            if not a and not b:
                continue
            g, x, y = eis_xgcd(a, b)
            assert x * a + y * b == g == eis_gcd(a, b)


@given(eis, eis, eis)
def test_ring_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x - x == ZERO


@given(eis, eis)
def test_norm_multiplicative(x, y):
    assert (x * y).norm() == x.norm() * y.norm()
    assert x.norm() >= 0 and (x.norm() == 0) == (not x)


@given(small_eis, small_eis)
def test_divmod_property(a, b):
    if b:
        q, r = eis_divmod(a, b)
        assert a == q * b + r and r.norm() < b.norm()


@given(small_eis)
def test_conj_involution(x):
    assert x.conj().conj() == x
    assert x * x.conj() == EisensteinInt(x.norm())


@given(small_eis)
def test_exact_div_roundtrip(x):
    y = x * THETA
    assert y.exact_div(THETA) == x
    assert is_theta_multiple(y)
