from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from eislat.constructions import XS, chordal_cubic
from eislat.polynomial import Polynomial, UnknownVariable, poly_arith

V = ("x", "y", "z")
x, y, z = Polynomial.gens(V)


@st.composite
def polys(draw):
    n = draw(st.integers(0, 4))
    terms = {}
    for _ in range(n):
        e = tuple(draw(st.integers(0, 3)) for _ in V)
        terms[e] = draw(st.integers(-5, 5))
    return Polynomial(V, terms)


def test_difference_of_squares():
    assert poly_arith("mul", x + y, x - y) == x**2 - y**2


def test_partial_of_chordal_cubic():
    x0, x1, x2, x3, x4 = Polynomial.gens(XS)
    want = -x0 * x4 + 3 * x2**2 - 2 * x1 * x3
    assert poly_arith("partial_derivative", chordal_cubic(), "x2") == want


def test_substitute_zero():
    p = x * y + y
    assert poly_arith("substitute", p, {"x": 0}) == Polynomial.var(("y", "z"), "y")


def test_simultaneous_substitution():
    p = x - y
    assert p.substitute({"x": y, "y": x}) == y - x


def test_unknown_variable():
    with pytest.raises(UnknownVariable):
        x.partial_derivative("w")
    with pytest.raises(UnknownVariable):
        x.substitute({"w": y})
    with pytest.raises(UnknownVariable):
        Polynomial.var(V, "w")
    with pytest.raises(ValueError):
        poly_arith("divide", x, y)


def test_no_zero_coefficients():
    p = Polynomial(V, {(1, 0, 0): 2, (0, 1, 0): 0})
    assert p.terms == {(1, 0, 0): 2}
    assert (x - x).is_zero() and (x - x).terms == {}
    with pytest.raises(ValueError):
        Polynomial(V, {(1, 0): 1})


def test_str_and_degree():
    assert str(x**2 - 2 * y + 1) == "x^2 - 2*y + 1"
    assert (x * y * z).degree() == 3 and Polynomial(V).degree() == -1


def test_evaluate():
    assert (x**2 * y + 3).evaluate({"x": 2, "y": -1, "z": 0}) == -1


@settings(max_examples=80, deadline=None)
@given(polys(), polys(), polys())
def test_ring_laws(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p * q == q * p
    assert p - p == Polynomial(V)


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3))
def test_substitution_is_a_homomorphism(p, q, a, b, c):
    vals = {"x": a, "y": b, "z": c}
    assert (p * q).evaluate(vals) == p.evaluate(vals) * q.evaluate(vals)
    img = (p * q).substitute({"x": a, "y": b, "z": c})
    assert img.is_zero() or img.degree() == 0
    assert img == (p * q).evaluate(vals)


@settings(max_examples=60, deadline=None)
@given(polys(), polys())
def test_leibniz(p, q):
    d = lambda f: f.partial_derivative("x")  # noqa: E731
    assert d(p * q) == d(p) * q + p * d(q)
