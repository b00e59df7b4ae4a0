from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from conftest import bipolys, unipolys
from quadcurves.algebra import (
    X,
    Y,
    BiPoly,
    UniPoly,
    as_fraction,
    bipoly_divmod,
    bipoly_evaluate,
    bipoly_exact_div,
    divergence,
    lie_derivative,
    poly_derivative,
)
from quadcurves.errors import DomainError


@settings(max_examples=60, deadline=None)
@given(bipolys, bipolys, bipolys)
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == BiPoly()
    assert f * 1 == f


@settings(max_examples=60, deadline=None)
@given(bipolys, bipolys)
def test_leibniz(f, g):
    for var in ("x", "y"):
        lhs = (f * g).derivative(var)
        assert lhs == f.derivative(var) * g + f * g.derivative(var)


@settings(max_examples=60, deadline=None)
@given(bipolys, bipolys)
def test_division_round_trip(f, g):
    if g.is_zero():
        return
    q, r = bipoly_divmod(f * g, g)
    assert r.is_zero()
    assert q == f
    assert bipoly_exact_div(f * g, g) == f


@settings(max_examples=40, deadline=None)
@given(bipolys, bipolys)
def test_divmod_reconstructs(f, g):
    if g.is_zero():
        return
    q, r = bipoly_divmod(f, g)
    assert q * g + r == f


def test_exact_div_examples():
    assert bipoly_exact_div(X**2 - Y**2, X - Y) == X + Y
    assert bipoly_exact_div(X**2 + 1, X) is None
    with pytest.raises(DomainError):
        bipoly_exact_div(X, BiPoly())


def test_lie_derivative_examples():
    # rotation field preserves x^2 + y^2
    P, Q = -Y, X
    assert lie_derivative(P, Q, X**2 + Y**2).is_zero()
    # x' = x, y' = 2y: g = y - x^2 has cofactor 2
    g = Y - X**2
    assert lie_derivative(X, Y.scale(2), g) == g.scale(2)
    assert divergence(X * Y, Y**2) == Y.scale(3)


def test_degree_conventions():
    assert BiPoly().total_degree == -1
    assert UniPoly().degree == -1
    assert (X**2 * Y + 3).total_degree == 3
    assert (X**2 * Y).degree_in("y") == 1


def test_from_y_coeffs_and_y_coeff():
    a0 = UniPoly((1, 2))
    a1 = UniPoly((F(1, 2), 0, 3))
    g = BiPoly.from_y_coeffs([a1, a0])
    assert g.y_coeff(1) == a0 and g.y_coeff(0) == a1
    assert g == Y * (1 + X.scale(2)) + F(1, 2) + (X**2).scale(3)


def test_evaluate_exact_and_float():
    g = X**2 - Y.scale(F(1, 3))
    assert bipoly_evaluate(g, F(1, 2), F(3)) == F(-3, 4)
    assert abs(bipoly_evaluate(g, 0.5, 3.0) + 0.75) < 1e-15
    assert UniPoly((1, 1))(F(2, 3)) == F(5, 3)


def test_floats_rejected():
    with pytest.raises(TypeError):
        as_fraction(0.5)


@settings(max_examples=40, deadline=None)
@given(unipolys, unipolys)
def test_unipoly_matches_bipoly(p, q):
    assert (p * q).to_bipoly() == p.to_bipoly() * q.to_bipoly()
    assert p.derivative().to_bipoly() == poly_derivative(p.to_bipoly())
