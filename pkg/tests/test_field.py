import pytest
import numpy as np
import algebroidpy as ag

from algebroidpy.field import z, arith, normalize
from algebroidpy.tools import (Pole, Indeterminate, DivisionByZeroFunction,
                               ParseError, BackendUnsupported)


def test_canonical_form():

    f = ag.RationalFunction(z**2 - 1, z - 1)
    assert f.numer.as_expr() == z + 1
    assert f.is_polynomial

    g = ag.RationalFunction(2 * z, 2 * z**2 + 2)
    assert g.denom.as_expr() == z**2 + 1
    assert g == ag.RationalFunction(z, z**2 + 1)
    assert normalize(g) == g


def test_parse_coefficient():

    c = ag.parse_coefficient('(z^2-1)/(z-1)')
    assert c.evaluate(1) == pytest.approx(2)
    c = ag.parse_coefficient('3/2 + 1i*z')
    assert c.evaluate(2) == pytest.approx(1.5 + 2j)
    c = ag.parse_coefficient(0.25)
    assert c == 0.25

    with pytest.raises(ParseError):
        ag.parse_coefficient('exp(z)')
    with pytest.raises(ParseError):
        ag.parse_coefficient('y*z')
    with pytest.raises(ParseError):
        ag.parse_coefficient('z', backend='other')


def test_poles():

    c = ag.parse_coefficient('1/z')
    with pytest.raises(Pole):
        c.evaluate(0)
    vals = c.values([0, 2])
    assert not np.isfinite(vals[0])
    assert vals[1] == pytest.approx(0.5)

    e = ag.parse_coefficient('sin(z)/z', backend='numeric')
    with pytest.raises(Indeterminate):
        e.evaluate(0)
    assert e.evaluate(1) == pytest.approx(np.sin(1))


def test_arithmetic():

    a = ag.parse_coefficient('z')
    b = ag.parse_coefficient('1/(z+1)')
    assert arith(a, b, 'add') == ag.RationalFunction(z**2 + z + 1, z + 1)
    assert arith(a, b, 'mul') == ag.RationalFunction(z, z + 1)
    assert arith(a, b, 'div') == ag.RationalFunction(z**2 + z)
    assert (a - a).is_zero
    assert (a ** -1).evaluate(4) == pytest.approx(0.25)

    with pytest.raises(DivisionByZeroFunction):
        a / (a - a)
    with pytest.raises(ValueError):
        arith(a, b, 'pow')

    e = ag.parse_coefficient('exp(z)', backend='numeric')
    with pytest.raises(BackendUnsupported):
        arith(a, e, 'add')
    assert (e * 2).evaluate(0) == pytest.approx(2)


def test_derivative_and_shift():

    c = ag.parse_coefficient('z^3')
    assert c.derivative() == ag.RationalFunction(3 * z**2)
    assert c.shift(1).evaluate(0) == pytest.approx(1)

    e = ag.parse_coefficient('exp(2*z)', backend='numeric')
    assert e.derivative().evaluate(0) == pytest.approx(2)
    assert e.shift(1).evaluate(0) == pytest.approx(np.exp(2))


def test_values_vectorized():

    e = ag.parse_coefficient('5', backend='numeric')
    vals = e.values(np.array([0, 1, 2j]))
    assert vals.shape == (3,)
    assert np.allclose(vals, 5)
