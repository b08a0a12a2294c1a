import pytest
import numpy as np
import algebroidpy as ag

from algebroidpy.tools import TargetDegenerate, ParseError


def test_parse():

    t = ag.HyperplaneTarget.parse('value:2')
    assert t.vector == pytest.approx(np.array([-2, 1]) / np.sqrt(5))
    assert t.label == '2'
    assert t.n == 1
    i, v = t.coordinate_value()
    assert i == 1
    assert v == pytest.approx(2)

    inf = ag.HyperplaneTarget.parse('value:inf')
    assert inf.label == 'inf'
    assert inf.coordinate_value() == (0, np.inf)

    c = ag.HyperplaneTarget.parse('value:1+1i')
    assert c.label == '1+1i'
    assert c.coordinate_value()[1] == pytest.approx(1 + 1j)

    zero = ag.HyperplaneTarget.parse({'value': 0})
    assert zero.coordinate_value() == (1, 0)

    v = ag.HyperplaneTarget.parse({'vector': [1, 1, 1]})
    assert v.n == 2
    assert v.coordinate_value() is None
    assert ag.HyperplaneTarget.parse([1, 0]) == inf

    w2 = ag.HyperplaneTarget.from_value(2, n=2, coordinate=2)
    assert w2.label == 'W2=2'
    i, v = w2.coordinate_value()
    assert i == 2
    assert v == pytest.approx(2)

    labels = [t.label for t in ag.as_targets(['value:0', 'value:inf'])]
    assert labels == ['0', 'inf']


def test_errors():

    with pytest.raises(TargetDegenerate):
        ag.HyperplaneTarget([0, 0])
    with pytest.raises(TargetDegenerate):
        ag.HyperplaneTarget([1])
    with pytest.raises(ParseError):
        ag.HyperplaneTarget.parse('point:2')
    with pytest.raises(ParseError):
        ag.HyperplaneTarget.parse('value:z')
    with pytest.raises(ParseError):
        ag.HyperplaneTarget.parse({'other': 1})


def test_potential():

    t = ag.HyperplaneTarget.parse('value:2')
    zeta = np.array([[1, 0], [2, 0]])  # Scale invariant
    assert t.potential(zeta) == pytest.approx([0.5 * np.log(5 / 4)] * 2)
    assert t.potential([1, 2]) == np.inf

    inf = ag.HyperplaneTarget.parse('value:inf')
    assert inf.potential([1, 3]) == pytest.approx(0.5 * np.log(10))
    assert np.all(inf.potential(np.random.rand(10, 2)) >= 0)
    assert t.pairing([1, 0]) == pytest.approx(-2 / np.sqrt(5))


def test_green_kernel():

    g = ag.GreenKernel(2)
    assert g(1) == pytest.approx(np.log(2) / np.pi)
    assert g(2) == pytest.approx(0)
    assert g.boundary_average(lambda z: np.abs(z) ** 2) == pytest.approx(4)
    assert g.boundary_average(lambda z: z, n=64) == pytest.approx(0, abs=1e-12)
    assert abs(g.boundary_points(8, offset=0.3)).max() == pytest.approx(2)
    with pytest.raises(ValueError):
        ag.GreenKernel(0)
