import pytest
import algebroidpy as ag

from algebroidpy.tools import *


def test_InfoStr():
    assert InfoStr('yay').__repr__() == 'yay'


def test_make_list():

    make_list = ag.tools.make_list
    assert make_list('123') == ['123']
    assert make_list(['123']) == ['123']
    assert make_list((1, 2)) == [1, 2]
    assert make_list(None) == []
    assert make_list(None, keep_none=True) == [None]


def test_parse_complex():

    assert parse_complex('4+0i') == 4
    assert parse_complex('-1.5j') == -1.5j
    assert parse_complex('i') == 1j
    assert parse_complex('-i') == -1j
    assert parse_complex([1, 2]) == 1 + 2j
    assert parse_complex(3) == 3 + 0j

    with pytest.raises(ParseError):
        parse_complex('abc')
    with pytest.raises(ParseError):
        parse_complex([1, 2, 3])


def test_cluster_points():

    merged = cluster_points([2, 1, 1 + 1e-12])
    assert len(merged) == 2
    assert merged[0][0] == pytest.approx(1)
    assert merged[0][1] == 2
    assert merged[1] == (2, 1)

    merged = cluster_points([0.5j, 0.5j], weights=[2, 3])
    assert merged == [(0.5j, 5)]


def test_attr_dict():

    ad = ag.AttrDict({'a': 1})
    ad.b = 2

    assert ad.a == 1
    assert ad.b == 2
    assert ad.a == ad['a']
    assert ad.b == ad['b']
    assert ad._short_repr() == "AttrDict (2 entries)"
    assert AttrDict(None) == {}  # Initialize with None

    del ad.b
    assert 'b' not in ad
    with pytest.raises(AttributeError):
        ad.c


def test_errors():

    assert issubclass(ag.Pole, ag.AlgebroidError)
    assert issubclass(ag.QuadratureBudgetExceeded, ag.AlgebroidError)
    assert issubclass(ag.ProblemFileError, ag.AlgebroidError)
