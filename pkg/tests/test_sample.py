import pytest
import numpy as np
import algebroidpy as ag


def test_repr():
    grid = ag.RadiusGrid(2, 100, 40)
    assert grid.__repr__() == \
        "RadiusGrid (40 log-spaced radii from 2.0 to 100.0)"


def test_values():

    grid = ag.RadiusGrid(10, 1000, 3)
    assert list(grid) == pytest.approx([10, 100, 1000])
    assert len(grid) == 3

    grid = ag.RadiusGrid(1, 5, 5, method='linear')
    assert list(grid) == [1, 2, 3, 4, 5]
    assert list(ag.RadiusGrid(1, 5, 1)) == [5]

    grid = ag.RadiusGrid(10, 1e4, 40)
    assert np.all(np.diff(grid.values) > 0)
    assert grid.values[0] == 10
    assert grid.values[-1] == pytest.approx(1e4)
    assert len(grid.top()) == 4
    assert len(ag.RadiusGrid(1, 2, 3).top()) == 1


def test_dict():
    grid = ag.RadiusGrid(3, 30, 7, 'linear')
    assert ag.RadiusGrid.from_dict(grid.to_dict()) == grid
    assert ag.RadiusGrid.from_dict({}) == ag.RadiusGrid()
    assert grid != ag.RadiusGrid(3, 30, 8, 'linear')


def test_errors():
    with pytest.raises(ValueError):
        ag.RadiusGrid(10, 1)
    with pytest.raises(ValueError):
        ag.RadiusGrid(0, 1)
    with pytest.raises(ValueError):
        ag.RadiusGrid(1, 10, 0)
    with pytest.raises(ValueError):
        ag.RadiusGrid(1, 10, 5, method='random')
