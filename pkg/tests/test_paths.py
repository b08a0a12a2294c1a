import pytest
import numpy as np
import algebroidpy as ag

from algebroidpy.tools import PathCrossesBranchSet, ProblemFileError


def test_segments():

    path = ag.PathSpec(1).arc(0, np.pi)
    assert path.end == pytest.approx(-1)
    assert path.length == pytest.approx(np.pi)
    seg = path.segments[0]
    assert seg.point(0.5) == pytest.approx(1j)
    assert seg.velocity(0) == pytest.approx(1j * np.pi)
    assert seg.distance(0) == pytest.approx(1)

    line = ag.PathSpec.straight(0, 1 + 1j)
    assert line.length == pytest.approx(np.sqrt(2))
    assert line.segments[0].velocity(0.3) == pytest.approx(1 + 1j)
    assert line.__repr__() == "PathSpec (1 segments, from 0j)"


def test_closed_and_reversed():

    circle = ag.PathSpec.circle(1j, 0.5)
    assert circle.start == pytest.approx(0.5 + 1j)
    assert circle.is_closed
    assert circle.length == pytest.approx(np.pi)

    path = ag.PathSpec(0).line(1).arc(0, np.pi / 2)
    rev = path.reversed()
    assert rev.start == pytest.approx(1j)
    assert rev.end == pytest.approx(0)
    assert not path.is_closed

    joined = path.concat(ag.PathSpec(path.end).line(0))
    assert joined.is_closed
    with pytest.raises(ValueError):
        path.concat(ag.PathSpec(5).line(0))


def test_dict_format():

    data = {'start': [0, 0],
            'segments': [{'type': 'line', 'to': [1, 0]},
                         {'type': 'arc', 'center': [0, 0], 'angle': np.pi}]}
    path = ag.PathSpec.from_dict(data)
    assert path.end == pytest.approx(-1)
    again = ag.PathSpec.from_dict(path.to_dict())
    assert again.end == pytest.approx(-1)
    assert len(again) == 2

    with pytest.raises(ProblemFileError):
        ag.PathSpec.from_dict({'segments': []})
    with pytest.raises(ProblemFileError):
        ag.PathSpec(0, [{'type': 'spiral'}])


def test_clearance():

    path = ag.PathSpec.straight(-1, 1)
    assert path.clearance([0.5j, 3]) == pytest.approx(0.5)
    path.min_clearance = 1
    with pytest.raises(PathCrossesBranchSet):
        path.check_clearance([0.5j])
    path.min_clearance = 0.1
    assert path.check_clearance([0.5j]) == pytest.approx(0.5)
    with pytest.raises(PathCrossesBranchSet):
        ag.PathSpec.straight(-1, 1).check_clearance([0])
