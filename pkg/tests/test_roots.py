import pytest
import numpy as np
import algebroidpy as ag

from algebroidpy.roots import polyval_asc, newton_polish, sylvester_det
from algebroidpy.tools import RootFindingFailure


def test_polyval_asc():
    assert polyval_asc([1, 2, 3], 2) == 17
    vals = polyval_asc(np.array([[1, 1], [0, 1]]), np.array([2, 3]))
    assert np.allclose(vals, [1, 4])


def test_aberth():

    roots = np.sort_complex(ag.aberth([-6, 11, -6, 1]))
    assert roots == pytest.approx([1, 2, 3])
    assert ag.aberth([2, 1]) == pytest.approx([-2])
    roots = ag.aberth([1, 0, 0, 0, 1])
    assert np.allclose(np.abs(roots), 1)
    assert np.allclose(roots ** 4, -1)

    with pytest.raises(RootFindingFailure):
        ag.aberth([1, 2, 0])


def test_newton_polish():
    roots = newton_polish([-2, 0, 1], [1.4, -1.4], steps=6)
    assert roots == pytest.approx([np.sqrt(2), -np.sqrt(2)])


def test_batch_roots():

    coeffs = np.array([[-1, -4], [0, 0], [1, 1]])
    roots = ag.batch_roots(coeffs)
    assert roots.shape == (2, 2)
    assert np.sort(roots[0].real) == pytest.approx([-1, 1])
    assert np.sort(roots[1].real) == pytest.approx([-2, 2])

    # Vanishing leading coefficient
    roots = ag.batch_roots(np.array([[-1, -1], [0, 0], [1, 0]]))
    assert np.all(np.isfinite(roots[0]))
    assert not np.any(np.isfinite(roots[1]))


def test_sylvester_det():
    p = np.array([[-1], [0], [1]])
    assert sylvester_det(p, np.array([[-2], [1]]))[0] == pytest.approx(3)
    assert sylvester_det(p, np.array([[-1], [1]]))[0] == pytest.approx(0)


def test_zeros_in_disk():

    zeros = ag.zeros_in_disk(lambda z: z ** 2 * (z - 0.5), 1)
    assert len(zeros) == 2
    assert abs(zeros[0][0]) < 1e-6
    assert zeros[0][1] == 2
    assert zeros[1][0] == pytest.approx(0.5)
    assert zeros[1][1] == 1

    zeros = ag.zeros_in_disk(lambda z: np.exp(z) - 2, 1)
    assert len(zeros) == 1
    assert zeros[0][0] == pytest.approx(np.log(2))

    assert ag.zeros_in_disk(lambda z: z - 3, 1) == []
    zeros = ag.zeros_in_disk(lambda z: z - 3, 1, center=3 + 0.5j)
    assert zeros[0][0] == pytest.approx(3)
