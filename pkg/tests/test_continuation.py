import pytest
import numpy as np
import algebroidpy as ag

from fractions import Fraction
from algebroidpy.tools import (NearCritical, PoleAtBase,
                               LoopContainsOtherBranchPoints)


sqrt = ag.examples.root(2)


def test_solve_fiber():

    fiber = ag.solve_fiber(sqrt, 4)
    assert fiber.values[:, 0] == pytest.approx([-2, 2])
    assert len(fiber) == 2
    assert fiber.d == 1
    assert fiber.min_separation == pytest.approx(4)
    assert fiber.__repr__() == "Fiber (2 sheets at z=(4+0j))"
    assert fiber.to_dict()['values'][1][0] == pytest.approx([2, 0])

    fiber = ag.solve_fiber(ag.examples.plane_pair(), '4')
    assert fiber.values.shape == (2, 2)
    assert fiber.values[:, 1] == pytest.approx([5, 5])

    with pytest.raises(NearCritical):
        ag.solve_fiber(sqrt, 0)
    with pytest.raises(PoleAtBase):
        ag.solve_fiber(ag.examples.pole_curve(), 2)


def test_match():

    a = ag.solve_fiber(sqrt, 4)
    b = ag.Fiber(4, [a.component_roots[0][::-1]])
    assert a.match(b) == [1, 0]


def test_track():

    start = ag.solve_fiber(sqrt, 1)
    path = ag.PathSpec(1).arc(0, np.pi)
    end = ag.track(sqrt, path, start)
    assert end.base_point == pytest.approx(-1)
    assert end[1][0] == pytest.approx(1j)
    assert end[0][0] == pytest.approx(-1j)

    with pytest.raises(ValueError):
        ag.track(sqrt, ag.PathSpec(2).line(3), start)


def test_monodromy():

    perm = ag.monodromy(sqrt, 0)
    assert perm.permutation == (1, 0)
    assert perm.cycle_lengths == (2, )
    assert perm.order == 1
    assert perm.l == 1
    assert perm.loop_radius == pytest.approx(0.5)
    assert perm.then(perm) == (0, 1)

    perm = ag.monodromy(ag.examples.root(3), 0)
    assert perm.cycle_lengths == (3, )
    assert perm.order == 2

    perm = ag.monodromy(ag.examples.reducible(), 0)
    assert perm.is_identity
    assert perm.cycle_lengths == (1, 1)
    assert perm.order == 0

    assert ag.branch_order(ag.examples.cusp(), 0) == (1, (2, ))

    two = ag.examples.regression_curves()['two_branch']
    with pytest.raises(LoopContainsOtherBranchPoints):
        ag.monodromy(two, 0, radius=2)


def test_generators():

    two = ag.examples.regression_curves()['two_branch']
    crit = ag.critical_data(two, 2)
    base, gens = ag.monodromy_generators(two, crit)
    assert len(gens) == 2
    assert all(g.permutation == (1, 0) for g in gens)
    assert ag.compose(gens) == (0, 1)
    assert ag.sheet_orbits(gens, 2) == [[0, 1]]
    assert ag.is_irreducible(two, 2)
    assert not ag.is_irreducible(ag.examples.reducible(), 2)

    assert ag.compose([], nu=3) == (0, 1, 2)
    assert ag.sheet_orbits([(1, 0, 2)], 3) == [[0, 1], [2]]

    path = ag.lasso_path(2, 0, 0.5)
    assert path.is_closed
    assert path.clearance([0]) == pytest.approx(0.5)


def test_puiseux():

    series, = ag.puiseux_expand(sqrt, 0, n_terms=1)
    assert series.ramification == 2
    assert series.exponents == (Fraction(1, 2), )
    assert series.coefficients[0] == pytest.approx(1)
    assert series.leading_exponent == Fraction(1, 2)
    assert series.evaluate(0.25) == pytest.approx(0.5)
    assert series.conjugates(0.25) == pytest.approx([0.5, -0.5])

    series, = ag.puiseux_expand(ag.examples.cusp(), 0, n_terms=None)
    assert series.exponents == (0, Fraction(3, 2))
    assert series.coefficients == pytest.approx((1, 1))
    assert series.valuation == 0
    assert series.leading_exponent == Fraction(3, 2)
    assert series.truncated(1).exponents == (0, )

    series = ag.puiseux_expand(ag.examples.reducible(), 0)
    assert [s.ramification for s in series] == [1, 1]
    assert sorted(s.coefficients[0].real for s in series) \
        == pytest.approx([-1, 1])


@pytest.mark.parametrize('nu', [2, 3, 4, 5, 6])
def test_monodromy_roots(nu):

    curve = ag.examples.root(nu)
    perm = ag.monodromy(curve, 0)
    assert perm.cycle_lengths == (nu, )
    assert perm.order == nu - 1
    assert ag.is_irreducible(curve, 2) is True


@pytest.mark.parametrize('curve, n_terms', [
    (ag.examples.root(2), 1),
    (ag.examples.root(3), 1),
    (ag.examples.cusp(), 3),
])
@pytest.mark.parametrize('rho', [1e-2, 1e-3])
def test_puiseux_matches_tracked_roots(curve, n_terms, rho):

    series, = ag.puiseux_expand(curve, 0, n_terms=n_terms)
    critical = ag.critical_data(curve, 1)
    start = ag.solve_fiber(curve, 0.5)
    for angle in [0.5, np.pi / 2, 2.5]:
        path = ag.PathSpec(0.5).line(rho).arc(0, angle)
        end = ag.track(curve, path, start, critical=critical)
        tracked = np.sort_complex(end.values[:, 0])
        expanded = np.sort_complex(
            np.asarray(series.conjugates(end.base_point)))
        assert expanded == pytest.approx(tracked, abs=1e-8)
