import pytest
import json
import numpy as np
import algebroidpy as ag

from fractions import Fraction
from algebroidpy.tools import TargetDegenerate, PathCrossesBranchSet


sqrt = ag.examples.root(2)


def test_build_covering():

    model = ag.build_covering(sqrt, 2)
    assert model.sheet_count == 2
    assert len(model.branch_records) == 1
    rec = model.branch_records[0]
    assert abs(rec.point) < 1e-12
    assert rec.cycle_lengths == (2,)
    assert rec.order == 1
    assert abs(model.base_point) < 2
    assert len(model.generators) == 1
    assert model.generators[0].cycle_lengths == (2,)
    assert model.__repr__() == "CoveringModel (ν=2, 1 branch points, " \
                               "radius 2.0)"

    # Branch divisor
    div = model.branch_divisor
    assert isinstance(div, ag.BranchDivisor)
    assert div.total == 1
    assert div.order_at(0) == 1

    # Single-valued curves have no branch points
    model = ag.build_covering(ag.examples.identity(), 5)
    assert model.branch_records == []
    assert model.generators == []

    # Multiple points without ramification
    model = ag.build_covering(ag.examples.reducible(), 2)
    assert model.branch_records == []
    assert len(model.critical.multiple_points) == 1

    model = ag.build_covering(ag.examples.root(3), 2, generators=False)
    assert model.branch_records[0].cycle_lengths == (3,)
    assert model.branch_records[0].order == 2
    assert model.generators is None


def test_lift_evaluate():

    model = ag.build_covering(ag.examples.identity(), 5)
    assert model.lift_evaluate(0, 1 + 1j)[0] == pytest.approx(1 + 1j)
    assert ag.lift_evaluate(model, 0, '-2')[0] == pytest.approx(-2)

    model = ag.build_covering(sqrt, 2)
    values = [model.lift_evaluate(s, 1)[0] for s in range(2)]
    assert sorted(v.real for v in values) == pytest.approx([-1, 1])

    # Path hints are appended to the default path
    hint = ag.PathSpec(1).arc(0, np.pi)
    w = model.lift_evaluate(0, -1, path_hint=hint)[0]
    assert abs(w.real) == pytest.approx(0, abs=1e-8)
    assert abs(w.imag) == pytest.approx(1)

    with pytest.raises(ValueError):
        model.lift_evaluate(0, 2j, path_hint=hint)
    with pytest.raises(PathCrossesBranchSet):
        model.lift_evaluate(0, 0)


def test_value_divisor_exact():

    div = ag.value_divisor(sqrt, 'value:0', 2)
    assert len(div) == 1
    assert div.order_at(0) == 1
    assert div.target == '0'
    assert div.identically_zero is False

    div = ag.value_divisor(sqrt, 'value:1', 2)
    assert div.order_at(1) == 1
    assert div.within(1).points == ()
    assert div.within(1).disk_radius == 1

    assert ag.value_divisor(sqrt, 'value:inf', 2).total == 0

    # Poles are the zeros of the leading coefficient
    div = ag.value_divisor(ag.examples.pole_curve(), 'value:inf', 3)
    assert div.order_at(2) == 1
    assert ag.value_divisor(ag.examples.pole_curve(), 'value:inf', 1.5) \
        .total == 0

    # Both sheets of W² = z² vanish at the origin
    reducible = ag.examples.reducible()
    assert ag.value_divisor(reducible, 'value:0', 2).order_at(0) == 2
    div = ag.value_divisor(reducible, 'value:1', 2)
    assert div.total == 2
    assert sorted(p.real for p, _ in div) == pytest.approx([-1, 1])

    d = div.to_dict()
    assert d['target'] == '1'
    assert len(d['points']) == 2

    with pytest.raises(TargetDegenerate):
        ag.value_divisor(ag.examples.constant(5), 'value:5', 2)
    with pytest.raises(TargetDegenerate):
        ag.value_divisor(sqrt, ag.HyperplaneTarget([1, 0, 0]), 2)


def test_value_divisor_numeric():

    exp = ag.examples.exponential()
    div = ag.value_divisor(exp, 'value:1', 7)
    assert div.total == 3
    points = sorted(div.points, key=lambda x: x[0].imag)
    assert [p for p, _ in points] == pytest.approx(
        [-2j * np.pi, 0, 2j * np.pi], abs=1e-6)
    assert ag.value_divisor(exp, 'value:0', 7).total == 0

    # Hyperplanes of the projective plane
    div = ag.value_divisor(ag.examples.plane_pair(),
                           ag.HyperplaneTarget.parse('value:2', 2), 5)
    assert div.total == 1
    assert div.points[0][0] == pytest.approx(4, abs=1e-6)


def test_model_divisor_cache():

    model = ag.build_covering(sqrt, 2)
    div = model.value_divisor('value:1')
    assert model.value_divisor('value:1') is div
    report = ag.covering_report(model)
    assert report['divisors']['1']['points'][0][2] == 1


def test_jk_orders():

    res = ag.jk_orders(ag.examples.root(3), 0)
    assert res.order == Fraction(2)
    assert res.identically_zero is False
    assert ag.branch_order(ag.examples.root(3), 0)[0] == 1

    assert ag.jk_orders(sqrt, 0).order == Fraction(1)
    assert ag.jk_orders(ag.examples.cusp(), 0).order == Fraction(3)

    # Both sheets of the plane pair share their second coordinate
    res = ag.jk_orders(ag.examples.plane_pair(), 0, k=1)
    assert res.identically_zero is True
    assert res.order is None
    assert res.separating_order == 0

    div = ag.jk_divisor(ag.examples.root(3), 0, 2)
    assert div.target == 'J_1'
    assert div.order_at(0) == 2
    div = ag.jk_divisor(ag.examples.plane_pair(), 1, 2)
    assert div.identically_zero is True


def test_check_esti():

    model = ag.build_covering(ag.examples.cusp(), 2)
    esti = ag.check_esti(model)
    assert esti.passed is True
    row = esti.table.iloc[0]
    assert row['branch_order'] == 1
    assert row['jk_order'] == 3

    for name, c in ag.examples.regression_curves().items():
        model = ag.build_covering(c, 1.5, generators=False)
        assert ag.check_esti(model).passed, name


def test_covering_report():

    model = ag.build_covering(sqrt, 2)
    report = ag.covering_report(model)
    assert report['sheets'] == 2
    assert report['disk_radius'] == 2
    assert report['branch_records'][0]['cycle_lengths'] == [2]
    assert report['branch_records'][0]['order'] == 1
    assert report['generators'][0]['permutation'] == [1, 0]
    assert report['warnings'] == []
    json.dumps(report)


def test_build_covering_base_point():

    model = ag.build_covering(sqrt, 2, base_point='1+1i')
    assert model.base_point == 1 + 1j
    assert model.base_fiber.base_point == 1 + 1j
    assert model.generators[0].cycle_lengths == (2,)

    with pytest.raises(ValueError):
        ag.build_covering(sqrt, 2, base_point=3)


def test_check_esti_vacuous_rows():

    model = ag.build_covering(ag.examples.plane_pair(), 2, generators=False)
    esti = ag.check_esti(model)
    assert esti.passed is True
    rows = esti.table.set_index('k')
    assert bool(rows.loc[1, 'vacuous']) is False
    assert rows.loc[1, 'jk_order'] >= rows.loc[1, 'branch_order']
    assert bool(rows.loc[2, 'vacuous']) is True
    assert rows.loc[2, 'separating_order'] == 0

    # A coordinate whose J_k vanishes identically checks nothing
    assert ag.check_esti(model, k=1).passed is False
