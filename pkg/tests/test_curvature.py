import pytest
import numpy as np
import algebroidpy as ag

from algebroidpy.tools import NonParabolicityViolated, ParseError


def test_chi():

    assert ag.chi(2, 1) == pytest.approx(1.8134302039, rel=1e-10)
    assert ag.chi(0, 3) == 3
    assert ag.chi(1e-9, 2) == pytest.approx(2)
    assert ag.chi([0, 1], [2, 2]) == pytest.approx([2, np.sinh(2)])


def test_kappa_profile():

    kappa = ag.KappaProfile('-t')
    assert kappa.__repr__() == "KappaProfile (-t)"
    assert kappa([0, 1, 2]) == pytest.approx([0, -1, -2])
    assert kappa.is_flat is False
    assert kappa.to_dict() == {'kappa': '-t'}
    assert ag.KappaProfile(0).is_flat is True

    table = {'t': [0, 1, 2], 'values': [0, -1, -3]}
    kappa = ag.KappaProfile(table, nonincreasing=True)
    assert kappa(1.5) == pytest.approx(-2)
    assert kappa(10) == pytest.approx(-3)
    assert kappa.to_dict() == {'kappa': table}

    with pytest.raises(ValueError):
        ag.KappaProfile(1)
    with pytest.raises(ValueError):
        ag.KappaProfile({'t': [0, 1, 2], 'values': [-1, -0.5, -2]},
                        nonincreasing=True)
    with pytest.raises(ParseError):
        ag.KappaProfile('-x')


def test_jacobi_G():

    ts = np.array([0.5, 1, 2, 3])
    assert ag.jacobi_G(0, ts) == pytest.approx(ts, rel=1e-8)
    assert ag.jacobi_G(-1, ts) == pytest.approx(np.sinh(ts), rel=1e-8)
    assert ag.jacobi_G(-4, ts) == pytest.approx(np.sinh(2 * ts) / 2,
                                                rel=1e-8)
    assert ag.jacobi_G(-1, 2.) == pytest.approx(np.sinh(2), rel=1e-8)
    assert ag.jacobi_G(-1, 0) == 0

    # Unsorted and repeated points
    assert ag.jacobi_G(-1, [2, 1, 2]) == pytest.approx(
        np.sinh([2, 1, 2]), rel=1e-8)

    with pytest.raises(ValueError):
        ag.jacobi_G(0, -1)


def test_comparison():

    ts = np.linspace(0, 5, 50)
    for kappa in [0, -1, '-t']:
        assert ag.comparison_check(kappa, ts) is True
    for seed in range(10):
        kappa = ag.KappaProfile.random(seed)
        assert ag.comparison_check(kappa, ts), seed

    df = ag.comparison_table(-1, [2, 1])
    assert list(df.columns) == ['t', 'lower', 'G', 'upper']
    assert list(df['t']) == [1, 2]
    assert df['G'].to_numpy() == pytest.approx(df['upper'].to_numpy(),
                                               rel=1e-8)


def test_K_factor():

    expected = 10 ** 0.1 * np.log(30) ** 1.21
    assert ag.K_factor(10, 0.1) == pytest.approx(expected, rel=1e-6)
    assert ag.K_factor(10, 0.1) == pytest.approx(5.5369, abs=1e-4)

    # δ = 0 and flat curvature reduce to log(3r)
    assert ag.K_factor(5, 0., kappa=0) == pytest.approx(np.log(15), rel=1e-6)

    with pytest.raises(ValueError):
        ag.K_factor(0.2, 0.1)


def test_logK_bound():

    res = ag.logK_bound_check(0, np.geomspace(2, 1e4, 12), 0.1)
    assert res.passed is True
    assert res.c > 0
    assert list(res.table.columns) == ['r', 'logK', 'shape', 'ratio']
    assert (res.table['logK'] >= 0).all()

    res = ag.logK_bound_check(-1, [4, 6, 8, 12, 16, 24], 0.1)
    assert res.passed is True
    assert 0.8 < res.table['ratio'].iloc[-1] < 1.1


def test_volume_profile():

    V = ag.VolumeProfile('t**4')
    assert V.power == 4
    assert V.coefficient == 1
    assert V.tail(2) == pytest.approx(1 / 8)
    assert V.tail(np.inf) == 0
    assert V.check_non_parabolic() == pytest.approx(0.5)
    assert V.to_dict() == {'volume': 't**4'}

    V = ag.VolumeProfile('2*t**3')
    assert (V.power, V.coefficient) == (3, 2)
    assert V.tail(1) == pytest.approx(0.5)

    # Profiles without a power law are integrated numerically
    V = ag.VolumeProfile(lambda t: t ** 4)
    assert V.power is None
    assert V.tail(2) == pytest.approx(1 / 8, rel=1e-6)

    for spec in ['t**2', 't', lambda t: t ** 2]:
        with pytest.raises(NonParabolicityViolated):
            ag.VolumeProfile(spec).check_non_parabolic()


def test_H_factors():

    for r in [1.5, 3, 40]:
        H, H_delta = ag.H_factors('t**4', r)
        assert H == pytest.approx(0.5, rel=1e-10)
        assert H_delta == pytest.approx(0.5, rel=1e-10)

    # (V(r)/r)^(1+δ) grows like r^(3δ)
    H, H_delta = ag.H_factors('t**4', 10, delta=0.1)
    assert H == pytest.approx(0.5)
    assert H_delta == pytest.approx(0.5 * 10 ** 0.3)


def test_green_band():

    assert ag.green_band('t**4', 2) == pytest.approx((1 / 8, 1 / 8))
    assert ag.green_band('t**4', 2, A=0.5, B=2) == pytest.approx(
        (1 / 16, 1 / 4))
    with pytest.raises(NonParabolicityViolated):
        ag.green_band('t**2', 2)
