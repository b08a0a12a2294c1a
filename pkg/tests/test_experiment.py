import pytest
import numpy as np
import algebroidpy as ag


class SerialPool:
    """ Stand-in for multiprocessing.Pool that maps in-process. """
    _processes = 1

    def map(self, func, tasks):
        return list(map(func, tasks))


@pytest.fixture(scope='module')
def model():
    return ag.build_covering(ag.examples.identity(), 20)


def test_experiment(model):

    exp = ag.Experiment(model, ['value:1', 'value:inf'], [10, 2, 5])
    report = exp.run(display=False)
    table = report.table

    assert list(table.columns) == [
        'r', 'T', 'A', 'm_1', 'N_1', 'Nbar_1', 'm_inf', 'N_inf', 'Nbar_inf',
        'N_bran', 'fmt_residual_1', 'fmt_residual_inf']
    assert list(table['r']) == [2, 5, 10]
    assert table['T'].to_numpy() == pytest.approx(
        0.5 * np.log(1 + table['r'].to_numpy() ** 2), rel=1e-4)
    assert table['N_1'].to_numpy() == pytest.approx(np.log(table['r']))
    assert np.all(table['N_inf'] == 0)
    assert table['fmt_residual_inf'].to_numpy() \
        == pytest.approx(0, abs=1e-4)

    summary = report.summary
    assert all(summary['monotone'].values())
    assert summary['finite']
    assert summary['fmt']['1']['median'] \
        == pytest.approx(-0.5 * np.log(2), abs=1e-3)
    assert summary['fmt']['1']['max_deviation'] < 0.02

    info = report.info
    assert info.command == 'nevanlinna'
    assert info.completed
    assert info.sheets == 1
    assert info.scheduled_intervals == 3
    assert info.targets == ['1', 'inf']
    assert info.quadrature['theta_points'] == 128


def test_display(model, capsys):
    ag.Experiment(model, [], [2]).run()
    out = capsys.readouterr().out
    assert out.startswith("Scheduled intervals: 1")
    assert "Experiment finished" in out


def test_pool(model):
    serial = ag.Experiment(model, ['value:2i'], [2, 4]).run(display=False)
    pooled = ag.Experiment(model, ['value:2i'], [2, 4]).run(
        pool=SerialPool(), display=False)
    assert pooled.table.equals(serial.table)


def test_radius_check(model):
    with pytest.raises(ValueError):
        ag.Experiment(model, [], [2, 50])


def test_grid_object(model):
    exp = ag.Experiment(model, None, ag.RadiusGrid(2, 8, 3))
    assert list(exp.radii) == pytest.approx([2, 4, 8])
