import pytest
import matplotlib
matplotlib.use('Agg')

import algebroidpy as ag  # noqa: E402
import matplotlib.pyplot as plt  # noqa: E402


def test_reportplot():
    """Test only for errors."""

    model = ag.build_covering(ag.examples.identity(), 12)
    report = ag.Experiment(model, ['value:1'], [2, 5, 10]).run(display=False)

    lines = ag.reportplot(report)
    assert len(lines) == len(report.table.columns) - 1

    # Selected columns on a given axis
    fig, ax = plt.subplots()
    lines = ag.reportplot(report.table, columns='T', ax=ax, logx=False)
    assert len(lines) == 1
    assert ax.get_xscale() == 'linear'
    plt.close('all')


def test_coveringplot():
    """Test only for errors."""

    model = ag.build_covering(ag.examples.root(2, 1), 3)
    fig, ax = plt.subplots()
    sc = ag.coveringplot(model, ax=ax)
    assert len(sc.get_offsets()) == 1
    assert len(ax.texts) == 1

    # Curve without branch points
    model = ag.build_covering(ag.examples.identity(), 3)
    ag.coveringplot(model, annotate=False)
    plt.close('all')
