"""
Algebroidpy Visualization Module
Content: Report plots and covering plots
"""

import numpy as np
import matplotlib.pyplot as plt

from .tools import make_list


def reportplot(report, columns=None, ax=None, logx=True, **kwargs):
    """ Plots columns of a report table against the radius with
    :func:`matplotlib.pyplot.plot`.

    Arguments:
        report (DataDict or pandas.DataFrame): Report with a table that
            has a column 'r'.
        columns (str or list of str, optional): Columns to plot.
            By default, all columns except 'r'.
        ax (matplotlib.pyplot.axis, optional): Axis to be used for plot.
        logx (bool, optional): Logarithmic radius axis (default True).
        **kwargs: Forwarded to :func:`matplotlib.pyplot.plot`.

    Returns:
        list of :class:`matplotlib.lines.Line2D`
    """
    table = report['table'] if 'table' in report else report
    if columns is None:
        columns = [c for c in table.columns if c != 'r']
    if ax is None:
        ax = plt.gca()
    lines = []
    for col in make_list(columns):
        lines += ax.plot(table['r'], table[col], label=col, **kwargs)
    if logx:
        ax.set_xscale('log')
    ax.set_xlabel('r')
    ax.legend()
    return lines


def coveringplot(model, ax=None, annotate=True, **kwargs):
    """ Shows the critical points of a covering model in the disk,
    marking branch points with the cycle lengths of their monodromy.

    Arguments:
        model (CoveringModel): The covering model.
        ax (matplotlib.pyplot.axis, optional): Axis to be used for plot.
        annotate (bool, optional): Write cycle types next to
            branch points (default True).
        **kwargs: Forwarded to :func:`matplotlib.pyplot.scatter`
            for the branch points.

    Returns:
        :class:`matplotlib.collections.PathCollection` of the branch points.
    """
    if ax is None:
        ax = plt.gca()
    R = model.disk_radius
    theta = np.linspace(0, 2 * np.pi, 400)
    ax.plot(R * np.cos(theta), R * np.sin(theta), color='0.6', lw=1)

    crit = np.array([p for p in model.critical.critical_points
                     if abs(p) < R], dtype=complex)
    if len(crit):
        ax.scatter(crit.real, crit.imag, marker='x', color='0.4',
                   label='critical')
    b = model.base_point
    ax.scatter([b.real], [b.imag], marker='o', color='k', label='base')

    pts = np.array([r.point for r in model.branch_records], dtype=complex)
    kwargs.setdefault('color', 'tab:red')
    sc = ax.scatter(pts.real, pts.imag, label='branch', **kwargs)
    if annotate:
        for rec in model.branch_records:
            ax.annotate(str(tuple(rec.cycle_lengths)),
                        (rec.point.real, rec.point.imag),
                        textcoords='offset points', xytext=(4, 4))
    ax.set_aspect('equal')
    ax.legend()
    return sc
