"""
Algebroidpy Experiment Module
Content: Experiment class
"""

import numpy as np

from datetime import datetime, timedelta

from .datadict import DataDict
from .nevanlinna import (_radial_moments, _assemble, _settings, _check_radius,
                         proximity, counting, branch_counting,
                         _median_deviation)
from .problem import RunManifest
from .targets import as_targets


def _interval_task(args):
    model, a, b, settings = args
    return _radial_moments(model, a, b, settings)


class Experiment:
    """ Evaluation of the Nevanlinna functionals of a covering model
    over a grid of radii, combined into one report.

    The characteristic function is integrated interval by interval
    between consecutive radii; these integrals are independent and
    can be distributed over a pool of processes.

    Arguments:
        model (CoveringModel): The covering model.
        targets (list, optional): Hyperplane targets or their
            specifications, e.g. ``['value:0', 'value:inf']``.
        r_grid (array_like or RadiusGrid): Radii within the covering disk.
        settings (QuadratureSettings, optional): Quadrature settings.
        problem (ProblemFile, optional): Problem recorded in the manifest.
        command (str, optional): Name of the report (default 'nevanlinna').

    Attributes:
        output (DataDict): The report, with entries 'info' (the manifest),
            'table', and 'summary'.
    """

    def __init__(self, model, targets=None, r_grid=(2., 10.), settings=None,
                 problem=None, command='nevanlinna'):

        self.model = model
        self.targets = as_targets(targets, model.curve.d)
        self.radii = np.sort(np.asarray(list(r_grid), dtype=float))
        for r in self.radii:
            _check_radius(model, r)
        self.settings = _settings(settings)
        self.output = DataDict()
        self.output.info = RunManifest(
            command, problem,
            sheets=model.sheet_count,
            n=model.curve.d,
            disk_radius=model.disk_radius,
            quadrature=self.settings.to_dict(),
            ricci_term=0.,
            fs_ratio=1.,
            targets=[t.label for t in self.targets],
            scheduled_intervals=len(self.radii))

    def _tasks(self):
        edges = np.concatenate([[0.], self.radii])
        return [(self.model, a, b, self.settings)
                for a, b in zip(edges[:-1], edges[1:])]

    def _columns(self, table):
        """ Proximity, counting, and residual columns of every target. """
        model = self.model
        radii = table['r']
        for t in self.targets:
            m = [proximity(model, t, r, self.settings) for r in radii]
            N = [counting(model, t, r) for r in radii]
            Nbar = [counting(model, t, r, truncated=True) for r in radii]
            table[f'm_{t.label}'] = m
            table[f'N_{t.label}'] = N
            table[f'Nbar_{t.label}'] = Nbar
        table['N_bran'] = [branch_counting(model, r) for r in radii]
        for t in self.targets:
            table[f'fmt_residual_{t.label}'] = \
                table['T'] - table[f'm_{t.label}'] - table[f'N_{t.label}']
        return table

    def run(self, pool=None, display=True):
        """ Performs the evaluation.

        Arguments:
            pool (multiprocessing.Pool, optional):
                Pool of active processes for parallel processing.
                If none is passed, normal processing is used.
            display (bool, optional):
                Display progress (default True).

        Returns:
            DataDict: The report.

        Examples:

            To use parallel processing::

                import multiprocessing as mp
                if __name__ ==  '__main__':
                    exp = ag.Experiment(model, ['value:0'], [2, 10, 100])
                    pool = mp.Pool(mp.cpu_count())
                    report = exp.run(pool)
        """

        tasks = self._tasks()
        n_tasks = len(tasks)
        if display:
            print(f"Scheduled intervals: {n_tasks}")
        t0 = datetime.now()

        # Normal processing
        if pool is None:
            moments = []
            for i, task in enumerate(tasks):
                moments.append(_interval_task(task))
                if display:
                    td = (datetime.now() - t0).total_seconds()
                    te = timedelta(seconds=int(td / (i + 1)
                                               * (n_tasks - i - 1)))
                    print(f"\rCompleted: {i + 1}, "
                          f"estimated time remaining: {te}", end='')
            if display:
                print("")  # Because the last print ended without a line-break

        # Parallel processing
        else:
            if display:
                print(f"Using parallel processing.")
                print(f"Active processes: {pool._processes}")
            moments = pool.map(_interval_task, tasks)

        table = self._columns(_assemble(self.model, self.radii, moments,
                                        self.settings))
        self.output['table'] = table
        self.output['summary'] = self._summary(table)
        self.output.info.excised_points = int(sum(m[2] for m in moments))
        self.output.info.finish(self.model.warnings)

        if display:
            print(f"Experiment finished\nRun time: {self.output.info.run_time}")

        return self.output

    def _summary(self, table):
        summary = {'monotone': {}, 'fmt': {}}
        for col in ['T', 'N_bran'] + [c for c in table.columns
                                      if c.startswith(('N_', 'Nbar_'))]:
            summary['monotone'][col] = bool(np.all(np.diff(table[col]) >= -1e-9))
        for t in self.targets:
            median, dev = _median_deviation(table[f'fmt_residual_{t.label}'])
            summary['fmt'][t.label] = {'median': median,
                                       'max_deviation': dev}
        summary['finite'] = bool(np.isfinite(
            table.select_dtypes('number').to_numpy()).all())
        return summary
