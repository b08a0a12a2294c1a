"""
Algebroidpy SMT Module
Content: Second main theorem margins, defects, omitted and shared values
"""

import itertools
import logging
import numpy as np
import pandas as pd

from dataclasses import dataclass, field
from scipy.optimize import nnls

from .covering import value_divisor
from .curvature import VolumeProfile, H_factors
from .datadict import DataDict
from .nevanlinna import (characteristic_series, counting, _settings,
                         _check_radius)
from .targets import HyperplaneTarget, as_targets
from .tools import (AttrDict, DegenerateTargets, NotTranscendentalEnough,
                    make_list)

logger = logging.getLogger(__name__)

RANK_TOL = 1e-10  # Relative singular value below which vectors are dependent
MIN_CHARACTERISTIC = 5.  # Smallest T(r_max) for defect slope fits


@dataclass
class SMTConfig:
    """ Setup of a second main theorem check.

    Attributes:
        targets (list of HyperplaneTarget): The `q` hyperplanes.
        r_grid (list of float): Radii within the covering disk.
        delta (float): Exponent `δ` of the error term (default 0.05).
        epsilon_margin (float): Accepted negative normalized slack
            on the top decile of the grid (default 0.05).
        volume (VolumeProfile, optional): Volume growth whose factor
            `log H(r)` is recorded next to the slack.
        origin (str): Treatment of preimages at the origin,
            see :func:`counting` (default 'raise').
    """

    targets: list
    r_grid: list
    delta: float = 0.05
    epsilon_margin: float = 0.05
    volume: object = None
    origin: str = 'raise'
    n: int = field(default=None)

    def __post_init__(self):
        self.targets = as_targets(self.targets, self.n or 1)
        if self.n is None:
            self.n = self.targets[0].n if self.targets else 1
        self.r_grid = sorted(float(r) for r in make_list(list(self.r_grid)))
        if self.volume is not None \
                and not isinstance(self.volume, VolumeProfile):
            self.volume = VolumeProfile(self.volume)
        if self.delta <= 0:
            raise ValueError("δ must be positive")

    @property
    def q(self):
        return len(self.targets)

    def coefficient(self, nu):
        """ Coefficient `q - 2ν - n + 1` of the characteristic. """
        return self.q - 2 * nu - self.n + 1


def general_position_check(targets, tol=RANK_TOL):
    """ Whether every `min(q, n+1)` of the hyperplane vectors are
    linearly independent.

    Examples:

        >>> ag.general_position_check([[1, 0], [0, 1], [1, -1]])
        True
    """

    targets = [HyperplaneTarget.parse(t) if not isinstance(t, (list, tuple))
               else HyperplaneTarget(t) for t in make_list(targets)]
    if not targets:
        raise ValueError("No targets given")
    n = targets[0].n
    if any(t.n != n for t in targets):
        raise DegenerateTargets("Targets live in different dimensions")
    k = min(len(targets), n + 1)
    for subset in itertools.combinations(targets, k):
        s = np.linalg.svd(np.array([t.vector for t in subset]),
                          compute_uv=False)
        if s[-1] <= tol * s[0]:
            return False
    return True


def _truncated_sum(model, targets, radii, origin):
    return np.array([sum(counting(model, t, r, truncated=True, origin=origin)
                         for t in targets) for r in radii])


def _fit_error_constants(slack, T, radii, delta):
    """ Nonnegative `C_1, C_2` such that
    `D(r) ≥ -C_1 (log(1 + T) + δ log r) - C_2` on the grid. """
    violated = slack < 0
    if not violated.any():
        return 0., 0.
    shape = np.log1p(T) + delta * np.log(radii)
    A = np.column_stack([shape[violated], np.ones(violated.sum())])
    (c1, c2), _ = nnls(A, -slack[violated])
    # Raise C_2 until the bound holds everywhere
    c2 += max(0., float(np.max(-slack - c1 * shape - c2)))
    return float(c1), float(c2)


def smt_margin(model, config, settings=None, characteristic_table=None):
    """ Slack of the second main theorem on a grid of radii,

    `D(r) = Σ_j N̄(r, H_j) - (q - 2ν - n + 1) T(r)`.

    The check passes if `D(r)/T(r) ≥ -epsilon_margin` on the top decile
    of the grid. Nonnegative constants of the error term
    `C_1 (log(1 + T) + δ log r) + C_2` are fitted where `D` is negative.

    Arguments:
        model (CoveringModel): The covering model.
        config (SMTConfig): Targets, grid, and tolerances.
        settings (QuadratureSettings, optional): Quadrature settings.
        characteristic_table (pandas.DataFrame, optional): Output of
            :func:`characteristic_series` on the same grid.

    Returns:
        DataDict: 'table' with columns r, T, lhs, rhs, slack,
        normalized_slack (and log_H if a volume is given),
        and 'summary' with the fitted constants and the pass flag.

    Raises:
        DegenerateTargets: If the targets are not in general position.
    """

    if config.n != model.curve.d:
        raise DegenerateTargets(f"Targets live in P^{config.n}, "
                                f"the curve in P^{model.curve.d}")
    if not general_position_check(config.targets):
        raise DegenerateTargets("Targets are not in general position")
    nu = model.sheet_count
    coef = config.coefficient(nu)
    if coef <= 0:
        logger.warning(f"q={config.q} is too small for a positive "
                       f"coefficient (q - 2ν - n + 1 = {coef})")

    radii = np.asarray(config.r_grid)
    table = characteristic_table
    if table is None:
        table = characteristic_series(model, radii, _settings(settings))
    table = table[['r', 'T']].copy()
    T = table['T'].to_numpy()
    table['lhs'] = coef * T
    table['rhs'] = _truncated_sum(model, config.targets, radii, config.origin)
    slack = table['rhs'].to_numpy() - table['lhs'].to_numpy()
    table['slack'] = slack
    with np.errstate(divide='ignore', invalid='ignore'):
        table['normalized_slack'] = np.where(T > 0, slack / T, 0.)
    if config.volume is not None:
        table['log_H'] = [np.log(H_factors(config.volume, r, config.delta)[0])
                          for r in radii]

    k = max(1, int(np.ceil(0.1 * len(radii))))
    top = float(table['normalized_slack'].to_numpy()[-k:].min())
    c1, c2 = _fit_error_constants(slack, T, radii, config.delta)
    summary = {'q': config.q, 'nu': nu, 'n': config.n,
               'coefficient': coef, 'delta': config.delta,
               'top_decile_min_normalized_slack': top,
               'C1': c1, 'C2': c2,
               'passed': bool(top >= -config.epsilon_margin)}
    return DataDict(table=table, summary=summary)


def _slope(x, y):
    A = np.column_stack([x, np.ones_like(x)])
    (a, _), *_ = np.linalg.lstsq(A, y, rcond=None)
    return float(a)


def defects(model, targets, r_grid, settings=None, characteristic_table=None,
            origin='raise'):
    """ Truncated defects `δ̄(H) = 1 - slope of N̄(r, H) against T(r)`,
    fitted on the upper half of the grid and clamped to [0, 1].

    Arguments:
        model (CoveringModel): The covering model.
        targets (list): Hyperplane targets or their specifications.
        r_grid (array_like): Radii within the covering disk.
        settings (QuadratureSettings, optional): Quadrature settings.
        characteristic_table (pandas.DataFrame, optional): Output of
            :func:`characteristic_series` on the same grid.
        origin (str, optional): Treatment of preimages at the origin.

    Returns:
        AttrDict: 'table' with one row per target (raw and clamped
        defect), 'total', the bound 'bound' `2ν + n - 1`, 'omitted'
        (see :func:`omitted_values`), and 'passed'.

    Raises:
        NotTranscendentalEnough: If `T(r_max) < 5`.
    """

    targets = as_targets(targets, model.curve.d)
    radii = np.sort(np.asarray(list(r_grid), dtype=float))
    table = characteristic_table
    if table is None:
        table = characteristic_series(model, radii, _settings(settings))
    T = table['T'].to_numpy()
    if T[-1] < MIN_CHARACTERISTIC:
        raise NotTranscendentalEnough(
            f"T(r_max) = {T[-1]:.3g} is below {MIN_CHARACTERISTIC}")

    half = len(radii) // 2
    rows = []
    for t in targets:
        nbar = np.array([counting(model, t, r, truncated=True, origin=origin)
                         for r in radii])
        raw = 1 - _slope(T[half:], nbar[half:])
        rows.append({'target': t.label, 'raw_defect': raw,
                     'defect': float(np.clip(raw, 0, 1)),
                     'Nbar_max': float(nbar[-1])})
    df = pd.DataFrame(rows, columns=['target', 'raw_defect', 'defect',
                                     'Nbar_max'])
    nu, n = model.sheet_count, model.curve.d
    bound = 2 * nu + n - 1
    total = float(df['defect'].sum())
    omitted = omitted_values(model, targets, float(radii[-1]))
    return AttrDict(table=df, total=total, bound=bound, omitted=omitted,
                    passed=bool(total <= bound + 0.1 and omitted.passed))


def omitted_values(model, targets, r):
    """ Targets without preimages in the disk `|z| < r`. On the plane,
    a `ν`-valued algebroid function omits at most `2ν` values. """
    _check_radius(model, r)
    targets = as_targets(targets, model.curve.d)
    omitted = [t.label for t in targets
               if not model.value_divisor(t).within(r).points]
    bound = 2 * model.sheet_count
    passed = model.curve.d != 1 or len(omitted) <= bound
    return AttrDict(omitted=omitted, bound=bound, passed=bool(passed))


def _same_support(A, B, tol):
    if len(A) != len(B):
        return False
    used = set()
    for p, _ in A:
        match = [i for i, (q, _) in enumerate(B) if i not in used
                 and abs(p - q) <= tol * max(1., abs(p))]
        if not match:
            return False
        used.add(match[0])
    return True


def shared_values(C1, C2, values, disk_radius, tol=1e-6):
    """ Values whose preimage sets, ignoring multiplicity, agree for two
    curves in a disk. Two distinct `ν`-valued algebroid functions share
    at most `4ν` values.

    Arguments:
        C1 (AlgebroidCurve): First curve.
        C2 (AlgebroidCurve): Second curve.
        values (list): Targets or their specifications.
        disk_radius (float): Radius of the disk.
        tol (float, optional): Relative distance of matching points.

    Returns:
        AttrDict: 'table' with one row per value, 'shared' (labels),
        and 'bound' `4ν + 1` above which the curves must coincide.
    """

    targets = as_targets(values, C1.d)
    rows = []
    for t in targets:
        A = value_divisor(C1, t, disk_radius).points
        B = value_divisor(C2, t, disk_radius).points
        rows.append({'target': t.label, 'points_1': len(A),
                     'points_2': len(B),
                     'shared': _same_support(A, B, tol)})
    df = pd.DataFrame(rows, columns=['target', 'points_1', 'points_2',
                                     'shared'])
    nu = max(C1.total_sheets, C2.total_sheets)
    shared = df.loc[df['shared'], 'target'].tolist()
    return AttrDict(table=df, shared=shared, bound=4 * nu + 1,
                    exceeds_bound=len(shared) >= 4 * nu + 1)
