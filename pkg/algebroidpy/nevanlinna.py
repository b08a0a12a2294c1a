"""
Algebroidpy Nevanlinna Module
Content: Characteristic, proximity and counting functions on the disk,
and checks of the first main theorem and the branch bound
"""

import itertools
import logging
import numpy as np
import pandas as pd

from dataclasses import dataclass, asdict
from scipy.integrate import quad_vec

from .continuation import solve_fiber
from .defining import AlgebroidCurve
from .roots import batch_roots, polyval_asc
from .targets import HyperplaneTarget, GreenKernel
from .tools import (AttrDict, make_list, QuadratureBudgetExceeded,
                    BoundaryHitsDivisor, DivisorPointAtOrigin)

logger = logging.getLogger(__name__)

MAX_PERTURBATIONS = 5  # Attempts to move a circle off the divisor
ORIGIN_TOL = 1e-12


@dataclass
class QuadratureSettings:
    """ Settings of the polar quadrature.

    Attributes:
        theta_points (int): Initial number of trapezoidal nodes on a circle.
        max_theta_points (int): Largest number of nodes after doubling.
        rtol (float): Relative tolerance of the angular refinement.
        radial_rtol (float): Relative tolerance of the radial integrals.
        atol (float): Absolute tolerance of both.
        excision (float): Relative radius of the disks around critical
            points in which the density is not evaluated.
        max_intervals (int): Subinterval budget of the radial integrals.
        seed (int): Seed of the angular offset of the nodes.
    """

    theta_points: int = 128
    max_theta_points: int = 2048
    rtol: float = 1e-8
    radial_rtol: float = 1e-7
    atol: float = 1e-12
    excision: float = 1e-3
    max_intervals: int = 1000
    seed: int = 0

    @property
    def theta_offset(self):
        rng = np.random.default_rng(self.seed)
        return float(rng.uniform(0, 2 * np.pi / self.theta_points))

    def to_dict(self):
        return asdict(self)


def _settings(settings):
    if settings is None:
        return QuadratureSettings()
    if isinstance(settings, dict):
        return QuadratureSettings(**settings)
    return settings


# Sheets on a set of points ----------------------------------------------- #

def fiber_values(curve, zs, derivatives=False):
    """ Coordinates of all `ν` sheets above many points at once.
    The order of the sheets differs from point to point.

    Arguments:
        curve (AlgebroidCurve): The curve.
        zs (array_like): Points, flattened.
        derivatives (bool, optional): Also return the `z`-derivatives
            `w' = -Ψ_z / Ψ_W` of the coordinates.

    Returns:
        numpy.ndarray: Values of shape (m, ν, d), and derivatives of the
        same shape if requested. Entries are not finite above poles.
    """

    zs = np.ravel(np.asarray(zs, dtype=complex))
    roots, slopes = [], []
    for P in curve.components:
        a = P.coeff_values(zs)
        w = batch_roots(a)
        roots.append(w)
        if derivatives:
            n = P.degree
            psi_z = polyval_asc(P.coeff_derivatives(zs)[:, :, None], w)
            aw = a[1:] * np.arange(1, n + 1)[:, None]
            psi_w = polyval_asc(aw[:, :, None], w)
            with np.errstate(all='ignore'):
                slopes.append(-psi_z / psi_w)

    combos = list(itertools.product(*[range(P.degree)
                                      for P in curve.components]))
    values = np.stack([np.stack([roots[k][:, j] for k, j in enumerate(c)],
                                axis=-1) for c in combos], axis=1)
    if not derivatives:
        return values
    dvalues = np.stack([np.stack([slopes[k][:, j] for k, j in enumerate(c)],
                                 axis=-1) for c in combos], axis=1)
    return values, dvalues


def _homogeneous(values):
    ones = np.ones(values.shape[:-1] + (1,), dtype=complex)
    return np.concatenate([ones, values], axis=-1)


def fs_density(curve, zs):
    """ Density of the pulled back Fubini-Study form
    `(‖f‖²‖f'‖² - |⟨f', f⟩|²) / ‖f‖⁴` of `f = (1, w_1, ..., w_d)`
    with respect to Lebesgue measure, for all sheets.

    Returns:
        numpy.ndarray: Densities of shape (m, ν); not finite where
        the derivative of a sheet blows up.
    """

    w, dw = fiber_values(curve, zs, derivatives=True)
    f = _homogeneous(w)
    fp = np.concatenate([np.zeros(dw.shape[:-1] + (1,), dtype=complex), dw],
                        axis=-1)
    with np.errstate(all='ignore'):
        scale = np.abs(f).max(axis=-1, keepdims=True)
        f, fp = f / scale, fp / scale
        n2 = (np.abs(f) ** 2).sum(axis=-1)
        d2 = (np.abs(fp) ** 2).sum(axis=-1)
        cross = np.abs((fp * np.conj(f)).sum(axis=-1)) ** 2
        return np.maximum(n2 * d2 - cross, 0) / n2 ** 2


# Angular averages -------------------------------------------------------- #

class _CircleIntegrand:
    """ Sheet average of `∫ ρ(u e^{iθ}) dθ` on the circle of radius `u`,
    refined by doubling the trapezoidal nodes. """

    def __init__(self, model, settings):
        self.curve = model.curve
        self.settings = settings
        self.offset = settings.theta_offset
        self.critical = np.array(model.critical.critical_points,
                                 dtype=complex)
        self.excised = 0
        self.unresolved = 0

    def _mean(self, u, n, offset):
        theta = offset + 2 * np.pi * np.arange(n) / n
        zs = u * np.exp(1j * theta)
        rho = fs_density(self.curve, zs).sum(axis=1) / self.curve.total_sheets
        bad = ~np.isfinite(rho)
        if len(self.critical):
            eps = self.settings.excision * np.maximum(1., np.abs(self.critical))
            bad |= (np.abs(zs[:, None] - self.critical[None, :])
                    < eps[None, :]).any(axis=1)
        if bad.all():
            self.excised += n
            return 0.
        if bad.any():
            self.excised += int(bad.sum())
            return float(rho[~bad].mean())
        return float(rho.mean())

    def __call__(self, u):
        s = self.settings
        if u == 0:
            return 2 * np.pi * self._mean(0., 1, 0.)
        n = s.theta_points
        mean = self._mean(u, n, self.offset)
        while n < s.max_theta_points:
            mid = self._mean(u, n, self.offset + np.pi / n)
            new = 0.5 * (mean + mid)
            n *= 2
            done = abs(new - mean) <= s.rtol * abs(new) + s.atol
            mean = new
            if done:
                break
        else:
            self.unresolved += 1
        return 2 * np.pi * mean


def _breakpoints(model, a, b):
    mods = sorted({abs(p) for p in model.critical.critical_points
                   if a < abs(p) < b})
    return mods


def _core_radius(model, settings):
    """ Radius below which every circle lies in an excised disk. """
    crit = np.array(model.critical.critical_points, dtype=complex)
    if not len(crit):
        return 0.
    eps = settings.excision * np.maximum(1., np.abs(crit))
    return float(max(0., (eps - np.abs(crit)).max()))


def _core_moments(integrand, a, b, u0):
    """ Moments over `[a, b]` inside the excised core of radius `u0`,
    from a power law `c u^α` fitted to the circles of radius `1.25 u0`
    and `1.5 u0`. """
    u1, u2 = 1.25 * u0, 1.5 * u0
    s1, s2 = integrand(u1), integrand(u2)
    if s1 <= 0 or s2 <= 0:
        return 0., 0.
    beta = max(np.log(s2 / s1) / np.log(u2 / u1) + 2, 1e-3)
    c = s1 / np.pi / u1 ** (beta - 2)

    def F(u):
        return c * u ** beta / beta if u > 0 else 0.

    def G(u):
        if u <= 0:
            return 0.
        return c * u ** beta * (np.log(u) / beta - 1 / beta ** 2)

    return F(b) - F(a), G(b) - G(a)


def _radial_moments(model, a, b, settings):
    """ Integrals `(1/π) ∫_a^b S(u) u du` and `(1/π) ∫_a^b S(u) u log u du`
    of the sheet averaged angular density `S`. """

    integrand = _CircleIntegrand(model, settings)
    core = (0., 0.)
    u0 = _core_radius(model, settings)
    if a < u0:
        core = _core_moments(integrand, a, min(b, u0), u0)
        a = min(b, u0)
        if a >= b:
            return core[0], core[1], integrand.excised

    def f(u):
        s = integrand(u) * u / np.pi
        return np.array([s, s * np.log(u) if u > 0 else 0.])

    points = _breakpoints(model, a, b) or None
    res, err, info = quad_vec(f, a, b, epsabs=settings.atol,
                              epsrel=settings.radial_rtol,
                              limit=settings.max_intervals, points=points,
                              full_output=True)
    if not info.success:
        scale = max(1., float(np.abs(res).max()))
        if err > 1e-4 * scale:
            raise QuadratureBudgetExceeded(
                f"Radial integral over [{a:g}, {b:g}] did not converge "
                f"(error estimate {err:.3g})")
        logger.warning(f"Radial integral over [{a:g}, {b:g}] stopped with "
                       f"error estimate {err:.3g}")
    return res[0] + core[0], res[1] + core[1], integrand.excised


def _check_radius(model, r):
    if not 0 < r <= model.disk_radius * (1 + 1e-12):
        raise ValueError(f"Radius {r} is outside the covering disk "
                         f"of radius {model.disk_radius}")


# Characteristic ---------------------------------------------------------- #

def characteristic_series(model, r_grid, settings=None):
    """ Characteristic function on a grid of radii, see
    :func:`characteristic`. The radial integrals are accumulated
    from one radius to the next.

    Arguments:
        model (CoveringModel): The covering model.
        r_grid (array_like): Positive radii within the covering disk.
        settings (QuadratureSettings, optional): Quadrature settings.

    Returns:
        pandas.DataFrame: Columns 'r', 'T', and 'A' (the normalized
        spherical area inside the circle), sorted by radius.
    """

    settings = _settings(settings)
    radii = np.sort(np.asarray(make_list(r_grid), dtype=float))
    for r in radii:
        _check_radius(model, r)
    edges = np.concatenate([[0.], radii])
    moments = [_radial_moments(model, a, b, settings)
               for a, b in zip(edges[:-1], edges[1:])]
    return _assemble(model, radii, moments, settings)


def _assemble(model, radii, moments, settings):
    m1 = np.cumsum([m[0] for m in moments])
    m2 = np.cumsum([m[1] for m in moments])
    excised = sum(m[2] for m in moments)
    if excised:
        logger.info(f"Excised {excised} density evaluations "
                    "near the critical set")
    T = np.log(radii) * m1 - m2
    tol = 10 * settings.radial_rtol * max(1., np.abs(T).max()) + settings.atol
    drops = np.flatnonzero(np.diff(T) < -tol)
    if len(drops):
        i = drops[0]
        msg = (f"Characteristic decreases from r={radii[i]!r} to "
               f"r={radii[i + 1]!r} by {T[i] - T[i + 1]:.3g}")
        logger.warning(msg)
        model.warnings.append(msg)
    return pd.DataFrame({'r': radii, 'T': T, 'A': m1})


def characteristic(model, r, settings=None):
    """ Characteristic function of the curve on the disk of radius `r`,

    `T(r) = ∫_0^r A(t) dt/t`, `A(t) = (1/π) ∫_{|z|<t} (1/ν) Σ_j F_j^*ω_FS`,

    evaluated by adaptive polar quadrature of the Fubini-Study density of
    all sheets. The density is not evaluated in small disks around the
    critical points; the circle average uses the other nodes there.
    Inside such a disk around the origin, the density follows a power
    law fitted just outside it.

    Arguments:
        model (CoveringModel): The covering model.
        r (float): Radius within the covering disk.
        settings (QuadratureSettings, optional): Quadrature settings.

    Returns:
        float: The value `T(r)`.

    Raises:
        QuadratureBudgetExceeded: If a radial integral does not converge.

    Examples:

        >>> model = ag.build_covering(ag.curve(['-z', 1]), 10)
        >>> ag.characteristic(model, 2)  # ½ log 5
        0.8047189562...
    """
    return float(characteristic_series(model, [r], settings)['T'].iloc[0])


def green_characteristic(model, r, settings=None, nodes=48):
    """ Characteristic function as the double integral
    `(π/ν) ∫_{|z|<r} g_r(0, z) Σ_j F_j^*ω_FS` with Gauss-Legendre nodes
    in the radius and a fixed trapezoidal rule in the angle. """

    settings = _settings(settings)
    _check_radius(model, r)
    green = GreenKernel(r)
    integrand = _CircleIntegrand(model, settings)
    n = settings.max_theta_points
    x, wx = np.polynomial.legendre.leggauss(nodes)
    edges = [0.] + _breakpoints(model, 0., r) + [float(r)]
    total = 0.
    for a, b in zip(edges[:-1], edges[1:]):
        us = 0.5 * (b - a) * x + 0.5 * (b + a)
        weights = 0.5 * (b - a) * wx
        for u, wu in zip(us, weights):
            mean = integrand._mean(u, n, integrand.offset)
            total += wu * u * float(green(u)) * 2 * np.pi * mean
    return float(total)


# Proximity --------------------------------------------------------------- #

def _circle_proximity(curve, target, r, n, offset):
    theta = offset + 2 * np.pi * np.arange(n) / n
    w = fiber_values(curve, r * np.exp(1j * theta))
    pot = target.potential(_homogeneous(w))
    if not np.all(np.isfinite(pot)):
        raise BoundaryHitsDivisor(f"Circle |z|={r} meets the preimage "
                                  f"of {target.label}")
    return float(pot.mean())


def _proximity(curve, target, r, settings):
    n = settings.theta_points
    offset = settings.theta_offset
    mean = _circle_proximity(curve, target, r, n, offset)
    while n < settings.max_theta_points:
        mid = _circle_proximity(curve, target, r, n, offset + np.pi / n)
        new = 0.5 * (mean + mid)
        n *= 2
        done = abs(new - mean) <= settings.rtol * max(1., abs(new))
        mean = new
        if done:
            break
    return mean


def proximity(model, target, r, settings=None):
    """ Proximity function `m(r, D) = (1/ν) Σ_j ∫ u_D(F_j) dθ/2π`
    of a hyperplane on the circle `|z| = r`.

    If the circle meets a preimage of the hyperplane, the radius is
    moved outward by `1e-6 r` and a warning is added to the model.

    Arguments:
        model (CoveringModel): The covering model.
        target (HyperplaneTarget or str): The hyperplane,
            e.g. ``'value:0'``.
        r (float): Radius of the circle.
        settings (QuadratureSettings, optional): Quadrature settings.

    Returns:
        float: The value `m(r, D)`.
    """

    settings = _settings(settings)
    target = HyperplaneTarget.parse(target, model.curve.d)
    radius = float(r)
    for _ in range(MAX_PERTURBATIONS):
        try:
            return _proximity(model.curve, target, radius, settings)
        except BoundaryHitsDivisor as e:
            new = radius + 1e-6 * radius
            msg = f"{e}; radius moved to {new!r}"
            logger.warning(msg)
            model.warnings.append(msg)
            radius = new
    raise BoundaryHitsDivisor(f"Could not move |z|={r} off the preimage "
                              f"of {target.label}")


# Counting ---------------------------------------------------------------- #

def _weighted_log(points, r, nu, origin, truncated=False):
    total = 0.
    for p, m in points:
        if abs(p) >= r:
            continue
        m = 1 if truncated else m
        if abs(p) <= ORIGIN_TOL * max(1., r):
            if origin == 'raise':
                raise DivisorPointAtOrigin(
                    "Divisor has a point at the origin; shift the curve "
                    "with AlgebroidCurve.shifted or use origin='classical'")
            total += m * np.log(r)
        else:
            total += m * np.log(r / abs(p))
    return total / nu


def counting(model, target, r, truncated=False, origin='raise'):
    """ Counting function `N(r, D) = (1/ν) Σ_k n_k log(r / |z_k|)` over the
    preimages `z_k` of a hyperplane in the disk `|z| < r`.

    Arguments:
        model (CoveringModel or AlgebroidCurve): The curve or its model.
        target (HyperplaneTarget or str): The hyperplane.
        r (float): Radius of the disk.
        truncated (bool, optional): Count every point once, which gives
            the truncated counting function `N̄` (default False).
        origin (str, optional): Treatment of a preimage at the origin.
            'raise' (default) raises :class:`DivisorPointAtOrigin`;
            'classical' counts it with weight `log r`.

    Returns:
        float: The value `N(r, D)` or `N̄(r, D)`.

    Examples:

        >>> model = ag.build_covering(ag.curve(['1-z', 0, 1]), 5)
        >>> ag.counting(model, 'value:0', np.e)
        0.5
    """

    if isinstance(model, AlgebroidCurve):
        from .covering import value_divisor
        curve = model
        divisor = value_divisor(curve, target, r)
    else:
        _check_radius(model, r)
        curve = model.curve
        divisor = model.value_divisor(target)
    return _weighted_log(divisor.points, r, curve.total_sheets,
                         origin, truncated)


def branch_counting(model, r):
    """ Counting function of the branch divisor,
    `N_bran(r) = (1/ν) Σ_b (ν - l(b)) log(r / |b|)`.
    A branch point at the origin is counted with weight `log r`. """
    _check_radius(model, r)
    return _weighted_log(model.branch_divisor.points, r,
                         model.sheet_count, 'classical')


def shift_origin(model, z0):
    """ Covering model of the curve translated by `z → z + z0`,
    with the same disk radius. """
    from .covering import build_covering
    return build_covering(model.curve.shifted(z0), model.disk_radius)


# Main theorem checks ----------------------------------------------------- #

def _median_deviation(values):
    values = np.asarray(values, dtype=float)
    median = float(np.median(values))
    return median, float(np.abs(values - median).max())


def fmt_check(model, target, r_grid, tol=0.05, settings=None,
              characteristic_table=None):
    """ First main theorem check `T(r) - m(r, D) - N(r, D) = O(1)`.

    Arguments:
        model (CoveringModel): The covering model.
        target (HyperplaneTarget or str): The hyperplane.
        r_grid (array_like): Radii within the covering disk.
        tol (float, optional): Accepted deviation of the residual
            from its median (default 0.05).
        settings (QuadratureSettings, optional): Quadrature settings.
        characteristic_table (pandas.DataFrame, optional): Output of
            :func:`characteristic_series` on the same grid.

    Returns:
        AttrDict: 'table' with columns r, T, m, N, residual;
        'median', 'max_deviation', and 'passed'.
    """

    settings = _settings(settings)
    target = HyperplaneTarget.parse(target, model.curve.d)
    table = characteristic_table
    if table is None:
        table = characteristic_series(model, r_grid, settings)
    table = table[['r', 'T']].copy()
    table['m'] = [proximity(model, target, r, settings) for r in table['r']]
    table['N'] = [counting(model, target, r) for r in table['r']]
    table['residual'] = table['T'] - table['m'] - table['N']
    median, dev = _median_deviation(table['residual'])
    return AttrDict(target=target.label, table=table, median=median,
                    max_deviation=dev, passed=bool(dev < tol))


def first_main_identity(model, target, r, settings=None):
    """ Exact first main theorem of a single-valued curve,
    `T(r) + u_D(F(0)) = m(r, D) + N(r, D)`.

    Returns:
        AttrDict: 'residual' `T - m - N` and 'expected' `-u_D(F(0))`.
    """

    if model.sheet_count != 1:
        raise ValueError("The identity holds for single-valued curves")
    target = HyperplaneTarget.parse(target, model.curve.d)
    settings = _settings(settings)
    T = characteristic(model, r, settings)
    m = proximity(model, target, r, settings)
    N = counting(model, target, r)
    at_origin = _homogeneous(solve_fiber(model.curve, 0).values)
    return AttrDict(residual=T - m - N,
                    expected=-float(target.potential(at_origin)[0]))


def bran_bound_check(model, r_grid, tol=0.1, ramp=0.1, settings=None,
                     characteristic_table=None):
    """ Checks that `N_bran(r) - (2ν - 2) T(r)` is bounded above:
    after the first `ramp` share of the grid, the excess may not rise
    more than `tol` above its maximum on the ramp.

    Returns:
        AttrDict: 'table' with columns r, T, N_bran, excess;
        'max_growth' and 'passed'.
    """

    table = characteristic_table
    if table is None:
        table = characteristic_series(model, r_grid, settings)
    table = table[['r', 'T']].copy()
    nu = model.sheet_count
    table['N_bran'] = [branch_counting(model, r) for r in table['r']]
    table['excess'] = table['N_bran'] - (2 * nu - 2) * table['T']
    excess = table['excess'].to_numpy()
    k = max(1, int(np.ceil(ramp * len(excess))))
    growth = float((excess[k:] - excess[:k].max()).max()) \
        if len(excess) > k else 0.
    return AttrDict(table=table, max_growth=growth,
                    passed=bool(growth < tol))
