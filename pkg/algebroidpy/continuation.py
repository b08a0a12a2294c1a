"""
Algebroidpy Continuation Module
Content: Fibers, path tracking, monodromy, branch orders,
Puiseux expansions, and irreducibility
"""

import itertools
import logging
import numpy as np
import networkx as nx

from dataclasses import dataclass
from fractions import Fraction
from scipy.optimize import linear_sum_assignment
from sympy.combinatorics import Permutation

from .defining import critical_data, CLUSTER_TOL
from .paths import PathSpec, Segment
from .roots import aberth, newton_polish, polyval_asc
from .tools import (parse_complex, Pole, PoleAtBase, NearCritical,
                    StepCollapse, SheetCollision, RootFindingFailure,
                    LoopContainsOtherBranchPoints, ExpansionDiverged,
                    Inconclusive, PathCrossesBranchSet, AlgebroidError)

logger = logging.getLogger(__name__)

SEPARATION_TOL = 1e-8  # Relative distance below which roots count as equal
RESIDUAL_TOL = 1e-8  # Relative residual accepted for fiber roots
NEWTON_TOL = 1e-13
MAX_NEWTON = 8
INITIAL_STEP = 0.05
MAX_LOOP_RADIUS = 1.
PUISEUX_SAMPLES = 64  # Samples per turn of the fitting circle


def _canonical(roots):
    """ Sorts roots by real and then imaginary part,
    rounded to 8 decimals. """
    roots = np.asarray(roots, dtype=complex)
    order = sorted(range(len(roots)),
                   key=lambda i: (round(roots[i].real, 8),
                                  round(roots[i].imag, 8)))
    return roots[order]


def _min_separation(w):
    if len(w) < 2:
        return np.inf
    diff = np.abs(w[:, None] - w[None, :])
    diff[np.diag_indices(len(w))] = np.inf
    return diff.min()


def _derivative_coeffs(a):
    return np.array([a[j] * j for j in range(1, len(a))])


class Fiber:
    """ The `ν` points above a base point `z`, one coordinate tuple
    `(w_1, ..., w_d)` per sheet.

    The roots of each coordinate are stored separately; sheets are the
    combinations given by `index`, which by default is the Cartesian
    product of the canonically sorted component roots.

    Arguments:
        base_point (complex): The point `z`.
        component_roots (list of array_like): Roots of every component.
        index (numpy.ndarray, optional): Integer array of shape (ν, d)
            that selects a root of each component for every sheet.

    Attributes:
        values (numpy.ndarray): Coordinates of the sheets, shape (ν, d).
    """

    def __init__(self, base_point, component_roots, index=None):
        self.base_point = complex(base_point)
        self.component_roots = tuple(np.asarray(r, dtype=complex)
                                     for r in component_roots)
        if index is None:
            ranges = [range(len(r)) for r in self.component_roots]
            index = np.array(list(itertools.product(*ranges)), dtype=int)
        self.index = np.asarray(index, dtype=int).reshape(
            -1, len(self.component_roots))

    def __repr__(self):
        return f"Fiber ({len(self)} sheets at z={self.base_point})"

    def __len__(self):
        return len(self.index)

    def __getitem__(self, key):
        return tuple(self.values[key])

    def __iter__(self):
        return (tuple(row) for row in self.values)

    @property
    def values(self):
        return np.stack([roots[self.index[:, k]] for k, roots
                         in enumerate(self.component_roots)], axis=1)

    @property
    def d(self):
        return len(self.component_roots)

    @property
    def min_separation(self):
        """ Smallest distance between two distinct roots
        of the same component. """
        return min(_min_separation(r) for r in self.component_roots)

    def match(self, other):
        """ Sheet correspondence between two fibers over the same point.

        Returns:
            list of int: For every sheet `i` of `other`, the sheet of
            this fiber with the same coordinates.
        """

        if [len(r) for r in other.component_roots] \
                != [len(r) for r in self.component_roots]:
            raise ValueError("Fibers belong to different curves")
        perms = []
        for mine, theirs in zip(self.component_roots, other.component_roots):
            cost = np.abs(theirs[:, None] - mine[None, :])
            rows, cols = linear_sum_assignment(cost)
            if cost[rows, cols].max() > 1e-6 * max(1., np.abs(mine).max()):
                raise RootFindingFailure(
                    "Fibers do not match", {'distance': cost[rows, cols].max()})
            perm = np.empty(len(mine), dtype=int)
            perm[rows] = cols
            perms.append(perm)
        lookup = {tuple(row): i for i, row in enumerate(self.index)}
        return [lookup[tuple(perms[k][row[k]] for k in range(self.d))]
                for row in other.index]

    def to_dict(self):
        return {'base_point': [self.base_point.real, self.base_point.imag],
                'values': [[[w.real, w.imag] for w in row]
                           for row in self.values]}


# Fibers ------------------------------------------------------------------ #

def _component_roots(P, zv, separation, residual):
    a = P.coeff_values(zv)
    if not np.all(np.isfinite(a)):
        raise Pole(zv)
    scale = np.abs(a).max()
    if abs(a[-1]) <= 1e-14 * scale:
        raise PoleAtBase(zv)
    w = aberth(a)
    bound = residual * polyval_asc(np.abs(a), np.abs(w)).real
    if np.any(np.abs(polyval_asc(a, w)) > bound):
        w = newton_polish(a, w, steps=3)
        if np.any(np.abs(polyval_asc(a, w)) > bound):
            raise RootFindingFailure(f"Residual too large at z={zv}",
                                     {'roots': w.tolist()})
    sep = _min_separation(w)
    if sep < separation * max(1., np.abs(w).max()):
        raise NearCritical(zv, sep)
    return _canonical(w)


def solve_fiber(curve, zv, separation=SEPARATION_TOL, residual=RESIDUAL_TOL):
    """ Solves all `ν` sheets of the curve above a point.

    Every component is solved with the Aberth-Ehrlich iteration;
    the sheets are the combinations of component roots.

    Arguments:
        curve (AlgebroidCurve): The curve.
        zv (complex): Base point off the critical set.
        separation (float, optional): Relative root distance below which
            :class:`NearCritical` is raised (default 1e-8).
        residual (float, optional): Accepted residual relative to the
            coefficient magnitudes (default 1e-8).

    Returns:
        Fiber: Sheets in canonical order.

    Examples:

        >>> fiber = ag.solve_fiber(ag.curve(['-z', 0, 1]), 4)
        >>> fiber.values[:, 0]
        array([-2.+0.j,  2.+0.j])
    """
    zv = parse_complex(zv)
    return Fiber(zv, [_component_roots(P, zv, separation, residual)
                      for P in curve.components])


# Tracking ---------------------------------------------------------------- #

def _newton_roots(a, w):
    """ Newton correction of all roots; returns convergence flag,
    corrected roots, and the size of the first Newton step. """
    da = _derivative_coeffs(a)
    beta = None
    for it in range(MAX_NEWTON):
        with np.errstate(all='ignore'):
            step = polyval_asc(a, w) / polyval_asc(da, w)
        if not np.all(np.isfinite(step)):
            return False, w, beta
        w = w - step
        if beta is None:
            beta = np.abs(step)
        if np.all(np.abs(step) <= NEWTON_TOL * np.maximum(1., np.abs(w))):
            return True, w, beta
    return False, w, beta


def _distinct(w, beta):
    """ Approximate roots converge to distinct roots if their distances
    exceed twice the sum of their Newton step sizes. """
    if len(w) < 2:
        return True
    diff = np.abs(w[:, None] - w[None, :])
    bound = 2 * (beta[:, None] + beta[None, :])
    np.fill_diagonal(diff, np.inf)
    return bool(np.all(diff > bound))


def _track_segment(P, seg, roots, total_length, separation, obstacles):
    """ Continues the roots of one component along one segment. """

    w = np.array(roots, dtype=complex)
    if seg.length == 0:
        return w
    t, h = 0., INITIAL_STEP
    while t < 1.:
        h = min(h, 1. - t)
        zt = complex(seg.point(t))
        vel = abs(complex(seg.velocity(t)))
        if len(obstacles):
            h = min(h, np.abs(obstacles - zt).min() / (4 * vel))
        a = P.coeff_values(zt)
        with np.errstate(all='ignore'):
            slope = -polyval_asc(P.coeff_derivatives(zt), w) \
                / polyval_asc(_derivative_coeffs(a), w)
        sep = _min_separation(w)
        speed = np.abs(slope).max() * vel
        if not np.isfinite(speed):
            raise StepCollapse(zt, 0.)
        if speed > 0 and np.isfinite(sep):
            h = min(h, 0.25 * sep / speed)

        while True:
            if h * seg.length < 1e-14 * total_length:
                raise StepCollapse(zt, h * seg.length)
            t_next = 1. if 1. - (t + h) < 1e-15 else t + h
            z1 = complex(seg.point(t_next))
            pred = w + slope * (z1 - zt)
            a1 = P.coeff_values(z1)
            if not np.all(np.isfinite(a1)):
                raise Pole(z1)
            ok, w1, beta = _newton_roots(a1, pred)
            if ok and _distinct(pred, beta) \
                    and np.abs(w1 - pred).max() <= 0.25 * sep:
                break
            h /= 2

        t, w = t_next, w1
        new_sep = _min_separation(w)
        if new_sep < separation * max(1., np.abs(w).max()):
            raise SheetCollision(z1, new_sep)
        h *= 1.5
    return w


def _track_component(P, path, roots, separation, obstacles):
    total = max(path.length, 1e-300)
    for seg in path:
        roots = _track_segment(P, seg, roots, total, separation, obstacles)
    return roots


def track(curve, path, start, critical=None, separation=SEPARATION_TOL):
    """ Continues every sheet of a fiber along a path.

    Each step predicts the roots from the implicit derivative
    `dw/dz = -Ψ_z / Ψ_W` and corrects them with Newton's method.
    Steps are bounded by a quarter of the distance to the nearest critical
    point and by the root separation, halved when the corrector fails or
    the corrected roots cannot be kept apart, and grown by 1.5 otherwise.

    Arguments:
        curve (AlgebroidCurve): The curve.
        path (PathSpec): Path starting at the base point of `start`.
        start (Fiber): Fiber at `path.start`.
        critical (CriticalData, optional): Critical points that bound the
            step size and are checked against `path.min_clearance`.
        separation (float, optional): Relative separation below which
            :class:`SheetCollision` is raised (default 1e-8).

    Returns:
        Fiber: Fiber at `path.end` whose sheets are aligned with
        the sheets of `start`.
    """

    if abs(path.start - start.base_point) > 1e-12 * max(1., abs(path.start)):
        raise ValueError("Path does not start at the base point of the fiber")
    obstacles = np.zeros(0, dtype=complex)
    if critical is not None:
        obstacles = np.array(critical.critical_points, dtype=complex)
        if path.min_clearance > 0:
            path.check_clearance(obstacles)
    roots = [_track_component(P, path, r, separation, obstacles)
             for P, r in zip(curve.components, start.component_roots)]
    return Fiber(path.end, roots, start.index)


# Monodromy --------------------------------------------------------------- #

@dataclass(frozen=True)
class MonodromyPermutation:
    """ Sheet permutation obtained by continuing a fiber once around
    a loop. Entry `i` is the sheet on which sheet `i` ends. """

    branch_point: complex
    permutation: tuple
    loop_radius: float
    base_point: complex

    def __len__(self):
        return len(self.permutation)

    @property
    def cycles(self):
        return [tuple(c) for c in
                Permutation(list(self.permutation)).full_cyclic_form]

    @property
    def cycle_lengths(self):
        """ Lengths `λ_1 ≥ ... ≥ λ_l` of the cycles, summing to `ν`. """
        return tuple(sorted((len(c) for c in self.cycles), reverse=True))

    @property
    def l(self):
        return len(self.cycles)

    @property
    def order(self):
        """ Order `ν - l` of the branch divisor at the point. """
        return len(self.permutation) - self.l

    @property
    def is_identity(self):
        return all(i == p for i, p in enumerate(self.permutation))

    def then(self, other):
        """ Permutation of the loop followed by the loop of `other`. """
        return tuple(other.permutation[p] for p in self.permutation)


def path_monodromy(curve, path, base_fiber, critical=None,
                   branch_point=np.nan, loop_radius=np.nan):
    """ Sheet permutation of a closed path that starts
    at the base point of `base_fiber`. """
    if not path.is_closed:
        raise ValueError("Monodromy needs a closed path")
    end = track(curve, path, base_fiber, critical)
    perm = base_fiber.match(end)
    return MonodromyPermutation(complex(branch_point), tuple(perm),
                                float(loop_radius), base_fiber.base_point)


def _others(critical, point, tol=CLUSTER_TOL):
    return [p for p in critical.critical_points
            if abs(p - point) > tol * max(1., abs(point))]


def default_loop_radius(point, critical):
    """ Half the distance to the nearest other critical point,
    or 0.5 if there is none, capped at 1. """
    others = _others(critical, point)
    if not others:
        return 0.5
    return min(0.5 * min(abs(p - point) for p in others), MAX_LOOP_RADIUS)


def _local_critical(curve, point, radius=None):
    reach = 2 * (radius or MAX_LOOP_RADIUS) + 2
    return critical_data(curve, abs(point) + reach)


def monodromy(curve, around, radius=None, base_fiber=None, critical=None):
    """ Monodromy of a small counterclockwise circle around a point.

    The circle starts and ends at its east point `around + radius`.

    Arguments:
        curve (AlgebroidCurve): The curve.
        around (complex): Center of the loop.
        radius (float, optional): Loop radius. By default,
            half the distance to the nearest other critical point.
        base_fiber (Fiber, optional): Fiber at `around + radius`.
            Solved if not given.
        critical (CriticalData, optional): Critical points covering
            the loop; computed if not given.

    Returns:
        MonodromyPermutation: The sheet permutation.

    Raises:
        LoopContainsOtherBranchPoints: If another critical point lies
            inside or on the loop.
    """

    around = parse_complex(around)
    if critical is None:
        critical = _local_critical(curve, around, radius)
    if radius is None:
        radius = default_loop_radius(around, critical)
    inside = [p for p in _others(critical, around)
              if abs(p - around) < radius * (1 + 1e-3)]
    if inside:
        raise LoopContainsOtherBranchPoints(
            f"Loop of radius {radius} around {around} "
            f"encloses or touches {inside}")
    base = around + radius
    if base_fiber is None:
        base_fiber = solve_fiber(curve, base)
    loop = PathSpec.circle(around, radius)
    return path_monodromy(curve, loop, base_fiber, critical,
                          around, radius)


def branch_order(curve, point, critical=None):
    """ Number of local cycles `l` and their lengths at a point.
    The branch divisor has order `ν - l` there.

    Returns:
        tuple: `(l, cycle_lengths)`.
    """
    perm = monodromy(curve, point, critical=critical)
    return perm.l, perm.cycle_lengths


def _blocked(a, b, obstacles):
    seg = Segment('line', a, b)
    hits = [(p, r) for p, r in obstacles if seg.distance(p) < r]
    if not hits:
        return None
    d = b - a
    return min(hits, key=lambda x: ((x[0] - a) * np.conj(d)).real)


def _route(a, b, obstacles, depth=0):
    """ Waypoints of a polygonal path from a to b
    that keeps clear of the disks `obstacles`. """
    hit = _blocked(a, b, obstacles)
    if hit is None:
        return [b]
    if depth > 6:
        raise PathCrossesBranchSet(f"No clear route from {a} to {b}")
    p, r = hit
    normal = 1j * (b - a) / abs(b - a)
    for scale in (2., 4., 8.):
        for sign in (1, -1):
            wp = p + sign * normal * r * scale
            if _blocked(a, wp, obstacles) is None and \
                    all(abs(wp - q) >= s for q, s in obstacles):
                try:
                    return [wp] + _route(wp, b, obstacles, depth + 1)
                except PathCrossesBranchSet:
                    continue
    raise PathCrossesBranchSet(f"No clear route from {a} to {b}")


def lasso_path(base, point, radius, obstacles=()):
    """ Closed path from `base` along a spoke to the circle of the given
    radius around `point`, once around it counterclockwise, and back.

    Arguments:
        base (complex): Start and end of the path.
        point (complex): Center of the circle.
        radius (float): Circle radius.
        obstacles (list of tuple): Disks `(center, radius)`
            the spoke must avoid.

    Returns:
        PathSpec: The lasso.
    """
    direction = (base - point) / abs(base - point)
    entry = point + radius * direction
    spoke = PathSpec(base)
    for wp in _route(base, entry, list(obstacles)):
        spoke.line(wp)
    loop = PathSpec(entry).arc(point, 2 * np.pi)
    return spoke.concat(loop).concat(spoke.reversed())


def lasso_monodromy(curve, base_fiber, point, radius, obstacles=(),
                    critical=None):
    """ Monodromy of a lasso around `point` based at the base point
    of `base_fiber`, so that several generators share one sheet labelling.
    See :func:`lasso_path`. """
    path = lasso_path(base_fiber.base_point, point, radius, obstacles)
    return path_monodromy(curve, path, base_fiber, critical, point, radius)


def _angular_key(p, base):
    phi = np.angle(base) if base != 0 else 0.
    return np.mod(np.angle((p - base) * np.exp(-1j * phi)), 2 * np.pi)


def monodromy_generators(curve, critical, base_point=None, base_fiber=None):
    """ Lasso monodromies around every critical point, based at a common
    point and ordered by the direction of their spokes.

    For a base point on a circle that encloses all critical points, the
    generators composed in the returned order give the monodromy
    of that circle.

    Arguments:
        curve (AlgebroidCurve): The curve.
        critical (CriticalData): Critical points to encircle.
        base_point (complex, optional): Common base point. By default,
            a point just outside the disk of the critical data.
        base_fiber (Fiber, optional): Fiber at the base point.

    Returns:
        tuple: The base fiber and a list of :class:`MonodromyPermutation`.
    """

    if base_point is None:
        base_point = 1.05 * critical.disk_radius * np.exp(0.1234j)
    base_point = parse_complex(base_point)
    if base_fiber is None:
        base_fiber = solve_fiber(curve, base_point)
    points = sorted(critical.critical_points,
                    key=lambda p: _angular_key(p, base_point))
    radii = {p: default_loop_radius(p, critical) for p in points}
    gens = []
    for p in points:
        obstacles = [(q, 0.25 * radii[q]) for q in points if q != p]
        gens.append(lasso_monodromy(curve, base_fiber, p, radii[p],
                                    obstacles, critical))
    return base_fiber, gens


def compose(perms, nu=None):
    """ Permutation of the loops `perms` traversed in order. """
    if not perms:
        return tuple(range(nu or 0))
    total = tuple(range(len(perms[0])))
    for p in perms:
        total = tuple(p.permutation[i] for i in total)
    return total


def sheet_orbits(perms, nu):
    """ Orbits of the group generated by the permutations,
    as connected components of the sheet graph. """
    graph = nx.Graph()
    graph.add_nodes_from(range(nu))
    for p in perms:
        perm = p.permutation if isinstance(p, MonodromyPermutation) else p
        graph.add_edges_from((i, j) for i, j in enumerate(perm) if i != j)
    return sorted((sorted(c) for c in nx.connected_components(graph)),
                  key=lambda c: c[0])


def is_irreducible(curve, disk_radius, critical=None):
    """ Whether the monodromy group of a single-component curve acts
    transitively on its sheets, using all critical points in the disk.

    Raises:
        Inconclusive: If a monodromy computation fails.
    """
    if curve.d != 1:
        raise ValueError("Irreducibility is defined for one component")
    if critical is None:
        critical = critical_data(curve, disk_radius)
    try:
        _, gens = monodromy_generators(curve, critical)
    except AlgebroidError as e:
        raise Inconclusive(f"Monodromy failed: {e}") from e
    return len(sheet_orbits(gens, curve.total_sheets)) == 1


# Puiseux expansions ------------------------------------------------------- #

@dataclass(frozen=True)
class PuiseuxSeries:
    """ Truncated Puiseux series `w = Σ b_e (z - p)^e` of one sheet cycle
    of one coordinate, with exponents `e` in `(1/λ)Z`. Evaluation uses the
    principal branch of `(z - p)^(1/λ)`; the conjugate sheets of the cycle
    replace it by its products with powers of `exp(2πi/λ)`. """

    branch_point: complex
    ramification: int
    exponents: tuple
    coefficients: tuple
    component: int = 0
    radius: float = np.nan

    def __len__(self):
        return len(self.exponents)

    @property
    def leading_exponent(self):
        """ First exponent with a nonzero coefficient besides zero. """
        return next((e for e in self.exponents if e != 0), None)

    @property
    def valuation(self):
        """ Smallest exponent, or infinity for the zero series. """
        return self.exponents[0] if self.exponents else np.inf

    def terms(self, conjugate=0):
        """ Exponents mapped to coefficients for a conjugate sheet. """
        return {e: b * np.exp(2j * np.pi * conjugate * float(e))
                for e, b in zip(self.exponents, self.coefficients)}

    def evaluate(self, zv, conjugate=0):
        zv = np.asarray(zv, dtype=complex)
        s = (zv - self.branch_point) ** (1. / self.ramification) \
            * np.exp(2j * np.pi * conjugate / self.ramification)
        total = np.zeros_like(zv)
        for e, b in zip(self.exponents, self.coefficients):
            total = total + b * s ** int(e * self.ramification)
        return total

    def conjugates(self, zv):
        """ Values of all `λ` sheets of the cycle at `zv`. """
        return np.array([self.evaluate(zv, m)
                         for m in range(self.ramification)])

    def truncated(self, n_terms):
        return PuiseuxSeries(self.branch_point, self.ramification,
                             self.exponents[:n_terms],
                             self.coefficients[:n_terms],
                             self.component, self.radius)


def _turn_samples(P, point, rho, samples):
    """ Tracks all roots of a component once around the circle and
    returns the start roots, the samples (roots x samples), and the
    component permutation. """
    start = _component_roots(P, point + rho, SEPARATION_TOL, RESIDUAL_TOL)
    arcs = [Segment('arc', point + rho * np.exp(2j * np.pi * k / samples),
                    center=point, angle=2 * np.pi / samples)
            for k in range(samples)]
    total = 2 * np.pi * rho
    w = start.copy()
    rows = [w]
    for seg in arcs:
        w = _track_segment(P, seg, w, total, SEPARATION_TOL, np.zeros(0))
        rows.append(w)
    cost = np.abs(w[:, None] - start[None, :])
    _, perm = linear_sum_assignment(cost)
    return start, np.array(rows[:-1]).T, perm


def _fit_cycle(values, rho, lam, point, component, n_terms):
    m = len(values)
    scale = max(np.abs(values).max(), 1e-300)
    c = np.fft.fft(values) / m
    ks = np.where(np.arange(m) < m // 2, np.arange(m), np.arange(m) - m)
    tail = np.abs(c[np.abs(ks) >= m // 4])
    if tail.size and tail.max() > 1e-6 * scale:
        raise ExpansionDiverged(
            f"Coefficients at {point} do not decay on radius {rho:.3g} "
            f"(tail {tail.max():.3g})")
    keep = np.abs(c) > max(1e-11 * scale, 1e-14)
    order = np.argsort(ks)
    ks, c, keep = ks[order], c[order], keep[order]
    ks, c = ks[keep], c[keep]
    b = c / rho ** (ks / lam)

    # Choose the conjugate with the smallest argument of the
    # leading nonconstant coefficient
    lead = next((i for i, k in enumerate(ks) if k != 0), None)
    if lead is not None and lam > 1:
        rotations = [np.exp(2j * np.pi * ks * j / lam) for j in range(lam)]
        j = min(range(lam), key=lambda j: abs(np.angle(b[lead]
                                                       * rotations[j][lead])))
        b = b * rotations[j]
    if n_terms is not None:
        ks, b = ks[:n_terms], b[:n_terms]
    exps = tuple(Fraction(int(k), lam) for k in ks)
    return PuiseuxSeries(point, lam, exps, tuple(complex(x) for x in b),
                         component, rho)


def puiseux_expand(curve, point, n_terms=3, radius=None, critical=None,
                   samples=PUISEUX_SAMPLES):
    """ Puiseux expansions of every sheet cycle of every coordinate
    at a point.

    The roots of each component are tracked once around a circle
    `|z - p| = ρ`. The sheets of a cycle of length `λ` join into one
    periodic function of `s = (z - p)^(1/λ)`, whose Laurent coefficients
    are read from a discrete Fourier transform of the samples.

    Arguments:
        curve (AlgebroidCurve): The curve.
        point (complex): Expansion point.
        n_terms (int, optional): Number of nonzero terms to keep
            (default 3). If None, all resolved terms are kept.
        radius (float, optional): Fitting radius `ρ`. By default, half the
            distance to the nearest other critical point, capped at 0.5.
        critical (CriticalData, optional): Critical points near the point.
        samples (int, optional): Samples per turn (default 64).

    Returns:
        list of PuiseuxSeries: One series per cycle and coordinate.

    Raises:
        ExpansionDiverged: If the coefficients do not decay, even after
            the radius has been halved twice.
    """

    point = parse_complex(point)
    if critical is None:
        critical = _local_critical(curve, point)
    if radius is None:
        radius = min(default_loop_radius(point, critical), 0.5)
    series = []
    for k, P in enumerate(curve.components):
        rho = radius
        for attempt in range(3):
            try:
                _, rows, perm = _turn_samples(P, point, rho, samples)
                done, found = set(), []
                for r in range(P.degree):
                    if r in done:
                        continue
                    cycle = [r]
                    while perm[cycle[-1]] != r:
                        cycle.append(perm[cycle[-1]])
                    done.update(cycle)
                    values = np.concatenate([rows[i] for i in cycle])
                    found.append(_fit_cycle(values, rho, len(cycle),
                                            point, k, n_terms))
                series.extend(found)
                break
            except ExpansionDiverged:
                if attempt == 2:
                    raise
                rho /= 2
                logger.info(f"Refitting expansion at {point} "
                            f"with radius {rho:.3g}")
    return series
