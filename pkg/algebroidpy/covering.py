"""
Algebroidpy Covering Module
Content: Ramified covering model, branch and value divisors,
and discriminant estimates of the branch divisor
"""

import itertools
import logging
import numpy as np
import pandas as pd

from dataclasses import dataclass, field
from fractions import Fraction

from .defining import critical_data, _poly_zeros, CLUSTER_TOL
from .field import _as_poly, exact_number
from .continuation import (solve_fiber, track, monodromy,
                           monodromy_generators, puiseux_expand,
                           MAX_LOOP_RADIUS)
from .paths import PathSpec
from .roots import zeros_in_disk, batch_roots, polyval_asc
from .targets import HyperplaneTarget
from .tools import (AttrDict, cluster_points, parse_complex, AlgebroidError,
                    TargetDegenerate)

logger = logging.getLogger(__name__)

LIFT_CLEARANCE = 1e-6  # Smallest distance of lift paths to critical points


@dataclass(frozen=True)
class BranchRecord:
    """ Branch point with the cycle lengths of its local monodromy
    and the order `ν - l` of the branch divisor. """

    point: complex
    cycle_lengths: tuple
    order: int
    loop_radius: float


@dataclass(frozen=True)
class ValueDivisor:
    """ Points of a divisor with multiplicities inside a disk.

    Attributes:
        target (str): Description of the divisor.
        points (tuple): Pairs `(point, multiplicity)` ordered by modulus.
        disk_radius (float): Radius of the disk.
        identically_zero (bool): Whether the defining function vanishes
            identically, in which case `points` is empty.
    """

    target: str
    points: tuple
    disk_radius: float
    identically_zero: bool = False

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    @property
    def total(self):
        return sum(m for _, m in self.points)

    def within(self, r):
        """ Divisor restricted to the disk `|z| < r`. """
        return ValueDivisor(self.target,
                            tuple((p, m) for p, m in self.points
                                  if abs(p) < r),
                            min(r, self.disk_radius), self.identically_zero)

    def order_at(self, zv, tol=1e-6):
        return sum(m for p, m in self.points
                   if abs(p - zv) <= tol * max(1., abs(zv)))

    def to_dict(self):
        return {'target': self.target, 'disk_radius': self.disk_radius,
                'points': [[p.real, p.imag, m] for p, m in self.points]}


class BranchDivisor(ValueDivisor):
    pass


def _branch_divisor(records, radius):
    return BranchDivisor('branch', tuple((r.point, r.order) for r in records),
                         radius)


class CoveringModel:
    """ The `ν`-sheeted ramified covering of a disk on which the curve
    becomes single valued, described by a base fiber, the branch records
    of its multiple points, and lasso monodromy generators.
    Use :func:`build_covering` to create it.

    Attributes:
        curve (AlgebroidCurve): The curve.
        disk_radius (float): Radius of the disk around the origin.
        critical (CriticalData): Critical points near the disk.
        base_fiber (Fiber): Fiber at the base point.
        branch_records (list of BranchRecord): Branch points in the disk.
        generators (list of MonodromyPermutation): Lasso monodromies based
            at the base point, or None if they could not be computed.
        warnings (list of str): Recoverable problems.
    """

    def __init__(self, curve, disk_radius, critical, base_fiber,
                 branch_records, generators=None, warnings=None):
        self.curve = curve
        self.disk_radius = float(disk_radius)
        self.critical = critical
        self.base_fiber = base_fiber
        self.branch_records = list(branch_records)
        self.generators = generators
        self.warnings = list(warnings or [])
        self._divisors = {}

    def __repr__(self):
        return (f"CoveringModel (ν={self.sheet_count}, "
                f"{len(self.branch_records)} branch points, "
                f"radius {self.disk_radius})")

    @property
    def sheet_count(self):
        return self.curve.total_sheets

    @property
    def base_point(self):
        return self.base_fiber.base_point

    @property
    def branch_divisor(self):
        return _branch_divisor(self.branch_records, self.disk_radius)

    def value_divisor(self, target):
        """ Cached :func:`value_divisor` over the model disk. """
        target = HyperplaneTarget.parse(target, self.curve.d)
        if target.label not in self._divisors:
            self._divisors[target.label] = value_divisor(
                self.curve, target, self.disk_radius)
        return self._divisors[target.label]

    def lift_evaluate(self, sheet, zv, path_hint=None):
        return lift_evaluate(self, sheet, zv, path_hint)


def _base_point(radius, points):
    """ Point of the disk with the largest distance to the critical set. """
    radii = radius * np.array([0.3, 0.45, 0.6, 0.75, 0.9])
    angles = 0.1234 + 2 * np.pi * np.arange(24) / 24
    candidates = (radii[:, None] * np.exp(1j * angles)[None, :]).ravel()
    if not len(points):
        return complex(candidates[len(angles) * 2])
    dist = np.abs(candidates[:, None] - np.array(points)[None, :]).min(axis=1)
    return complex(candidates[np.argmax(dist)])


def build_covering(curve, disk_radius, generators=True, critical=None,
                   base_point=None):
    """ Builds the ramified covering model of a disk.

    Every critical point in the disk gets a local monodromy; those with a
    nontrivial permutation become branch records with their cycle lengths
    and order `ν - l`. The base fiber is placed at a point of the disk
    far from the critical set.

    Arguments:
        curve (AlgebroidCurve): The curve.
        disk_radius (float): Radius of the disk `|z| < disk_radius`.
        generators (bool, optional): Also compute lasso monodromies
            based at the base point (default True).
        critical (CriticalData, optional): Critical data covering the
            disk and its neighbourhood of width 2.
        base_point (complex, optional): Base point of the fiber and the
            lasso generators. By default, a point of the disk far from
            the critical set.

    Returns:
        CoveringModel: The covering model.

    Examples:

        >>> model = ag.build_covering(ag.curve(['-z', 0, 1]), 2)
        >>> model.branch_records[0].cycle_lengths
        (2,)
    """

    if critical is None:
        critical = critical_data(curve, disk_radius + 2 * MAX_LOOP_RADIUS)
    inner = [p for p in critical.critical_points if abs(p) < disk_radius]
    if base_point is None:
        base = _base_point(disk_radius, critical.critical_points)
    else:
        base = parse_complex(base_point)
        if abs(base) >= disk_radius:
            raise ValueError(f"Base point {base} lies outside the disk "
                             f"of radius {disk_radius}")
    base_fiber = solve_fiber(curve, base)

    records, warnings = [], []
    for p in inner:
        perm = monodromy(curve, p, critical=critical)
        if not perm.is_identity:
            records.append(BranchRecord(p, perm.cycle_lengths, perm.order,
                                        perm.loop_radius))
    gens = None
    if generators and inner:
        local = critical.__class__(tuple(inner), critical.multiple_points,
                                   critical.leading_coeff_zeros,
                                   critical.disk_radius)
        try:
            _, gens = monodromy_generators(curve, local, base_fiber=base_fiber,
                                           base_point=base)
        except AlgebroidError as e:
            warnings.append(f"Lasso generators unavailable: {e}")
            logger.warning(warnings[-1])
    elif generators:
        gens = []
    logger.info(f"Covering of radius {disk_radius}: {len(records)} "
                f"branch points, ν={curve.total_sheets}")
    return CoveringModel(curve, disk_radius, critical, base_fiber,
                         records, gens, warnings)


def default_lift_path(base, zv):
    """ Radial segment from `base` to the circle `|z| = |zv|`,
    followed by an arc to `zv`. """
    path = PathSpec(base)
    if abs(zv) == 0 or abs(base) == 0:
        return path.line(zv)
    radial = abs(zv) * base / abs(base)
    if abs(radial - base) > 0:
        path.line(radial)
    angle = np.angle(zv / radial)
    if angle != 0:
        path.arc(0, angle)
    return path


def lift_evaluate(model, sheet, zv, path_hint=None):
    """ Value of the single-valued lift of the curve on one sheet.

    The base fiber is continued along the default radial-then-angular
    path to `zv`, or along the default path to the start of `path_hint`
    followed by the hint.

    Arguments:
        model (CoveringModel): The covering model.
        sheet (int): Sheet index in the base fiber, from 0 to `ν - 1`.
        zv (complex): Point off the critical set.
        path_hint (PathSpec, optional): Path ending at `zv`.

    Returns:
        tuple: Coordinates `(w_1, ..., w_d)`.

    Raises:
        PathCrossesBranchSet: If the path comes too close
            to the critical set.
    """

    zv = parse_complex(zv)
    if path_hint is None:
        path = default_lift_path(model.base_point, zv)
    else:
        if abs(path_hint.end - zv) > 1e-12 * max(1., abs(zv)):
            raise ValueError("Path hint does not end at the evaluation point")
        path = default_lift_path(model.base_point, path_hint.start)
        if path_hint.segments:
            path = path.concat(path_hint)
    path.min_clearance = LIFT_CLEARANCE * max(1., model.disk_radius)
    path.check_clearance(model.critical.critical_points)
    end = track(model.curve, path, model.base_fiber, model.critical)
    return end[sheet]


# Value divisors ---------------------------------------------------------- #

def _phi(curve, target):
    """ Holomorphic function whose zeros are the preimages of a hyperplane:
    `Π_k A_k^(ν/ν_k) Π_sheets ⟨(1, w_1, ..., w_d), a⟩`. """
    a = target.vector
    nu = curve.total_sheets

    def func(zs):
        shape = np.shape(zs)
        zs = np.ravel(np.asarray(zs, dtype=complex))
        factor = np.ones(len(zs), dtype=complex)
        roots = []
        for P in curve.components:
            coeffs = P.coeff_values(zs)
            factor = factor * coeffs[-1] ** (nu // P.degree)
            roots.append(batch_roots(coeffs))
        total = np.ones(len(zs), dtype=complex)
        for combo in itertools.product(*[range(P.degree)
                                         for P in curve.components]):
            term = a[0] + sum(a[k + 1] * roots[k][:, j]
                              for k, j in enumerate(combo))
            total = total * term
        return (factor * total).reshape(shape)
    return func


def _check_not_identically(func, name):
    probe = np.array([0.3 + 0.7j, -1.1 + 0.2j, 0.5 - 1.3j, 2.1 + 1.7j])
    vals = func(probe)
    if np.all(np.abs(vals) < 1e-13):
        raise TargetDegenerate(f"Target {name} is attained identically")


def value_divisor(curve, target, disk_radius, tol=CLUSTER_TOL):
    """ Preimages of a target with multiplicities inside a disk.

    For one coordinate, poles are the zeros of the leading coefficient,
    zeros of the function are those of `A_0`, and a finite value `a` is
    attained at the zeros of `Ψ(z, a)`. Exact curves are solved through
    square-free factorization; numeric curves and hyperplanes of higher
    dimensional targets through an argument-principle zero search.

    Arguments:
        curve (AlgebroidCurve): The curve.
        target (HyperplaneTarget or str): The target, e.g. ``'value:0'``.
        disk_radius (float): Radius of the disk.
        tol (float, optional): Relative radius for merging points.

    Returns:
        ValueDivisor: The divisor.

    Raises:
        TargetDegenerate: If the curve lies in the hyperplane.
    """

    target = HyperplaneTarget.parse(target, curve.d)
    if target.n != curve.d:
        raise TargetDegenerate(f"Target {target.label} does not live in "
                               f"the projective space of dimension {curve.d}")
    coord = target.coordinate_value() if curve.d == 1 else None

    if coord is not None:
        P = curve.components[0]
        if coord[0] == 0:
            name = 'A_ν'
            if P.backend == 'exact':
                poly = P.cleared()[0][-1]
            else:
                def func(zs):
                    return P.coeff_values(zs)[-1]
        else:
            name = f'Ψ(z, {target.label})'
            if P.backend == 'exact':
                v = target.value if target.value is not None \
                    else coord[1]
                v = exact_number(v)
                poly = _as_poly(sum(n.as_expr() * v ** j for j, n
                                    in enumerate(P.cleared()[0])))
            else:
                v = coord[1]

                def func(zs):
                    return polyval_asc(P.coeff_values(zs), v)

        if P.backend == 'exact':
            if poly.is_zero:
                raise TargetDegenerate(f"{name} vanishes identically")
            pairs = [(p, m) for p, m in _poly_zeros(poly)
                     if abs(p) < disk_radius]
        else:
            _check_not_identically(func, name)
            pairs = zeros_in_disk(func, disk_radius, tol=tol)
    else:
        func = _phi(curve, target)
        _check_not_identically(func, target.label)
        pairs = zeros_in_disk(func, disk_radius, tol=tol)

    points = cluster_points([p for p, _ in pairs], tol,
                            [m for _, m in pairs])
    return ValueDivisor(target.label, tuple(points), float(disk_radius))


# Discriminant estimate ---------------------------------------------------- #

def _component_sheets(series, degree):
    """ Term dictionaries of all sheets of a component, with the fitting
    radius of their cycle. """
    sheets = []
    for s in series:
        for m in range(s.ramification):
            sheets.append((s.terms(m), s.radius))
    if len(sheets) != degree:
        raise AlgebroidError("Sheet cycles do not cover the component")
    return sheets


def _scale(sheets):
    return max(max((abs(b) * rho ** float(e) for e, b in t.items()),
                   default=0.) for t, rho in sheets) or 1.


def _valuation(sheet, scale, tol=1e-9):
    terms, rho = sheet
    found = [e for e, b in terms.items()
             if abs(b) * rho ** float(e) > tol * scale]
    return min(found) if found else None


def _difference_valuation(s1, s2, scale, tol=1e-9):
    (t1, rho1), (t2, rho2) = s1, s2
    rho = min(rho1, rho2)
    for e in sorted(set(t1) | set(t2)):
        diff = t1.get(e, 0) - t2.get(e, 0)
        if abs(diff) * rho ** float(e) > tol * scale:
            return e
    return None


def _pole_order(sheets_of_sheet, scales):
    vals = [_valuation(s, sc) for s, sc in zip(sheets_of_sheet, scales)]
    vals = [v for v in vals if v is not None]
    return max(Fraction(0), -min(vals)) if vals else Fraction(0)


def jk_orders(curve, point, k=0, critical=None):
    """ Order of vanishing at a point of the discriminant `J_k` of
    coordinate `k` over all `ν` product sheets, in the reduced
    representation of the curve.

    With sheet pole orders `e_i` and coordinate valuations
    `v(g_ik - g_jk)` read from Puiseux expansions, the order is
    `Σ_{i<j} 2 (e_i + e_j + v(g_ik - g_jk))`. It is infinite
    (`J_k ≡ 0`) when two product sheets share their `k`-th coordinate.

    Returns:
        AttrDict: 'order' (Fraction or None if `J_k ≡ 0`),
        'separating_order' over the distinct sheets of coordinate `k`,
        and 'identically_zero'.
    """

    series = puiseux_expand(curve, point, n_terms=None, critical=critical)
    comp_sheets = []
    for i, P in enumerate(curve.components):
        comp_sheets.append(_component_sheets(
            [s for s in series if s.component == i], P.degree))
    scales = [_scale(s) for s in comp_sheets]

    def pair_order(sheets_k, poles):
        total = Fraction(0)
        for i, j in itertools.combinations(range(len(sheets_k)), 2):
            v = _difference_valuation(sheets_k[i], sheets_k[j], scales[k])
            if v is None:
                return None
            total += 2 * (poles[i] + poles[j] + v)
        return total

    combos = list(itertools.product(*[range(len(s)) for s in comp_sheets]))
    poles = [_pole_order([comp_sheets[c][j] for c, j in enumerate(combo)],
                         scales) for combo in combos]
    order = pair_order([comp_sheets[k][combo[k]] for combo in combos], poles)
    own_poles = [_pole_order([s], [scales[k]]) for s in comp_sheets[k]]
    separating = pair_order(comp_sheets[k], own_poles)
    return AttrDict(order=order, separating_order=separating,
                    identically_zero=order is None)


def jk_divisor(curve, k, disk_radius, critical=None):
    """ Divisor of `J_k` inside a disk, see :func:`jk_orders`.
    Its support lies in the critical set. """
    if critical is None:
        critical = critical_data(curve, disk_radius + 2 * MAX_LOOP_RADIUS)
    points, zero = [], False
    for p in critical.critical_points:
        if abs(p) >= disk_radius:
            continue
        res = jk_orders(curve, p, k, critical)
        if res.identically_zero:
            zero = True
            break
        if res.order > 0:
            points.append((p, int(round(float(res.order)))))
    if zero:
        return ValueDivisor(f'J_{k + 1}', (), float(disk_radius), True)
    return ValueDivisor(f'J_{k + 1}', tuple(points), float(disk_radius))


def check_esti(model, k=None):
    """ Checks that the branch divisor is bounded by the divisor of
    `J_k` at every branch point of the model.

    Rows with `J_k ≡ 0` are marked vacuous and do not count: every
    branch point needs at least one coordinate whose `J_k` does not
    vanish identically, and all such rows must pass.

    Arguments:
        model (CoveringModel): The covering model.
        k (int, optional): Coordinate index. By default, all coordinates
            are checked.

    Returns:
        AttrDict: 'passed' (bool) and 'table' (pandas.DataFrame) with one
        row per branch point and coordinate.
    """

    ks = range(model.curve.d) if k is None else [k]
    rows = []
    for rec in model.branch_records:
        for kk in ks:
            res = jk_orders(model.curve, rec.point, kk, model.critical)
            vacuous = res.identically_zero
            passed = vacuous or rec.order <= res.order
            rows.append({
                'point': rec.point, 'k': kk + 1,
                'branch_order': rec.order,
                'jk_order': None if res.order is None else float(res.order),
                'separating_order': None if res.separating_order is None
                else float(res.separating_order),
                'vacuous': vacuous, 'passed': passed})
    table = pd.DataFrame(rows, columns=['point', 'k', 'branch_order',
                                        'jk_order', 'separating_order',
                                        'vacuous', 'passed'])
    checked = table[~table['vacuous'].astype(bool)]
    covered = len(set(checked['point'])) == len(model.branch_records)
    return AttrDict(passed=bool(covered and checked['passed'].all()),
                    table=table)


def covering_report(model):
    """ JSON-ready summary of a covering model. """
    def pt(p):
        return [p.real, p.imag]
    return {
        'disk_radius': model.disk_radius,
        'sheets': model.sheet_count,
        'base_point': pt(model.base_point),
        'critical_points': [pt(p) for p in model.critical.critical_points
                            if abs(p) < model.disk_radius],
        'multiple_points': [pt(p) for p in model.critical.multiple_points
                            if abs(p) < model.disk_radius],
        'branch_records': [{'point': pt(r.point),
                            'cycle_lengths': list(r.cycle_lengths),
                            'order': r.order} for r in model.branch_records],
        'generators': None if model.generators is None else
        [{'point': pt(g.branch_point), 'permutation': list(g.permutation)}
         for g in model.generators],
        'divisors': {k: v.to_dict() for k, v in model._divisors.items()},
        'warnings': model.warnings,
    }
