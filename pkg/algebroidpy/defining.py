"""
Algebroidpy Defining System Module
Content: Defining polynomials, algebroid curves, resultants,
discriminants, field operations, and critical data
"""

import functools
import logging
import numpy as np
import sympy as sp

from dataclasses import dataclass, field
from sympy.polys.domains import QQ_I
from sympy.polys.subresultants_qq_zz import sylvester

from .field import (z, RationalFunction, AnalyticExpr, parse_coefficient,
                    _as_poly)
from .roots import (zeros_in_disk, sylvester_det, newton_polish,
                    polyval_asc)
from .tools import (make_list, cluster_points, BackendUnsupported,
                    DegreeTooLow, ZeroFunction, NotInvertible,
                    RootFindingFailure, ProblemFileError)

logger = logging.getLogger(__name__)

W = sp.Symbol('W')
_W1 = sp.Symbol('W_1')

CLUSTER_TOL = 1e-9  # Relative radius for merging critical points


class DefiningPolynomial:
    """ Defining polynomial `Ψ(z, W) = A_ν W^ν + ... + A_1 W + A_0`
    of one algebroid coordinate.

    Arguments:
        coeffs (list): Coefficients `A_0, ..., A_ν`, given as
            coefficient objects, numbers, or expression strings.
            Trailing zero coefficients are dropped.
        var (str, optional): Name of the coordinate (default 'W').
        backend (str, optional): Coefficient backend used to parse
            strings, 'exact' or 'numeric'. By default, the backend
            is taken from the first coefficient object or set to 'exact'.

    Examples:

        >>> P = ag.DefiningPolynomial(['-z', 0, 1])
        >>> P.degree
        2
    """

    def __init__(self, coeffs, var='W', backend=None):

        coeffs = make_list(coeffs)
        if backend is None:
            backend = next((c.backend for c in coeffs
                            if isinstance(c, (RationalFunction,
                                              AnalyticExpr))), 'exact')
        coeffs = [parse_coefficient(c, backend) for c in coeffs]
        while len(coeffs) > 1 and coeffs[-1].is_zero:
            coeffs.pop()
        if len(coeffs) < 2:
            raise DegreeTooLow(f"Defining polynomial of {var} "
                               "must have degree at least 1")

        self.coeffs = tuple(coeffs)
        self.var = str(var)
        self.backend = backend
        self._cleared = None
        self._numeric = None

    def __repr__(self):
        return f"DefiningPolynomial({self.as_expr()})"

    def __eq__(self, other):
        return isinstance(other, DefiningPolynomial) \
            and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __getstate__(self):
        return {'coeffs': self.coeffs, 'var': self.var,
                'backend': self.backend}

    def __setstate__(self, state):
        self.__dict__.update(state)
        self._cleared = None
        self._numeric = None

    @classmethod
    def from_poly(cls, poly, var='W'):
        """ Reads a sympy polynomial or expression in `W` and `z`. """
        expr = poly.as_expr() if isinstance(poly, sp.Poly) else poly
        coeffs = sp.Poly(expr, W).all_coeffs()[::-1]
        return cls([RationalFunction.from_expr(c) for c in coeffs], var)

    # Properties ------------------------------------------------------------ #

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[-1]

    @property
    def constant(self):
        return self.coeffs[0]

    @property
    def defines_zero(self):
        """ True if every root is identically zero (`Ψ = A_ν W^ν`). """
        return all(c.is_zero for c in self.coeffs[:-1])

    def as_expr(self, gen=W):
        return sum(c.as_expr() * gen ** j for j, c in enumerate(self.coeffs))

    def to_dict(self):
        return {'var': self.var,
                'coeffs': [str(c.as_expr()) for c in self.coeffs]}

    def monic(self):
        """ Returns the polynomial divided by its leading coefficient. """
        lead = self.leading
        return DefiningPolynomial([c / lead for c in self.coeffs],
                                  self.var, self.backend)

    def is_proportional(self, other):
        """ Whether both polynomials agree up to a coefficient factor. """
        if self.degree != other.degree:
            return False
        if self.backend == 'exact':
            return self.monic().coeffs == other.monic().coeffs
        return all(sp.simplify((a / self.leading).expr
                               - (b / other.leading).expr) == 0
                   for a, b in zip(self.coeffs, other.coeffs))

    def derivative_w(self):
        """ Partial derivative `∂Ψ/∂W`. """
        return DefiningPolynomial([c * j for j, c in
                                   enumerate(self.coeffs)][1:],
                                  self.var, self.backend)

    def shift(self, z0):
        """ Returns `Ψ(z + z0, W)`. """
        return DefiningPolynomial([c.shift(z0) for c in self.coeffs],
                                  self.var, self.backend)

    # Cleared form ---------------------------------------------------------- #

    def cleared(self):
        """ Clears denominators and content.

        Returns:
            tuple: Coprime coefficient polynomials `a_0, ..., a_ν` in `z`
            over Q(i) and a rational function `s` such that
            `Ψ = s * Σ a_j W^j`. The leading term of `a_ν` is monic.
        """

        if self.backend != 'exact':
            raise BackendUnsupported("Clearing needs exact coefficients")
        if self._cleared is None:
            L = functools.reduce(lambda a, b: a.lcm(b),
                                 [c.denom for c in self.coeffs])
            numers = [c.numer * L.exquo(c.denom) for c in self.coeffs]
            g = functools.reduce(lambda a, b: a.gcd(b),
                                 [n for n in numers if not n.is_zero])
            lc = _as_poly(numers[-1].exquo(g).LC())
            g = g * lc
            numers = [n.exquo(g) for n in numers]
            self._cleared = (numers, RationalFunction(g, L))
        return self._cleared

    def cleared_poly(self, gen=W):
        """ Cleared form as a sympy polynomial in `gen` and `z`. """
        numers, _ = self.cleared()
        expr = sum(n.as_expr() * gen ** j for j, n in enumerate(numers))
        return sp.Poly(expr, gen, z, domain=QQ_I)

    # Numeric evaluation ---------------------------------------------------- #

    def _numeric_coeffs(self):
        if self._numeric is None:
            if self.backend == 'exact':
                funcs = [RationalFunction(n, _normalized=True)
                         for n in self.cleared()[0]]
            else:
                funcs = list(self.coeffs)
            self._numeric = (funcs, [f.derivative() for f in funcs])
        return self._numeric

    def coeff_values(self, zs):
        """ Coefficient values at the points `zs`, shape (ν+1,) + zs.shape.
        Exact polynomials are evaluated in their cleared form,
        which has the same roots in `W` and no poles. """
        funcs, _ = self._numeric_coeffs()
        zs = np.asarray(zs, dtype=complex)
        return np.array([np.broadcast_to(f.values(zs), zs.shape)
                         for f in funcs])

    def coeff_derivatives(self, zs):
        """ Values of the `z`-derivatives of the coefficients. """
        _, derivs = self._numeric_coeffs()
        zs = np.asarray(zs, dtype=complex)
        return np.array([np.broadcast_to(f.values(zs), zs.shape)
                         for f in derivs])

    def evaluate(self, zv, w):
        """ Value of the (cleared) polynomial at `(z, W)`. """
        return polyval_asc(self.coeff_values(zv), w)


def _as_component(spec, backend, index):
    if isinstance(spec, DefiningPolynomial):
        return spec
    if isinstance(spec, dict):
        if 'coeffs' not in spec:
            raise ProblemFileError(f"Component {index} has no 'coeffs'")
        return DefiningPolynomial(spec['coeffs'],
                                  spec.get('var', f'W{index + 1}'), backend)
    return DefiningPolynomial(spec, f'W{index + 1}', backend)


class AlgebroidCurve:
    """ Algebroid curve `[1 : W_1 : ... : W_d]` into projective space,
    with one defining polynomial per coordinate.
    The coordinates are independent, so the curve has
    `ν = ν_1 * ... * ν_d` sheets.

    Arguments:
        components (list): Defining polynomials, coefficient lists,
            or dictionaries with keys 'coeffs' and optionally 'var'.
        backend (str, optional): Backend used to parse string
            coefficients (default 'exact').

    Examples:

        Square root and cube root coordinates::

            >>> curve = ag.AlgebroidCurve([['-z', 0, 1], ['-z', 0, 0, 1]])
            >>> curve.total_sheets
            6
    """

    def __init__(self, components, backend='exact'):

        if isinstance(components, (DefiningPolynomial, dict)):
            components = [components]
        components = [_as_component(c, backend, i)
                      for i, c in enumerate(make_list(components))]
        if not components:
            raise ProblemFileError("A curve needs at least one component")
        backends = {c.backend for c in components}
        if len(backends) > 1:
            raise BackendUnsupported("Curve components mix exact "
                                     "and numeric coefficients")
        self.components = tuple(components)
        self.backend = backends.pop()

    def __repr__(self):
        return (f"AlgebroidCurve (d={self.d}, ν={self.total_sheets}, "
                f"{self.backend})")

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, key):
        return self.components[key]

    def __eq__(self, other):
        return isinstance(other, AlgebroidCurve) \
            and self.components == other.components

    @property
    def d(self):
        """ Number of coordinates, i.e. target dimension `n`. """
        return len(self.components)

    @property
    def degrees(self):
        return tuple(c.degree for c in self.components)

    @property
    def total_sheets(self):
        return int(np.prod(self.degrees))

    @classmethod
    def from_dict(cls, data):
        """ Builds a curve from the problem-file representation
        ``{"components": [{"var": "W1", "coeffs": [...]}], "backend": ...}``.
        """
        if 'components' not in data:
            raise ProblemFileError("Curve definition needs 'components'")
        return cls(data['components'], data.get('backend', 'exact'))

    def to_dict(self):
        return {'components': [c.to_dict() for c in self.components],
                'backend': self.backend}

    def shifted(self, z0):
        """ Returns the curve `z -> F(z + z0)`. """
        return AlgebroidCurve([c.shift(z0) for c in self.components],
                              self.backend)

    def cleared(self, i):
        """ Cleared coefficient polynomials of component `i`,
        see :meth:`DefiningPolynomial.cleared`. """
        return self.components[i].cleared()


def curve(*components, backend='exact'):
    """ Shortcut that creates an :class:`AlgebroidCurve`
    from coefficient lists `A_0, ..., A_ν`.

    Examples:

        >>> ag.curve(['-z', 0, 1])
        AlgebroidCurve (d=1, ν=2, exact)
    """
    return AlgebroidCurve(list(components), backend)


def _require_exact(*polys):
    for P in polys:
        if P.backend != 'exact':
            raise BackendUnsupported(
                "Symbolic elimination needs exact coefficients")


# Resultants and discriminants -------------------------------------------- #

def sylvester_matrix(P, Q):
    """ The `(ν_P + ν_Q)`-square Sylvester matrix of two defining
    polynomials, as a sympy matrix with entries in `z`. """
    _require_exact(P, Q)
    return sylvester(P.as_expr(), Q.as_expr(), W, 1)


def resultant(P, Q, method='subresultant'):
    """ Sylvester resultant of two defining polynomials with respect to `W`.

    Arguments:
        P (DefiningPolynomial): First polynomial.
        Q (DefiningPolynomial): Second polynomial.
        method (str, optional): 'subresultant' (default) eliminates on the
            cleared polynomials; 'sylvester' expands the determinant of
            :func:`sylvester_matrix`.

    Returns:
        RationalFunction: The resultant.
    """

    _require_exact(P, Q)
    if method == 'sylvester':
        det = sylvester_matrix(P, Q).det(method='berkowitz')
        return RationalFunction.from_expr(sp.cancel(det))
    if method != 'subresultant':
        raise ValueError(f"Unknown resultant method '{method}'")
    (_, sp_), (_, sq) = P.cleared(), Q.cleared()
    res = P.cleared_poly().resultant(Q.cleared_poly())
    return RationalFunction(res) * sp_ ** Q.degree * sq ** P.degree


def _cleared_discriminant(P):
    """ Discriminant of the cleared form, as a polynomial in `z`. """
    numers, _ = P.cleared()
    p = P.cleared_poly()
    res = p.resultant(p.diff(W))
    res = _as_poly(res.as_expr())
    sign = -1 if (P.degree * (P.degree - 1) // 2) % 2 else 1
    return (res * sign).exquo(numers[-1])


def discriminant(P):
    """ Discriminant `J_Ψ = (-1)^(ν(ν-1)/2) Res(Ψ, Ψ_W) / A_ν`.
    It vanishes exactly where `Ψ(z, ·)` has a multiple root. """
    _require_exact(P)
    if P.degree < 2:
        raise DegreeTooLow("Discriminant needs degree at least 2")
    sign = -1 if (P.degree * (P.degree - 1) // 2) % 2 else 1
    return resultant(P, P.derivative_w()) * sign / P.leading


def square_free_part(P):
    """ Returns `Ψ / gcd(Ψ, Ψ_W)`, which has simple roots at generic `z`. """
    _require_exact(P)
    p = P.cleared_poly()
    g = p.gcd(p.diff(W))
    return DefiningPolynomial.from_poly(p.exquo(g), P.var)


# Field operations --------------------------------------------------------- #

def alg_negate(P):
    """ Defining polynomial of `-W`: `B_j = (-1)^(ν-j) A_j`. """
    nu = P.degree
    return DefiningPolynomial([c if (nu - j) % 2 == 0 else -c
                               for j, c in enumerate(P.coeffs)],
                              P.var, P.backend)


def alg_reciprocal(P):
    """ Defining polynomial of `1/W`, obtained by reversing coefficients. """
    if P.constant.is_zero:
        raise NotInvertible(f"{P} has an identically vanishing root")
    return DefiningPolynomial(list(P.coeffs[::-1]), P.var, P.backend)


def alg_op(P1, P2, op):
    """ Defining polynomial for the sum or product
    of two algebroid functions.

    Eliminates `W_1` between `P1(W_1)` and the shifted `P2(W - W_1)` for
    sums or the scaled `W_1^ν2 P2(W / W_1)` for products, then
    returns the square-free part of the resultant. Differences and
    quotients go through :func:`alg_negate` and :func:`alg_reciprocal`.

    Arguments:
        P1 (DefiningPolynomial): First operand.
        P2 (DefiningPolynomial): Second operand.
        op (str): 'sum', 'product', 'difference', or 'quotient'.

    Returns:
        DefiningPolynomial: Square-free defining polynomial
        whose roots are the pairwise combinations of roots.
    """

    _require_exact(P1, P2)
    if op == 'difference':
        return alg_op(P1, alg_negate(P2), 'sum')
    if op == 'quotient':
        return alg_op(P1, alg_reciprocal(P2), 'product')

    p1 = P1.cleared_poly(_W1)
    if op == 'sum':
        q_expr = P2.cleared_poly().as_expr().subs(W, W - _W1)
    elif op == 'product':
        if P1.defines_zero or P2.defines_zero:
            raise ZeroFunction("Product with the zero function")
        numers, _ = P2.cleared()
        nu2 = P2.degree
        q_expr = sum(n.as_expr() * W ** j * _W1 ** (nu2 - j)
                     for j, n in enumerate(numers))
    else:
        raise ValueError(f"Unknown operation '{op}'")

    gens = (_W1, W, z)
    res = sp.Poly(p1.as_expr(), *gens, domain=QQ_I).resultant(
        sp.Poly(sp.expand(q_expr), *gens, domain=QQ_I))
    return square_free_part(DefiningPolynomial.from_poly(res, P1.var))


# Critical data ----------------------------------------------------------- #

@dataclass(frozen=True)
class CriticalData:
    """ Critical points of an algebroid curve inside a disk.

    Attributes:
        critical_points (tuple): Zeros of `R_Ψ = A_ν J_Ψ`
            over all components.
        multiple_points (tuple): Zeros of the discriminants `J_Ψ`.
        leading_coeff_zeros (tuple): Zeros of the leading coefficients.
        disk_radius (float): Radius of the search disk.
        multiple_orders (tuple): Per component,
            pairs `(point, order of J_Ψ)`.
    """

    critical_points: tuple
    multiple_points: tuple
    leading_coeff_zeros: tuple
    disk_radius: float
    multiple_orders: tuple = field(default=())

    def nearest(self, zv, points=None, exclude=None, tol=CLUSTER_TOL):
        """ Distance from `zv` to the nearest critical point,
        ignoring `exclude`; `inf` if there is none. """
        points = self.critical_points if points is None else points
        dists = [abs(p - zv) for p in points
                 if exclude is None
                 or abs(p - exclude) > tol * max(1., abs(exclude))]
        return min(dists) if dists else np.inf


def _poly_zeros(poly):
    """ Zeros of a polynomial in `z` with multiplicities,
    via square-free factorization. """
    poly = _as_poly(poly)
    if poly.is_zero or poly.degree() <= 0:
        return []
    _, factors = poly.sqf_list()
    zeros = []
    for f, mult in factors:
        coeffs = np.array([complex(c) for c in f.all_coeffs()])
        try:
            roots = np.roots(coeffs)
        except np.linalg.LinAlgError as e:
            raise RootFindingFailure(f"Eigenvalue solver failed: {e}",
                                     {'factor': str(f.as_expr())})
        roots = newton_polish(coeffs[::-1], roots, steps=3)
        zeros.extend((complex(r), mult) for r in roots)
    return zeros


def _merge(pairs, tol):
    points = [p for p, _ in pairs]
    return cluster_points(points, tol, [m for _, m in pairs])


def _component_critical(P, radius, tol):
    """ Zeros of the leading coefficient and of the discriminant. """

    if P.backend == 'exact':
        numers, _ = P.cleared()
        lead = _poly_zeros(numers[-1])
        disc = _poly_zeros(_cleared_discriminant(P)) if P.degree > 1 else []
        lead = [(p, m) for p, m in lead if abs(p) < radius]
        disc = [(p, m) for p, m in disc if abs(p) < radius]
        return _merge(lead, tol), _merge(disc, tol)

    def leading(zs):
        return P.coeff_values(zs)[-1]

    lead = zeros_in_disk(leading, radius, tol=tol)
    if P.degree == 1:
        return lead, []

    def res_ppw(zs):
        shape = np.shape(zs)
        zs = np.ravel(zs)
        a = P.coeff_values(zs)
        da = np.array([a[j] * j for j in range(1, P.degree + 1)])
        return sylvester_det(a, da).reshape(shape)

    # R = ±A_ν J, so orders of J are the surplus over the leading zeros
    disc = []
    for p, m in zeros_in_disk(res_ppw, radius, tol=tol):
        surplus = m - sum(k for q, k in lead
                          if abs(q - p) <= 1e-6 * max(1., abs(p)))
        if surplus > 0:
            disc.append((p, surplus))
    return lead, disc


def critical_data(curve, disk_radius, tol=CLUSTER_TOL):
    """ Locates the critical and multiple points of every component
    inside the disk `|z| < disk_radius`.

    Exact components are handled through square-free factorization of
    the leading coefficient and the discriminant of their cleared form;
    numeric components through an argument-principle zero search on the
    leading coefficient and on the Sylvester determinant of `Ψ` and `Ψ_W`.

    Arguments:
        curve (AlgebroidCurve): The curve.
        disk_radius (float): Radius of the disk around the origin.
        tol (float, optional): Relative radius within which points are
            merged (default 1e-9).

    Returns:
        CriticalData: Critical points of the union of all components.
    """

    leads, multiples, orders = [], [], []
    for P in curve.components:
        lead, disc = _component_critical(P, disk_radius, tol)
        leads += [p for p, _ in lead]
        multiples += [p for p, _ in disc]
        orders.append(tuple(disc))
    lead = tuple(p for p, _ in cluster_points(leads, tol))
    mult = tuple(p for p, _ in cluster_points(multiples, tol))
    crit = tuple(p for p, _ in cluster_points(list(lead) + list(mult), tol))
    logger.debug(f"Critical data in |z|<{disk_radius}: {len(crit)} points, "
                 f"{len(mult)} multiple")
    return CriticalData(crit, mult, lead, float(disk_radius), tuple(orders))
