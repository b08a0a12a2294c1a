"""
Algebroidpy Curvature Module
Content: Curvature and volume profiles, comparison functions,
and the growth factors of non-positively curved base spaces
"""

import numpy as np
import pandas as pd
import sympy as sp

from scipy.integrate import solve_ivp, quad
from scipy.interpolate import interp1d

from .tools import (AttrDict, SolverFailure, NonParabolicityViolated,
                    ParseError)

t_sym = sp.Symbol('t', positive=True)

ODE_RTOL = 1e-10
ODE_ATOL = 1e-12
TAIL_CUTOFF = 1e6  # Radius up to which non power-law tails are integrated


def _profile_function(spec, name):
    """ Vectorized function of `t` from a callable, a constant,
    an expression string, or a table ``{'t': [...], 'values': [...]}``. """
    if callable(spec):
        return spec, None
    if isinstance(spec, (int, float)):
        value = float(spec)
        return (lambda t: np.full(np.shape(t), value)), sp.Float(value)
    if isinstance(spec, dict):
        ts = np.asarray(spec['t'], dtype=float)
        vs = np.asarray(spec['values'], dtype=float)
        f = interp1d(ts, vs, kind='linear', bounds_error=False,
                     fill_value=(vs[0], vs[-1]), assume_sorted=False)
        return f, None
    try:
        expr = sp.sympify(str(spec), locals={'t': t_sym})
    except (sp.SympifyError, SyntaxError) as e:
        raise ParseError(f"Cannot read {name} '{spec}': {e}")
    if expr.free_symbols - {t_sym}:
        raise ParseError(f"{name} '{spec}' may only depend on t")
    f = sp.lambdify(t_sym, expr, 'numpy')
    return (lambda t: np.broadcast_to(
        np.asarray(f(np.asarray(t, dtype=float)), dtype=float),
        np.shape(t)).copy()), expr


class KappaProfile:
    """ Lower curvature bound `t ↦ κ(t) ≤ 0`.

    Arguments:
        spec: A constant, an expression in `t` such as ``'-t'``,
            a callable, or a table ``{'t': [...], 'values': [...]}``
            that is interpolated linearly.
        check_range (float, optional): The sign of `κ` is checked
            on `[0, check_range]` (default 20).
        nonincreasing (bool, optional): Also require `κ` to be
            nonincreasing there (default False).

    Examples:

        >>> kappa = ag.KappaProfile(-1)
        >>> kappa(2.)
        array(-1.)
    """

    def __init__(self, spec, check_range=20., nonincreasing=False):
        self.spec = spec
        self._func, self.expr = _profile_function(spec, 'curvature profile')
        ts = np.linspace(0, check_range, 2001)
        values = self(ts)
        if np.any(values > 1e-14):
            raise ValueError("Curvature profile must be non-positive")
        if nonincreasing and np.any(np.diff(values) > 1e-12):
            raise ValueError("Curvature profile must be nonincreasing")

    def __repr__(self):
        return f"KappaProfile ({self.expr if self.expr is not None else 'table'})"

    def __call__(self, t):
        return np.asarray(self._func(np.asarray(t, dtype=float)), dtype=float)

    @property
    def is_flat(self):
        return self.expr is not None and self.expr == 0

    @classmethod
    def random(cls, seed=None, t_max=20., knots=21):
        """ Random nonincreasing piecewise linear profile with `κ(0) ≤ 0`. """
        rng = np.random.default_rng(seed)
        ts = np.linspace(0, t_max, knots)
        values = -np.cumsum(rng.exponential(0.2, knots)) + 0.1 * rng.random()
        values = np.minimum(values - values[0] - rng.random(), 0)
        return cls({'t': ts.tolist(), 'values': values.tolist()},
                   check_range=t_max, nonincreasing=True)

    def to_dict(self):
        if isinstance(self.spec, dict):
            return {'kappa': self.spec}
        return {'kappa': str(self.expr if self.expr is not None
                             else self.spec)}


class VolumeProfile:
    """ Volume growth `r ↦ V(r) > 0` of geodesic balls. The base space is
    non-parabolic if `∫_1^∞ t/V(t) dt` is finite.

    Arguments:
        spec: An expression in `t` such as ``'t**4'``, a constant,
            a callable, or a table.
        power (float, optional): Exponent `p` of a power law
            `V(t) = c t^p`; read from monomial expressions.
        coefficient (float, optional): Factor `c` of the power law.
    """

    def __init__(self, spec, power=None, coefficient=1.):
        self.spec = spec
        self._func, self.expr = _profile_function(spec, 'volume profile')
        self.power = power
        self.coefficient = float(coefficient)
        if power is None and self.expr is not None:
            c, p = sp.sympify(self.expr).as_coeff_exponent(t_sym)
            if not c.free_symbols and c != 0:
                self.power, self.coefficient = float(p), float(c)
        if self.power is not None and self.coefficient <= 0:
            raise ValueError("Volume must be positive")

    def __repr__(self):
        return f"VolumeProfile ({self.expr if self.expr is not None else 'table'})"

    def __call__(self, t):
        return np.asarray(self._func(np.asarray(t, dtype=float)), dtype=float)

    def tail(self, r):
        """ Tail integral `∫_r^∞ t/V(t) dt`.

        Raises:
            NonParabolicityViolated: If the integral diverges.
        """
        if np.isinf(r):
            return 0.
        if self.power is not None:
            if self.power <= 2:
                raise NonParabolicityViolated(
                    f"∫ t/V(t) dt diverges for V = c t^{self.power:g}")
            return r ** (2 - self.power) / (self.coefficient
                                           * (self.power - 2))
        return self._numeric_tail(r)

    def _numeric_tail(self, r):
        cutoff = max(TAIL_CUTOFF, 1e3 * r)
        # Substitution t = e^s flattens the integrand
        body, _ = quad(lambda s: np.exp(2 * s) / float(self(np.exp(s))),
                       np.log(r), np.log(cutoff), limit=200)
        v1, v2 = float(self(cutoff / 2)), float(self(cutoff))
        if v1 <= 0 or v2 <= 0:
            raise ValueError("Volume must be positive")
        p = np.log(v2 / v1) / np.log(2)
        if p <= 2 + 1e-6:
            raise NonParabolicityViolated(
                f"Volume grows like t^{p:.3g} at t={cutoff:g}; "
                "∫ t/V(t) dt diverges")
        return body + cutoff ** 2 / (v2 * (p - 2))

    def check_non_parabolic(self):
        """ Returns `∫_1^∞ t/V(t) dt` or raises
        :class:`NonParabolicityViolated`. """
        return self.tail(1.)

    def to_dict(self):
        if isinstance(self.spec, dict):
            return {'volume': self.spec}
        return {'volume': str(self.expr if self.expr is not None
                              else self.spec)}


# Comparison functions ---------------------------------------------------- #

def chi(s, t):
    """ Model function `χ(s, t) = sinh(st)/s`, with `χ(0, t) = t`.

    Examples:

        >>> ag.chi(2, 1)
        1.8134302039235093
    """
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    x = s * t
    small = np.abs(x) < 1e-6
    with np.errstate(divide='ignore', invalid='ignore'):
        big = np.sinh(x) / np.where(s == 0, 1., s)
    out = np.where(small, t * (1 + x ** 2 / 6), big)
    return out if out.ndim else float(out)


def _as_kappa(kappa):
    return kappa if isinstance(kappa, KappaProfile) else KappaProfile(kappa)


def _solve_jacobi(kappa, t_max, t_eval=None):
    def rhs(t, y):
        return [y[1], -float(kappa(t)) * y[0]]
    sol = solve_ivp(rhs, (0., float(t_max)), [0., 1.], method='DOP853',
                    rtol=ODE_RTOL, atol=ODE_ATOL, t_eval=t_eval,
                    dense_output=True)
    if sol.status != 0:
        raise SolverFailure(f"Jacobi equation solver failed: {sol.message}")
    return sol


def jacobi_G(kappa, t):
    """ Solution of `G'' + κ(t) G = 0` with `G(0) = 0`, `G'(0) = 1`.

    Arguments:
        kappa (KappaProfile or spec): The curvature profile.
        t (float or array_like): Nonnegative points.

    Returns:
        float or numpy.ndarray: Values `G(t)`.

    Raises:
        SolverFailure: If the ODE solver fails.
    """

    kappa = _as_kappa(kappa)
    ts = np.asarray(t, dtype=float)
    if np.any(ts < 0):
        raise ValueError("G is defined for t >= 0")
    t_max = float(ts.max()) if ts.size else 0.
    if t_max == 0:
        return np.zeros_like(ts) if ts.ndim else 0.
    flat = ts.ravel()
    grid = np.unique(flat)
    sol = _solve_jacobi(kappa, t_max, t_eval=grid)
    values = sol.y[0][np.searchsorted(grid, flat)].reshape(ts.shape)
    return values if values.ndim else float(values)


def comparison_table(kappa, t_grid):
    """ Table of `χ(0, t)`, `G(t)`, and `χ(√(-κ(t)), t)` on a grid. """
    kappa = _as_kappa(kappa)
    ts = np.sort(np.asarray(t_grid, dtype=float))
    G = np.atleast_1d(jacobi_G(kappa, ts))
    return pd.DataFrame({'t': ts,
                         'lower': np.atleast_1d(chi(0., ts)),
                         'G': G,
                         'upper': np.atleast_1d(chi(np.sqrt(-kappa(ts)), ts))})


def comparison_check(kappa, t_grid, tol=1e-6):
    """ Whether `χ(0, t) ≤ G(t) ≤ χ(√(-κ(t)), t)` holds on the grid
    up to the relative tolerance `tol`. """
    df = comparison_table(kappa, t_grid)
    scale = np.maximum(1., np.abs(df['G']))
    lower = (df['lower'] - df['G'] <= tol * scale).all()
    upper = (df['G'] - df['upper'] <= tol * scale).all()
    return bool(lower and upper)


# Growth factors ---------------------------------------------------------- #

def K_factor(r, delta, kappa=0., m=1):
    """ Factor
    `K(r, δ) = r^(1-2m) (∫_{1/3}^r G^(1-2m) dt)^((1+δ)²) / G(r)^((1-2m)(1+δ))`
    for a base of complex dimension `m`.

    Examples:

        >>> ag.K_factor(10, 0.1)  # 10^0.1 (log 30)^1.21
        5.5369...
    """

    kappa = _as_kappa(kappa)
    r = float(r)
    if r <= 1 / 3:
        raise ValueError("K is defined for r > 1/3")
    sol = _solve_jacobi(kappa, r)
    e = 1 - 2 * m
    integral, _ = quad(lambda t: sol.sol(t)[0] ** e, 1 / 3, r, limit=200)
    G_r = sol.sol(r)[0]
    return float(r ** e * integral ** ((1 + delta) ** 2)
                 / G_r ** (e * (1 + delta)))


def logK_bound_check(kappa, r_grid, delta, m=1, growth=1.5):
    """ Checks the growth of `log⁺ K(r, δ)` against `c (δ log r + 1)` for
    flat profiles and `c (√(-κ(r)) r + 1)` otherwise.

    The constant `c` is the largest ratio on the grid. The check passes
    if the ratios on the upper half of the grid stay within `growth`
    times the largest ratio on the lower half.

    Returns:
        AttrDict: 'c', 'passed', and 'table' with columns r, logK, shape.
    """

    kappa = _as_kappa(kappa)
    radii = np.sort(np.asarray(r_grid, dtype=float))
    logk = np.array([max(0., np.log(K_factor(r, delta, kappa, m)))
                     for r in radii])
    if kappa.is_flat:
        shape = delta * np.log(radii) + 1
    else:
        shape = np.sqrt(-kappa(radii)) * radii + 1
    ratio = logk / shape
    half = max(1, len(radii) // 2)
    low = ratio[:half].max()
    high = ratio[half:].max() if len(radii) > half else low
    table = pd.DataFrame({'r': radii, 'logK': logk, 'shape': shape,
                          'ratio': ratio})
    return AttrDict(c=float(ratio.max()), table=table,
                    passed=bool(high <= growth * max(low, 1e-12)))


def _as_volume(V):
    return V if isinstance(V, VolumeProfile) else VolumeProfile(V)


def H_factors(V, r, delta=0.):
    """ Factors `H(r) = V(r)/r² ∫_r^∞ t/V(t) dt` and
    `H(r, δ) = (1/r) (V(r)/r)^(1+δ) ∫_r^∞ t/V(t) dt`.

    Examples:

        >>> ag.H_factors('t**4', 3.)
        (0.5, 0.5)
    """
    V = _as_volume(V)
    r = float(r)
    tail = V.tail(r)
    v = float(V(r))
    return v / r ** 2 * tail, (v / r) ** (1 + delta) / r * tail


def green_band(V, rho, A=1., B=1.):
    """ Band `(A ∫_ρ^∞ t/V(t) dt, B ∫_ρ^∞ t/V(t) dt)` for the Green
    function of a non-parabolic base at distance `ρ`. """
    tail = _as_volume(V).tail(float(rho))
    return A * tail, B * tail
