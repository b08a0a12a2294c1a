"""
Algebroidpy Coefficient Field Module
Content: Exact rational functions over Q(i) and numeric analytic expressions
"""

import re
import numpy as np
import sympy as sp

from sympy.polys.domains import QQ_I
from sympy.polys.polyerrors import BasePolynomialError
from sympy.parsing.sympy_parser import (
    parse_expr, standard_transformations, convert_xor,
    implicit_multiplication, rationalize)

from .tools import (Pole, Indeterminate, DivisionByZeroFunction,
                    ParseError, BackendUnsupported)

z = sp.Symbol('z')

_TRANSFORMATIONS = standard_transformations + (
    convert_xor, implicit_multiplication, rationalize)
_LOCALS = {'z': z, 'I': sp.I, 'exp': sp.exp, 'sin': sp.sin,
           'cos': sp.cos, 'pi': sp.pi, 'E': sp.E}
_IMAG_NUMBER = re.compile(r'(?<![A-Za-z_0-9.])(\d+\.?\d*|\.\d+)i(?![A-Za-z_0-9])')
_IMAG_UNIT = re.compile(r'(?<![A-Za-z_0-9])i(?![A-Za-z_0-9])')
_TRANSCENDENTAL = (sp.exp, sp.sin, sp.cos, sp.log)


def exact_number(value):
    """ Converts a number to an exact Gaussian rational sympy expression.
    Floats are read from their shortest decimal representation. """

    if isinstance(value, sp.Basic):
        return value
    value = complex(value)
    re_, im_ = sp.Rational(repr(value.real)), sp.Rational(repr(value.imag))
    return re_ + sp.I * im_


def _as_poly(p):
    if isinstance(p, sp.Poly):
        if p.gens != (z,) or p.domain != QQ_I:
            p = sp.Poly(p.as_expr(), z, domain=QQ_I)
        return p
    return sp.Poly(p, z, domain=QQ_I)


def _normalize_pair(numer, denom):
    """ Cancels the gcd and makes the denominator monic. """

    if denom.is_zero:
        raise DivisionByZeroFunction("Denominator is identically zero")
    if numer.is_zero:
        return _as_poly(0), _as_poly(1)
    g = numer.gcd(denom)
    numer, denom = numer.exquo(g), denom.exquo(g)
    lc = _as_poly(denom.LC())
    return numer.exquo(lc), denom.exquo(lc)


class RationalFunction:
    """ Element of the field Q(i)(z), kept in canonical form:
    numerator and denominator are coprime and the denominator is monic.

    Arguments:
        numer (sympy.Poly or expression): Numerator polynomial in `z`.
        denom (sympy.Poly or expression, optional):
            Denominator polynomial in `z` (default 1).

    Examples:

        >>> f = ag.RationalFunction(z**2 - 1, z - 1)
        >>> f.numer.as_expr()
        z + 1
    """

    backend = 'exact'

    def __init__(self, numer, denom=1, _normalized=False):
        numer, denom = _as_poly(numer), _as_poly(denom)
        if not _normalized:
            numer, denom = _normalize_pair(numer, denom)
        self.numer = numer
        self.denom = denom
        self._arrays = None

    @classmethod
    def from_expr(cls, expr):
        """ Builds a rational function from a sympy expression in `z`. """
        try:
            numer, denom = sp.fraction(sp.together(sp.sympify(expr)))
            return cls(_as_poly(sp.expand(numer)), _as_poly(sp.expand(denom)))
        except BasePolynomialError as e:
            raise ParseError(f"'{expr}' is not a rational function "
                             f"over Q(i): {e}")

    @classmethod
    def constant(cls, value):
        return cls(exact_number(value))

    def __repr__(self):
        return f"RationalFunction({self.as_expr()})"

    def __str__(self):
        return str(self.as_expr())

    def __eq__(self, other):
        if isinstance(other, (int, complex, float)):
            other = RationalFunction.constant(other)
        if not isinstance(other, RationalFunction):
            return False
        return self.numer == other.numer and self.denom == other.denom

    def __hash__(self):
        return hash((tuple(self.numer.all_coeffs()),
                     tuple(self.denom.all_coeffs())))

    def __getstate__(self):
        return {'numer': self.numer.as_expr(), 'denom': self.denom.as_expr()}

    def __setstate__(self, state):
        self.numer = _as_poly(state['numer'])
        self.denom = _as_poly(state['denom'])
        self._arrays = None

    # Field operations ------------------------------------------------------ #

    def __add__(self, other):
        other = _coerce(other, self)
        return RationalFunction(self.numer * other.denom
                                + other.numer * self.denom,
                                self.denom * other.denom)

    def __sub__(self, other):
        other = _coerce(other, self)
        return RationalFunction(self.numer * other.denom
                                - other.numer * self.denom,
                                self.denom * other.denom)

    def __mul__(self, other):
        other = _coerce(other, self)
        return RationalFunction(self.numer * other.numer,
                                self.denom * other.denom)

    def __truediv__(self, other):
        other = _coerce(other, self)
        if other.is_zero:
            raise DivisionByZeroFunction(f"Division by {other}")
        return RationalFunction(self.numer * other.denom,
                                self.denom * other.numer)

    def __neg__(self):
        return RationalFunction(-self.numer, self.denom, _normalized=True)

    def __pow__(self, n):
        n = int(n)
        if n < 0:
            return RationalFunction(1) / self ** (-n)
        return RationalFunction(self.numer ** n, self.denom ** n,
                                _normalized=True)

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return _coerce(other, self) - self

    def __rtruediv__(self, other):
        return _coerce(other, self) / self

    # Properties ------------------------------------------------------------ #

    @property
    def is_zero(self):
        return self.numer.is_zero

    @property
    def is_polynomial(self):
        return self.denom.degree() == 0

    def as_expr(self):
        return self.numer.as_expr() / self.denom.as_expr()

    def derivative(self):
        """ Exact derivative with respect to `z`. """
        n, d = self.numer, self.denom
        return RationalFunction(n.diff(z) * d - n * d.diff(z), d * d)

    def shift(self, z0):
        """ Returns the function `z -> f(z + z0)`. """
        a = exact_number(z0)
        return RationalFunction(self.numer.shift(a), self.denom.shift(a))

    # Evaluation ------------------------------------------------------------ #

    def _coeff_arrays(self):
        if self._arrays is None:
            self._arrays = (
                np.array([complex(c) for c in self.numer.all_coeffs()]),
                np.array([complex(c) for c in self.denom.all_coeffs()]))
        return self._arrays

    def evaluate(self, zv):
        """ Value at a single point; raises :class:`Pole` at poles. """
        num_c, den_c = self._coeff_arrays()
        zv = complex(zv)
        den = np.polyval(den_c, zv)
        if den == 0:
            if np.polyval(num_c, zv) == 0:
                raise Indeterminate(f"0/0 at z={zv}")
            raise Pole(zv)
        return complex(np.polyval(num_c, zv) / den)

    def values(self, zs):
        """ Vectorized evaluation; poles give non-finite entries. """
        num_c, den_c = self._coeff_arrays()
        zs = np.asarray(zs, dtype=complex)
        with np.errstate(divide='ignore', invalid='ignore'):
            return np.polyval(num_c, zs) / np.polyval(den_c, zs)


class AnalyticExpr:
    """ Transcendental coefficient given as an expression tree in `z`
    over constants, field operations, `exp`, `sin`, `cos`
    and integer powers. Supports evaluation only.

    Arguments:
        expr (str or sympy.Expr): The expression.
    """

    backend = 'numeric'

    def __init__(self, expr):
        if isinstance(expr, str):
            expr = _parse(expr)
        self.expr = sp.sympify(expr)
        if not self.expr.free_symbols <= {z}:
            raise ParseError(f"Unknown symbols in '{expr}'")
        self._funcs = None

    def __repr__(self):
        return f"AnalyticExpr({self.expr})"

    def __str__(self):
        return str(self.expr)

    def __eq__(self, other):
        return isinstance(other, AnalyticExpr) and self.expr == other.expr

    def __hash__(self):
        return hash(self.expr)

    def __getstate__(self):
        return {'expr': self.expr}

    def __setstate__(self, state):
        self.expr = state['expr']
        self._funcs = None

    @property
    def is_zero(self):
        return sp.simplify(self.expr) == 0

    def as_expr(self):
        return self.expr

    def derivative(self):
        return AnalyticExpr(sp.diff(self.expr, z))

    def shift(self, z0):
        return AnalyticExpr(self.expr.subs(z, z + exact_number(z0)))

    def __add__(self, other):
        return AnalyticExpr(self.expr + _coerce(other, self).expr)

    def __sub__(self, other):
        return AnalyticExpr(self.expr - _coerce(other, self).expr)

    def __mul__(self, other):
        return AnalyticExpr(self.expr * _coerce(other, self).expr)

    def __truediv__(self, other):
        other = _coerce(other, self)
        if other.is_zero:
            raise DivisionByZeroFunction(f"Division by {other}")
        return AnalyticExpr(self.expr / other.expr)

    def __neg__(self):
        return AnalyticExpr(-self.expr)

    def __pow__(self, n):
        return AnalyticExpr(self.expr ** int(n))

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return _coerce(other, self) - self

    def __rtruediv__(self, other):
        return _coerce(other, self) / self

    def _lambdas(self):
        if self._funcs is None:
            numer, denom = sp.fraction(sp.together(self.expr))
            self._funcs = (sp.lambdify(z, numer, 'numpy'),
                           sp.lambdify(z, denom, 'numpy'))
        return self._funcs

    def _eval_parts(self, zs):
        f_num, f_den = self._lambdas()
        zs = np.asarray(zs, dtype=complex)
        with np.errstate(all='ignore'):
            num = np.broadcast_to(np.asarray(f_num(zs), dtype=complex),
                                  zs.shape)
            den = np.broadcast_to(np.asarray(f_den(zs), dtype=complex),
                                  zs.shape)
        return num, den

    def evaluate(self, zv):
        """ Value at a single point; raises :class:`Pole` at poles and
        :class:`Indeterminate` where numerator and denominator vanish. """
        num, den = self._eval_parts(np.complex128(zv))
        num, den = complex(num), complex(den)
        if den == 0:
            if num == 0:
                raise Indeterminate(f"0/0 at z={zv}")
            raise Pole(complex(zv))
        value = num / den
        if not np.isfinite(value):
            raise Pole(complex(zv))
        return value

    def values(self, zs):
        num, den = self._eval_parts(zs)
        with np.errstate(all='ignore'):
            return num / den


def _coerce(other, like):
    if isinstance(other, (RationalFunction, AnalyticExpr)):
        if other.backend != like.backend:
            raise BackendUnsupported(
                "Cannot combine exact and numeric coefficients")
        return other
    if like.backend == 'exact':
        return RationalFunction.constant(other)
    return AnalyticExpr(sp.sympify(exact_number(other)))


def _parse(text):
    """ Parses coefficient syntax like ``(z^2-1)/(z-1)`` or ``3/2 + 1i*z``. """
    s = _IMAG_NUMBER.sub(r'(\1*I)', str(text))
    s = _IMAG_UNIT.sub('I', s)
    try:
        expr = parse_expr(s, local_dict=dict(_LOCALS),
                          transformations=_TRANSFORMATIONS)
    except (SyntaxError, TypeError, ValueError, sp.SympifyError) as e:
        raise ParseError(f"Cannot parse coefficient '{text}': {e}")
    if not expr.free_symbols <= {z}:
        raise ParseError(f"Coefficient '{text}' may only use the variable z")
    return expr


def parse_coefficient(text, backend='exact'):
    """ Reads a coefficient of a defining polynomial.

    Arguments:
        text (str or number): Expression in the variable `z`,
            e.g. ``"(z^2-1)/(z-1)"``, ``"exp(z)"``, ``"3/2 + 1i*z"``.
        backend (str, optional): ``'exact'`` (default) for rational
            functions over Q(i), or ``'numeric'`` for analytic expressions.

    Returns:
        RationalFunction or AnalyticExpr: The coefficient.
    """

    if isinstance(text, (RationalFunction, AnalyticExpr)):
        if text.backend != backend:
            raise BackendUnsupported(
                f"Coefficient {text} does not use backend '{backend}'")
        return text
    if isinstance(text, (int, float, complex)):
        expr = exact_number(text)
    else:
        expr = _parse(text)
    if backend == 'numeric':
        return AnalyticExpr(expr)
    if backend != 'exact':
        raise ParseError(f"Unknown backend '{backend}'")
    if expr.has(*_TRANSCENDENTAL) or not expr.is_rational_function(z):
        raise ParseError(f"Exact backend rejects transcendental "
                         f"coefficient '{text}'")
    return RationalFunction.from_expr(expr)


def evaluate(c, zv):
    """ Evaluates a coefficient at a complex point.
    Raises :class:`Pole` where the (normalized) denominator vanishes. """
    return c.evaluate(zv)


def arith(a, b, op):
    """ Field operation ``op`` in ``{'add', 'sub', 'mul', 'div'}``
    on two coefficients of the same backend. """
    if a.backend != b.backend:
        raise BackendUnsupported(
            "Cannot combine exact and numeric coefficients")
    if op == 'add':
        return a + b
    if op == 'sub':
        return a - b
    if op == 'mul':
        return a * b
    if op == 'div':
        return a / b
    raise ValueError(f"Unknown operation '{op}'")


def normalize(f):
    """ Returns the canonical form of a rational function:
    gcd-reduced with monic denominator. """
    return RationalFunction(f.numer, f.denom)


def derivative(c):
    return c.derivative()


def shift(c, z0):
    """ Returns the coefficient `z -> c(z + z0)`. """
    return c.shift(z0)
