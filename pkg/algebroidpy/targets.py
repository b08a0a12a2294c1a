"""
Algebroidpy Targets Module
Content: Hyperplane targets in projective space and the Green kernel
"""

import numpy as np
import sympy as sp

from .field import _parse
from .tools import (make_list, parse_complex, TargetDegenerate, ParseError)


class HyperplaneTarget:
    """ Hyperplane `a_0 ζ_0 + ... + a_n ζ_n = 0` of projective space,
    with a coefficient vector normalized to unit length.
    In the projective line, hyperplanes are points: the value `v`
    of a coordinate corresponds to `a = (-v, 1)`, and `∞` to `a = (1, 0)`.

    Arguments:
        coefficients (array_like): The vector `a`.
        label (str, optional): Name used in reports.
        value (optional): Exact coordinate value the target stands for.

    Examples:

        >>> target = ag.HyperplaneTarget.parse('value:2')
        >>> target.vector
        array([-0.89442719+0.j,  0.4472136 +0.j])
    """

    def __init__(self, coefficients, label=None, value=None):
        a = np.asarray(coefficients, dtype=complex)
        norm = np.linalg.norm(a)
        if a.ndim != 1 or len(a) < 2 or norm == 0:
            raise TargetDegenerate(f"Invalid hyperplane {coefficients}")
        self.vector = a / norm
        self.value = value
        if label is None:
            label = '[' + ','.join(_format(x) for x in a) + ']'
        self.label = label

    def __repr__(self):
        return f"HyperplaneTarget ({self.label})"

    def __eq__(self, other):
        return isinstance(other, HyperplaneTarget) \
            and np.allclose(self.vector, other.vector)

    def __hash__(self):
        return hash(self.label)

    @property
    def n(self):
        """ Dimension of the projective space. """
        return len(self.vector) - 1

    @classmethod
    def from_value(cls, value, n=1, coordinate=1):
        """ Target where coordinate `W_coordinate` takes `value`.
        Use ``'inf'`` for the hyperplane at infinity `ζ_0 = 0`. """
        a = np.zeros(n + 1, dtype=complex)
        if isinstance(value, str) and value.strip().lower() in ('inf', '∞'):
            a[0] = 1
            return cls(a, 'inf', 'inf')
        exact = value if isinstance(value, sp.Basic) else None
        if isinstance(value, str):
            exact = _parse(value)
            if exact.free_symbols:
                raise ParseError(f"Target value '{value}' is not a number")
        v = complex(exact) if exact is not None else parse_complex(value)
        a[0], a[coordinate] = -v, 1
        label = _format(v) if coordinate == 1 else f'W{coordinate}={_format(v)}'
        return cls(a, label, exact if exact is not None else v)

    @classmethod
    def parse(cls, spec, n=1):
        """ Reads ``'value:2'``, ``'value:inf'``, ``'value:1+1i'``,
        a coefficient list, or a dictionary with key 'vector' or 'value'. """
        if isinstance(spec, HyperplaneTarget):
            return spec
        if isinstance(spec, dict):
            if 'vector' in spec:
                vec = [parse_complex(x) for x in spec['vector']]
                return cls(vec, spec.get('label'))
            if 'value' in spec:
                return cls.from_value(spec['value'], n,
                                      spec.get('coordinate', 1))
            raise ParseError(f"Unknown target {spec}")
        if isinstance(spec, (list, tuple, np.ndarray)):
            return cls([parse_complex(x) for x in spec])
        text = str(spec).strip()
        if text.startswith('value:'):
            return cls.from_value(text[len('value:'):].strip(), n)
        raise ParseError(f"Unknown target '{spec}'")

    def to_dict(self):
        return {'vector': [[x.real, x.imag] for x in self.vector],
                'label': self.label}

    def coordinate_value(self):
        """ Returns `(i, v)` if the target is `W_i = v`, `(0, inf)` for the
        hyperplane at infinity, and None for other hyperplanes. """
        nonzero = [i for i, x in enumerate(self.vector) if abs(x) > 1e-15]
        if nonzero == [0]:
            return 0, np.inf
        if len(nonzero) == 1:
            return nonzero[0], 0j
        if len(nonzero) == 2 and nonzero[0] == 0:
            i = nonzero[1]
            return i, complex(-self.vector[0] / self.vector[i])
        return None

    def pairing(self, zeta):
        """ `⟨ζ, a⟩ = Σ a_i ζ_i` over the last axis of `zeta`. """
        return np.asarray(zeta, dtype=complex) @ self.vector

    def potential(self, zeta):
        """ Potential `u_D(ζ) = ½ log(‖ζ‖² ‖a‖² / |⟨ζ, a⟩|²)`,
        evaluated over the last axis of `zeta`. Nonnegative and
        scale invariant; infinite on the hyperplane. """
        zeta = np.asarray(zeta, dtype=complex)
        scale = np.abs(zeta).max(axis=-1, keepdims=True)
        with np.errstate(divide='ignore', invalid='ignore'):
            zeta = zeta / scale
            norm2 = (np.abs(zeta) ** 2).sum(axis=-1)
            pair2 = np.abs(zeta @ self.vector) ** 2
            return 0.5 * np.log(norm2 / pair2)


def _format(x):
    x = complex(x)
    if x.imag == 0:
        return f'{x.real:g}'
    return f'{x.real:g}{x.imag:+g}i'


def as_targets(specs, n=1):
    """ Converts a list of target specifications
    into :class:`HyperplaneTarget` objects. """
    return [HyperplaneTarget.parse(s, n) for s in make_list(specs)]


class GreenKernel:
    """ Green function of the disk `|z| < r` with pole at the origin,
    `g_r(0, z) = (1/π) log(r/|z|)`, and its harmonic measure `dθ/2π`
    on the boundary circle.

    Arguments:
        r (float): Radius of the disk.
    """

    def __init__(self, r):
        if r <= 0:
            raise ValueError("Radius must be positive")
        self.r = float(r)

    def __repr__(self):
        return f"GreenKernel (r={self.r})"

    def __call__(self, zv):
        zv = np.asarray(zv, dtype=complex)
        with np.errstate(divide='ignore'):
            return np.log(self.r / np.abs(zv)) / np.pi

    def boundary_points(self, n, offset=0.):
        theta = offset + 2 * np.pi * np.arange(n) / n
        return self.r * np.exp(1j * theta)

    def boundary_average(self, func, n=1024, offset=0.):
        """ Average of `func` over the boundary circle
        with respect to harmonic measure (trapezoidal rule). """
        return np.mean(func(self.boundary_points(n, offset)), axis=-1)
