"""
Algebroidpy Examples Module
Content: Named example curves and the regression suite
"""

from .defining import curve, AlgebroidCurve


def identity():
    """ Single-valued curve `W = z`. """
    return curve(['-z', 1])


def constant(value=5):
    """ Constant curve `W = value`. """
    return curve([str(-value), 1])


def root(nu=2, shift=0):
    """ `ν`-valued root `W^ν = z - shift`, branched at `shift`. """
    coeffs = [f'{shift}-z' if shift else '-z'] + [0] * (nu - 1) + [1]
    return curve(coeffs)


def cusp():
    """ `(W - 1)² = z³`, a single cycle of length 2 at the origin
    with leading exponent 3/2. """
    return curve(['1-z**3', -2, 1])


def reducible():
    """ `W² = z²`, which splits into `W = z` and `W = -z`. """
    return curve(['-z**2', 0, 1])


def pole_curve():
    """ `(z - 2) W² = z`, with a pole at 2 and a branch point at 0. """
    return curve(['-z', 0, 'z-2'])


def exp_root(nu=2):
    """ `W^ν = e^z` on the numeric backend; the sheets omit 0 and ∞. """
    return curve(['-exp(z)'] + [0] * (nu - 1) + [1], backend='numeric')


def exponential():
    """ `W = e^z` on the numeric backend. """
    return curve(['-exp(z)', 1], backend='numeric')


def plane_pair():
    """ Curve `[1 : W_1 : W_2]` into the projective plane with
    `W_1² = z` and `W_2 = z + 1`. """
    return AlgebroidCurve([['-z', 0, 1], ['-z-1', 1]])


def regression_curves():
    """ Exact curves with branch points near the origin
    used for regression checks.

    Returns:
        dict: Curves by name.
    """
    return {
        'sqrt': root(2),
        'sqrt_shift': root(2, 1),
        'cube_root': root(3),
        'cube_root_shift': root(3, 1),
        'fourth_root_shift': root(4, 1),
        'cusp': cusp(),
        'two_branch': curve(['-z*(1+z)', 0, 1]),
        'double_pair': curve(['z**2-1', 0, 1]),
        'pole': pole_curve(),
        'node_cubic': curve(['-z', -1, 0, 1]),
        'quartic': curve(['-z', 0, 'z', 0, 1]),
        'plane_pair': plane_pair(),
    }
