"""
Algebroidpy Tools Module
Content: Errors, helper functions, and base classes
"""

import numpy as np
from numpy import ndarray


class AlgebroidError(Exception):
    pass


# Coefficient field ------------------------------------------------------- #

class Pole(AlgebroidError):
    """ A coefficient was evaluated at one of its poles. """

    def __init__(self, point):
        self.point = point
        super().__init__(f"Pole at z={point}")


class Indeterminate(AlgebroidError):
    pass


class DivisionByZeroFunction(AlgebroidError):
    pass


class ParseError(AlgebroidError):
    pass


class BackendUnsupported(AlgebroidError):
    pass


# Defining polynomials ---------------------------------------------------- #

class DegreeTooLow(AlgebroidError):
    pass


class ZeroFunction(AlgebroidError):
    pass


class NotInvertible(AlgebroidError):
    pass


class RootFindingFailure(AlgebroidError):
    """ A zero search did not converge. """

    def __init__(self, message, diagnostics=None):
        self.diagnostics = diagnostics or {}
        super().__init__(message)


# Continuation ------------------------------------------------------------ #

class NearCritical(AlgebroidError):
    """ Two roots of a fiber are closer than the separation threshold. """

    def __init__(self, point, separation):
        self.point = point
        self.separation = separation
        super().__init__(f"Fiber at z={point} is degenerate "
                         f"(root separation {separation:.3g})")


class PoleAtBase(AlgebroidError):
    def __init__(self, point):
        self.point = point
        super().__init__(f"Leading coefficient vanishes at z={point}")


class StepCollapse(AlgebroidError):
    def __init__(self, point, step):
        self.point = point
        self.step = step
        super().__init__(f"Step size collapsed to {step:.3g} near z={point}")


class SheetCollision(AlgebroidError):
    def __init__(self, point, separation):
        self.point = point
        self.separation = separation
        super().__init__(f"Tracked sheets collided near z={point} "
                         f"(separation {separation:.3g})")


class LoopContainsOtherBranchPoints(AlgebroidError):
    pass


class ExpansionDiverged(AlgebroidError):
    pass


class Inconclusive(AlgebroidError):
    pass


# Covering and Nevanlinna functionals ------------------------------------- #

class PathCrossesBranchSet(AlgebroidError):
    pass


class TargetDegenerate(AlgebroidError):
    pass


class QuadratureBudgetExceeded(AlgebroidError):
    pass


class BoundaryHitsDivisor(AlgebroidError):
    pass


class DivisorPointAtOrigin(AlgebroidError):
    pass


class DegenerateTargets(AlgebroidError):
    pass


class NotTranscendentalEnough(AlgebroidError):
    pass


# Curvature models -------------------------------------------------------- #

class SolverFailure(AlgebroidError):
    pass


class NonParabolicityViolated(AlgebroidError):
    pass


# Problem files ----------------------------------------------------------- #

class ProblemFileError(AlgebroidError):
    pass


class InfoStr(str):
    """ String that is displayed in user-friendly format. """
    def __repr__(self):
        return self


def make_list(element, keep_none=False):
    """ Turns element into a list of itself
    if it is not of type list or tuple. """

    if element is None and not keep_none:
        element = []  # Convert none to empty list
    if not isinstance(element, (list, tuple, set, ndarray)):
        element = [element]
    elif isinstance(element, (tuple, set)):
        element = list(element)

    return element


def parse_complex(text):
    """ Reads a complex number written as ``4+0i``, ``-1.5j``, ``i``,
    or a pair ``[re, im]``. """

    if isinstance(text, (list, tuple)):
        if len(text) != 2:
            raise ParseError(f"Expected [re, im], got {text}")
        return complex(float(text[0]), float(text[1]))
    if isinstance(text, (int, float, complex, np.number)):
        return complex(text)
    s = str(text).strip().replace(' ', '').replace('i', 'j')
    if s in ('j', '+j', '-j'):
        s = s.replace('j', '1j')
    try:
        return complex(s)
    except ValueError:
        raise ParseError(f"Cannot read complex number '{text}'")


def cluster_points(points, tol=1e-9, weights=None):
    """ Merges points that lie within `tol * max(1, |z|)` of each other.

    Arguments:
        points (list of complex): Points to deduplicate.
        tol (float, optional): Relative cluster radius (default 1e-9).
        weights (list of int, optional): Multiplicities that are
            summed when points merge (default 1 per point).

    Returns:
        list of tuple: Pairs `(point, weight)` ordered by modulus.
    """

    if weights is None:
        weights = [1] * len(points)
    merged = []
    for p, w in sorted(zip(points, weights), key=lambda x: abs(x[0])):
        for i, (q, v) in enumerate(merged):
            if abs(p - q) <= tol * max(1., abs(q)):
                merged[i] = ((q * v + p * w) / (v + w), v + w)
                break
        else:
            merged.append((complex(p), w))
    return merged


class AttrDict(dict):
    """ Dictionary where attribute calls are handled like item calls.

    Examples:

        >>> ad = ag.AttrDict()
        >>> ad['a'] = 1
        >>> ad.a
        1

        >>> ad.b = 2
        >>> ad['b']
        2
    """

    def __init__(self, *args, **kwargs):
        if args == (None, ):
            args = ()  # Empty tuple
        super().__init__(*args, **kwargs)

    def __getattr__(self, name):
        try:
            return self.__getitem__(name)
        except KeyError:
            # Important for pickle to work
            raise AttributeError(name)

    def __setattr__(self, name, value):
        self.__setitem__(name, value)

    def __delattr__(self, item):
        del self[item]

    def _short_repr(self):
        len_ = len(self.keys())
        return f"AttrDict ({len_} entr{'y' if len_ == 1 else 'ies'})"
