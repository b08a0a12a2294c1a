"""
Algebroidpy Sampling Module
Content: Grids of radii
"""

import numpy as np


class RadiusGrid:
    """ A sequence of radii at which the functionals are evaluated.

    Arguments:
        rmin (float, optional): Smallest radius (default 2).
        rmax (float, optional): Largest radius (default 100).
        steps (int, optional): Number of radii (default 40).
        method (str, optional): Spacing of the radii. Options are:

            - ``log`` (default): Logarithmically spaced values.
            - ``linear``: Evenly spaced values.

    Examples:

        >>> grid = ag.RadiusGrid(10, 1000, 3)
        >>> list(grid)
        [10.0, 100.0, 1000.0]
    """

    def __init__(self, rmin=2., rmax=100., steps=40, method='log'):
        if not 0 < rmin <= rmax:
            raise ValueError("Radii must satisfy 0 < rmin <= rmax")
        if steps < 1:
            raise ValueError("Grid needs at least one radius")
        if method not in ('log', 'linear'):
            raise ValueError(f"Method '{method}' does not exist.")
        self.rmin = float(rmin)
        self.rmax = float(rmax)
        self.steps = int(steps)
        self.method = method

    def __repr__(self):
        return (f"RadiusGrid ({self.steps} {self.method}-spaced radii "
                f"from {self.rmin} to {self.rmax})")

    def __len__(self):
        return self.steps

    def __iter__(self):
        return iter(self.values.tolist())

    def __eq__(self, other):
        return isinstance(other, RadiusGrid) \
            and self.to_dict() == other.to_dict()

    @property
    def values(self):
        if self.steps == 1:
            return np.array([self.rmax])
        if self.method == 'log':
            return np.geomspace(self.rmin, self.rmax, self.steps)
        return np.linspace(self.rmin, self.rmax, self.steps)

    def top(self, share=0.1):
        """ The largest radii, at least one, making up `share` of the grid. """
        k = max(1, int(np.ceil(share * self.steps)))
        return self.values[-k:]

    def to_dict(self):
        return {'rmin': self.rmin, 'rmax': self.rmax,
                'steps': self.steps, 'method': self.method}

    @classmethod
    def from_dict(cls, data):
        return cls(data.get('rmin', 2.), data.get('rmax', 100.),
                   data.get('steps', 40), data.get('method', 'log'))
