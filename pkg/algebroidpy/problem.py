"""
Algebroidpy Problem Module
Content: Problem files and run manifests
"""

import copy
import hashlib
import json
import sys

from datetime import datetime

from .defining import AlgebroidCurve
from .sample import RadiusGrid
from .targets import as_targets
from .tools import AttrDict, ProblemFileError, ParseError, parse_complex
from .version import __version__

DEFAULTS = {
    'curve': None,
    'disk_radius': None,
    'base_point': None,
    'grid': {'rmin': 2., 'rmax': 100., 'steps': 40, 'method': 'log'},
    'targets': [],
    'tolerances': {
        'separation': 1e-8,
        'residual': 1e-8,
        'cluster': 1e-9,
        'quadrature': 1e-8,
        'fmt': 0.05,
        'bran': 0.1,
        'smt_margin': 0.05,
    },
    'delta': 0.05,
    'seed': 0,
}


def _merge_defaults(data, defaults):
    out = copy.deepcopy(defaults)
    for key, value in data.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _merge_defaults(value, out[key])
        else:
            out[key] = value
    return out


class ProblemFile(AttrDict):
    """ Description of a computation: the curve, the disk, the grid of
    radii, the targets, tolerances, and the seed. Missing fields are
    filled with defaults.

    Curves are written as ``{"backend": "exact", "components":
    [["-z", 0, 1]]}``, with the coefficients `A_0, ..., A_ν` of every
    coordinate.

    Arguments:
        data (dict, optional): Fields of the problem.

    Examples:

        >>> problem = ag.ProblemFile({'curve': {'components': [['-z', 0, 1]]}})
        >>> problem.tolerances.fmt
        0.05
    """

    def __init__(self, data=None):
        data = _merge_defaults(dict(data or {}), DEFAULTS)
        super().__init__(data)
        self.tolerances = AttrDict(self.tolerances)
        self.grid = AttrDict(self.grid)
        self.validate()

    def validate(self):
        """ Raises :class:`ProblemFileError` for invalid fields. """
        unknown = set(self) - set(DEFAULTS)
        if unknown:
            raise ProblemFileError(f"Unknown fields {sorted(unknown)}")
        for key, value in self.tolerances.items():
            if not isinstance(value, (int, float)) or value <= 0:
                raise ProblemFileError(f"Tolerance '{key}' must be positive")
        if self.disk_radius is not None and self.disk_radius <= 0:
            raise ProblemFileError("Disk radius must be positive")
        if not isinstance(self.seed, int):
            raise ProblemFileError("Seed must be an integer")
        try:
            RadiusGrid.from_dict(self.grid)
        except ValueError as e:
            raise ProblemFileError(f"Invalid grid: {e}")
        if self.base_point is not None:
            try:
                base = parse_complex(self.base_point)
            except ParseError as e:
                raise ProblemFileError(f"Invalid base point: {e}")
            if abs(base) >= self.radius():
                raise ProblemFileError(
                    f"Base point {self.base_point} lies outside the disk")

    # Reading and writing --------------------------------------------------- #

    @classmethod
    def loads(cls, text):
        """ Reads a problem from JSON text. Syntax errors
        are reported with their line and column. """
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ProblemFileError(f"Invalid JSON at line {e.lineno}, "
                                   f"column {e.colno}: {e.msg}")
        if not isinstance(data, dict):
            raise ProblemFileError("Problem file must contain an object")
        return cls(data)

    @classmethod
    def load(cls, path):
        with open(path, 'r') as fp:
            return cls.loads(fp.read())

    def to_dict(self):
        return json.loads(json.dumps(self))

    def dumps(self):
        return json.dumps(self, indent=2, sort_keys=True)

    def save(self, path):
        with open(path, 'w') as fp:
            fp.write(self.dumps())

    @property
    def hash(self):
        """ SHA-256 digest of the canonical JSON form. """
        text = json.dumps(self, sort_keys=True, separators=(',', ':'))
        return hashlib.sha256(text.encode()).hexdigest()

    # Derived objects ------------------------------------------------------- #

    def build_curve(self):
        if self.curve is None:
            raise ProblemFileError("Problem defines no curve")
        if isinstance(self.curve, dict):
            return AlgebroidCurve.from_dict(self.curve)
        return AlgebroidCurve(self.curve)

    def build_grid(self):
        return RadiusGrid.from_dict(self.grid)

    def build_targets(self, n=1):
        return as_targets(self.targets, n)

    def radius(self):
        """ Disk radius, by default slightly larger than the grid. """
        if self.disk_radius is not None:
            return float(self.disk_radius)
        return 1.05 * float(self.grid.get('rmax', 100.))


class RunManifest(AttrDict):
    """ Metadata of a run: tool version, input hash, timing, seed,
    and warnings such as moved radii or excised disks.
    Stored as the entry 'info' of every report. """

    def __init__(self, command, problem=None, **kwargs):
        super().__init__()
        self.command = command
        self.algebroidpy_version = __version__
        self.python_version = sys.version.split()[0]
        self.input_hash = problem.hash if problem is not None else None
        self.seed = problem.seed if problem is not None else None
        self.time_stamp = str(datetime.now())
        self.run_time = None
        self.warnings = []
        self.completed = False
        self.update(kwargs)
        self._t0 = datetime.now()

    def __setattr__(self, name, value):
        if name.startswith('_'):
            object.__setattr__(self, name, value)
        else:
            super().__setattr__(name, value)

    def finish(self, warnings=()):
        """ Records the run time and the warnings of the run. """
        for w in warnings:
            if w not in self.warnings:
                self.warnings.append(w)
        self.run_time = str(datetime.now() - self._t0)
        self.completed = True
        return self
