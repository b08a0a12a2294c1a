"""
Algebroidpy Paths Module
Content: Piecewise paths of line and arc segments in the z-plane
"""

import numpy as np

from dataclasses import dataclass

from .tools import parse_complex, PathCrossesBranchSet, ProblemFileError


@dataclass(frozen=True)
class Segment:
    """ Line from `start` to `end`, or arc around `center`
    that starts at `start` and turns by `angle` radians
    (counterclockwise for positive angles). """

    kind: str
    start: complex
    end: complex = 0j
    center: complex = 0j
    angle: float = 0.

    def point(self, t):
        """ Point at parameter `t` in [0, 1]. """
        t = np.asarray(t, dtype=float)
        if self.kind == 'line':
            return self.start + (self.end - self.start) * t
        return self.center + (self.start - self.center) \
            * np.exp(1j * self.angle * t)

    def velocity(self, t):
        """ Derivative `dz/dt` at parameter `t`. """
        t = np.asarray(t, dtype=float)
        if self.kind == 'line':
            return np.broadcast_to(self.end - self.start, t.shape)
        return (self.start - self.center) * 1j * self.angle \
            * np.exp(1j * self.angle * t)

    @property
    def terminal(self):
        return complex(self.point(1.))

    @property
    def length(self):
        if self.kind == 'line':
            return abs(self.end - self.start)
        return abs(self.start - self.center) * abs(self.angle)

    def reversed(self):
        if self.kind == 'line':
            return Segment('line', self.end, self.start)
        return Segment('arc', self.terminal, center=self.center,
                       angle=-self.angle)

    def distance(self, zv):
        """ Smallest distance between the segment and the point `zv`. """
        if self.kind == 'line':
            d = self.end - self.start
            if d == 0:
                return abs(zv - self.start)
            t = np.clip(((zv - self.start) * np.conj(d)).real
                        / abs(d) ** 2, 0, 1)
            return abs(zv - (self.start + t * d))
        n = max(64, int(abs(self.angle) / (2 * np.pi) * 4096))
        return float(np.min(np.abs(self.point(np.linspace(0, 1, n + 1))
                                   - zv)))

    def to_dict(self):
        if self.kind == 'line':
            return {'type': 'line', 'to': [self.end.real, self.end.imag]}
        return {'type': 'arc', 'center': [self.center.real, self.center.imag],
                'angle': self.angle}


class PathSpec:
    """ Piecewise smooth path in the z-plane, built from line and
    arc segments that are joined end to end.

    Arguments:
        start (complex): Initial point of the path.
        segments (list of Segment or dict, optional): Segments in order.
            Dictionaries follow the format ``{"type": "line", "to": [re, im]}``
            or ``{"type": "arc", "center": [re, im], "angle": θ}``.
        min_clearance (float, optional): Smallest allowed distance to
            critical points, enforced by :func:`PathSpec.check_clearance`
            (default 0).

    Examples:

        Upper half of the unit circle::

            >>> path = ag.PathSpec(1).arc(0, np.pi)
            >>> path.end
            (-1+1.2246467991473532e-16j)
    """

    def __init__(self, start, segments=None, min_clearance=0.):
        self.start = parse_complex(start)
        self.segments = []
        self.min_clearance = min_clearance
        for seg in segments or []:
            if isinstance(seg, Segment):
                self.segments.append(seg)
            elif isinstance(seg, dict):
                self._append_dict(seg)
            else:
                raise ProblemFileError(f"Unknown path segment {seg}")

    def __repr__(self):
        return f"PathSpec ({len(self.segments)} segments, from {self.start})"

    def __len__(self):
        return len(self.segments)

    def __iter__(self):
        return iter(self.segments)

    def _append_dict(self, seg):
        kind = seg.get('type')
        if kind == 'line':
            self.line(parse_complex(seg['to']))
        elif kind == 'arc':
            self.arc(parse_complex(seg['center']), float(seg['angle']))
        else:
            raise ProblemFileError(f"Unknown path segment type '{kind}'")

    # Construction ---------------------------------------------------------- #

    def line(self, to):
        """ Appends a straight segment to `to` and returns the path. """
        self.segments.append(Segment('line', self.end, parse_complex(to)))
        return self

    def arc(self, center, angle):
        """ Appends an arc around `center` by `angle` radians. """
        self.segments.append(Segment('arc', self.end,
                                     center=parse_complex(center),
                                     angle=float(angle)))
        return self

    @classmethod
    def straight(cls, a, b):
        return cls(a).line(b)

    @classmethod
    def circle(cls, center, radius, start_angle=0., turns=1):
        """ Counterclockwise circle that starts and ends
        at `center + radius * exp(i * start_angle)`. """
        center = parse_complex(center)
        start = center + radius * np.exp(1j * start_angle)
        return cls(start).arc(center, 2 * np.pi * turns)

    @classmethod
    def from_dict(cls, data):
        if 'start' not in data:
            raise ProblemFileError("Path needs a 'start' point")
        return cls(data['start'], data.get('segments', []),
                   data.get('min_clearance', 0.))

    def to_dict(self):
        return {'start': [self.start.real, self.start.imag],
                'segments': [s.to_dict() for s in self.segments],
                'min_clearance': self.min_clearance}

    def concat(self, other):
        """ Returns the path followed by `other`. """
        if abs(other.start - self.end) > 1e-12 * max(1., abs(self.end)):
            raise ValueError("Paths are not joined end to end")
        return PathSpec(self.start, self.segments + other.segments,
                        max(self.min_clearance, other.min_clearance))

    def reversed(self):
        return PathSpec(self.end, [s.reversed() for s in
                                   reversed(self.segments)],
                        self.min_clearance)

    # Properties ------------------------------------------------------------ #

    @property
    def end(self):
        return self.segments[-1].terminal if self.segments else self.start

    @property
    def length(self):
        return sum(s.length for s in self.segments)

    @property
    def is_closed(self):
        return abs(self.end - self.start) <= 1e-12 * max(1., abs(self.start))

    def clearance(self, points):
        """ Smallest distance from the path to any of the `points`. """
        if not self.segments:
            return min((abs(self.start - p) for p in points), default=np.inf)
        return min((s.distance(p) for s in self.segments for p in points),
                   default=np.inf)

    def check_clearance(self, points):
        """ Raises :class:`PathCrossesBranchSet` if the path comes closer
        to one of the `points` than `min_clearance`. """
        dist = self.clearance(points)
        if dist < self.min_clearance or dist == 0:
            raise PathCrossesBranchSet(
                f"Path passes within {dist:.3g} of the critical set "
                f"(clearance {self.min_clearance:.3g} required)")
        return dist
