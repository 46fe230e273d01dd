"""Oriented cycles and axes, their embedding into (2,1) pseudo-Euclidean space,
inflation, and the Lorentz cycle map.

Conventions
-----------
* A cycle ``(x, y, r)`` with ``r > 0`` is oriented clockwise, ``r < 0``
  counterclockwise, ``r == 0`` is a point.
* An axis is an oriented line with unit ``direction``; its *left* normal is
  ``direction`` rotated by +90 degrees and ``offset`` is the signed distance
  of the line from the origin along that normal.  A cycle touches an axis
  (orientations agreeing) iff ``offset - center . normal == r``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .errors import NoCommonTangentAxis, SpeedOutOfRange
from .geom_core import DEFAULT_TOL, Circle, Line, Point, Tangency, Tol, tangency


@dataclass(frozen=True)
class Cycle:
    x: float
    y: float
    r: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.x, self.y, self.r)):
            raise ValueError("cycle coordinates must be finite")

    @property
    def center(self) -> Point:
        return Point(self.x, self.y)

    def circle(self) -> Circle:
        return Circle(self.center, abs(self.r))

    def reversed(self) -> "Cycle":
        return Cycle(self.x, self.y, -self.r)


@dataclass(frozen=True)
class Axis:
    dx: float
    dy: float
    offset: float

    def __post_init__(self):
        if abs(math.hypot(self.dx, self.dy) - 1) > 1e-12:
            raise ValueError("axis direction must be a unit vector")

    @classmethod
    def through(cls, p: Point, q: Point) -> "Axis":
        """Axis through p and q oriented from p to q."""
        d = (q - p).unit()
        return cls(d.x, d.y, d.perp().dot(p))

    @property
    def direction(self) -> Point:
        return Point(self.dx, self.dy)

    @property
    def normal(self) -> Point:
        return Point(-self.dy, self.dx)

    def line(self) -> Line:
        n = self.normal
        return Line.from_coeffs(n.x, n.y, -self.offset)

    def reversed(self) -> "Axis":
        return Axis(-self.dx, -self.dy, -self.offset)


@dataclass(frozen=True)
class MPoint:
    x: float
    y: float
    z: float


def sigma(c: Cycle) -> MPoint:
    return MPoint(c.x, c.y, c.r)


def sigma_inv(m: MPoint) -> Cycle:
    return Cycle(m.x, m.y, m.z)


def q(u: Union[MPoint, Cycle], v: Union[MPoint, Cycle]) -> float:
    """Squared pseudo-Euclidean interval dx^2 + dy^2 - dz^2."""
    u = sigma(u) if isinstance(u, Cycle) else u
    v = sigma(v) if isinstance(v, Cycle) else v
    return (u.x - v.x) ** 2 + (u.y - v.y) ** 2 - (u.z - v.z) ** 2


def _scale(*cs: Cycle) -> float:
    return max(max(abs(c.x), abs(c.y), abs(c.r)) for c in cs)


def tangent_cycles(c1: Cycle, c2: Cycle, tol: Tol = DEFAULT_TOL) -> bool:
    """Oriented tangency: vanishing interval and geometric tangency of the circles."""
    s = _scale(c1, c2)
    if not abs(q(c1, c2)) <= tol.bound(s * s):
        return False
    if c1.r == 0 or c2.r == 0:
        # a point is incident to a cycle; q = 0 already says so
        return not (c1.r == 0 and c2.r == 0)
    return tangency(c1.circle(), c2.circle(), tol) is not Tangency.NONE


def cycle_axis_tangent(c: Cycle, a: Axis, tol: Tol = DEFAULT_TOL) -> bool:
    gap = a.offset - c.center.dot(a.normal) - c.r
    return abs(gap) <= tol.bound(a.offset, c.x, c.y, c.r)


def tangent_length(c1: Cycle, c2: Cycle, tol: Tol = DEFAULT_TOL) -> float:
    """Distance between the touch points on a common tangent axis."""
    val = q(c1, c2)
    s = _scale(c1, c2)
    if val < -tol.bound(s * s):
        raise NoCommonTangentAxis(f"q = {val} < 0: the cycles share no tangent axis")
    return math.sqrt(max(val, 0.0))


def inflate(obj: Union[Cycle, Axis, Point], rho: float) -> Union[Cycle, Axis]:
    if isinstance(obj, Point):
        obj = Cycle(obj.x, obj.y, 0.0)
    if isinstance(obj, Cycle):
        return Cycle(obj.x, obj.y, obj.r + rho)
    return Axis(obj.dx, obj.dy, obj.offset + rho)


def _gamma(v: float) -> float:
    if not abs(v) < 1:
        raise SpeedOutOfRange(f"|v| must be < 1, got {v}")
    return 1.0 / math.sqrt(1.0 - v * v)


def lorentz(v: float, c: Cycle) -> Cycle:
    g = _gamma(v)
    return Cycle(g * (c.x - v * c.r), c.y, g * (c.r - v * c.x))


def lorentz_axis(v: float, a: Axis) -> Axis:
    """The boost acting on an axis through the plane of cycles tangent to it.

    Only needed when a chart map sends a cycle through infinity.
    """
    g = _gamma(v)
    n = a.normal
    k = 1.0 + v * n.x
    nx, ny = (n.x + v) / k, n.y / (g * k)
    return Axis(ny, -nx, a.offset / (g * k))
