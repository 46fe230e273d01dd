"""Euclidean primitives: points, normalized lines, circles and the operations
(power, radical axis, inversion, polars, intersections, tangency) that the
rest of the package is built from.

Every predicate goes through one tolerance policy, :class:`Tol`.  A quantity
is treated as zero when ``|x| <= abs_eps + rel_eps * scale`` where ``scale``
is the largest magnitude among the quantities being compared.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import List, Optional, Union

import numpy as np

from .errors import (
    CenterPole,
    CollinearPoints,
    ConcentricCircles,
    DegenerateImage,
    DegenerateTriangle,
    IdenticalObjects,
    PointsNotOnCircle,
)


@dataclass(frozen=True)
class Tol:
    abs_eps: float = 1e-9
    rel_eps: float = 1e-9

    def __post_init__(self):
        for v in (self.abs_eps, self.rel_eps):
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"tolerances must be finite and positive, got {v!r}")

    def bound(self, *scale: float) -> float:
        s = max((abs(v) for v in scale), default=0.0)
        return self.abs_eps + self.rel_eps * s

    def is_zero(self, x: float, *scale: float) -> bool:
        return abs(x) <= self.bound(x, *scale)

    def close(self, a: float, b: float, *scale: float) -> bool:
        return abs(a - b) <= self.bound(a, b, *scale)


DEFAULT_TOL = Tol()


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite point ({self.x}, {self.y})")

    def __add__(self, o: "Point") -> "Point":
        return Point(self.x + o.x, self.y + o.y)

    def __sub__(self, o: "Point") -> "Point":
        return Point(self.x - o.x, self.y - o.y)

    def __mul__(self, k: float) -> "Point":
        return Point(self.x * k, self.y * k)

    __rmul__ = __mul__

    def __truediv__(self, k: float) -> "Point":
        return Point(self.x / k, self.y / k)

    def __neg__(self) -> "Point":
        return Point(-self.x, -self.y)

    def __iter__(self):
        yield self.x
        yield self.y

    def dot(self, o: "Point") -> float:
        return self.x * o.x + self.y * o.y

    def cross(self, o: "Point") -> float:
        return self.x * o.y - self.y * o.x

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def norm2(self) -> float:
        return self.x * self.x + self.y * self.y

    def unit(self) -> "Point":
        n = self.norm()
        return Point(self.x / n, self.y / n)

    def perp(self) -> "Point":
        """Rotation by +90 degrees."""
        return Point(-self.y, self.x)

    def distance(self, o: "Point") -> float:
        return math.hypot(self.x - o.x, self.y - o.y)

    def close_to(self, o: "Point", tol: Tol = DEFAULT_TOL, scale: float = 1.0) -> bool:
        return self.distance(o) <= tol.bound(scale, self.norm(), o.norm())

    def array(self) -> np.ndarray:
        return np.array([self.x, self.y])


@dataclass(frozen=True)
class Line:
    """The locus a*x + b*y + c = 0, stored with a^2 + b^2 = 1 and a canonical sign.

    Build instances with :meth:`from_coeffs` or :meth:`through`; the raw
    constructor expects already-normalized coefficients.
    """

    a: float
    b: float
    c: float

    @classmethod
    def from_coeffs(cls, a: float, b: float, c: float) -> "Line":
        n = math.hypot(a, b)
        if n == 0 or not math.isfinite(n):
            raise ValueError("line needs a nonzero normal vector")
        a, b, c = a / n, b / n, c / n
        # canonical sign: first significant entry of (a, b) positive
        if a < -1e-12 or (abs(a) <= 1e-12 and b < 0):
            a, b, c = -a, -b, -c
        return cls(a + 0.0, b + 0.0, c + 0.0)

    @classmethod
    def through(cls, p: Point, q: Point) -> "Line":
        d = q - p
        if d.norm() == 0:
            raise DegenerateImage("line through two coincident points")
        return cls.from_coeffs(-d.y, d.x, d.y * p.x - d.x * p.y)

    @classmethod
    def point_normal(cls, p: Point, n: Point) -> "Line":
        return cls.from_coeffs(n.x, n.y, -(n.x * p.x + n.y * p.y))

    @property
    def normal(self) -> Point:
        return Point(self.a, self.b)

    @property
    def direction(self) -> Point:
        return Point(-self.b, self.a)

    def signed_distance(self, p: Point) -> float:
        return self.a * p.x + self.b * p.y + self.c

    def distance(self, p: Point) -> float:
        return abs(self.signed_distance(p))

    def foot(self, p: Point) -> Point:
        s = self.signed_distance(p)
        return Point(p.x - s * self.a, p.y - s * self.b)

    def point(self) -> Point:
        """The point of the line closest to the origin."""
        return Point(-self.c * self.a, -self.c * self.b)

    def contains(self, p: Point, tol: Tol = DEFAULT_TOL) -> bool:
        return tol.is_zero(self.signed_distance(p), p.x, p.y, self.c)

    def coeffs(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c])

    def close_to(self, o: "Line", tol: Tol = DEFAULT_TOL) -> bool:
        return line_deviation(self, o) <= tol.bound(self.c, o.c)


@dataclass(frozen=True)
class Circle:
    center: Point
    radius: float

    def __post_init__(self):
        if not (math.isfinite(self.radius) and self.radius > 0):
            raise ValueError(f"circle radius must be positive, got {self.radius!r}")

    def power(self, p: Point) -> float:
        return (p - self.center).norm2() - self.radius**2

    def contains(self, p: Point, tol: Tol = DEFAULT_TOL) -> bool:
        d = p.distance(self.center)
        return tol.close(d, self.radius, p.norm(), self.center.norm())

    def point_at(self, theta: float) -> Point:
        return Point(
            self.center.x + self.radius * math.cos(theta),
            self.center.y + self.radius * math.sin(theta),
        )

    def close_to(self, o: "Circle", tol: Tol = DEFAULT_TOL) -> bool:
        scale = max(self.radius, o.radius, self.center.norm(), o.center.norm())
        return (
            self.center.distance(o.center) <= tol.bound(scale)
            and abs(self.radius - o.radius) <= tol.bound(scale)
        )


GObject = Union[Circle, Line, Point]


class Tangency(enum.Enum):
    NONE = "none"
    EXTERNAL = "external"
    INTERNAL = "internal"
    LINE_TANGENT = "line-tangent"


def line_deviation(l1: Line, l2: Line) -> float:
    """Max-abs difference of canonical coefficients."""
    return float(np.max(np.abs(l1.coeffs() - l2.coeffs())))


def power_of_point(p: Point, c: Circle) -> float:
    return c.power(p)


def radical_axis(c1: Circle, c2: Circle, tol: Tol = DEFAULT_TOL) -> Line:
    d = c2.center - c1.center
    if d.norm() <= tol.bound(c1.radius, c2.radius, c1.center.norm()):
        raise ConcentricCircles("radical axis of concentric circles is undefined")
    # |P-O1|^2 - r1^2 = |P-O2|^2 - r2^2 is linear in P
    a, b = 2 * d.x, 2 * d.y
    c = c1.center.norm2() - c2.center.norm2() - c1.radius**2 + c2.radius**2
    return Line.from_coeffs(a, b, c)


def invert(center: Point, k2: float, obj: GObject, tol: Tol = DEFAULT_TOL) -> GObject:
    """Image of ``obj`` under inversion with the given center and power ``k2``.

    Circles and lines through the center swap variant.
    """
    if not k2 > 0:
        raise ValueError("inversion power must be positive")
    if isinstance(obj, Point):
        d = obj - center
        n2 = d.norm2()
        if n2 <= tol.bound(center.norm(), obj.norm()) ** 2:
            raise DegenerateImage("the inversion center has no image")
        return center + d * (k2 / n2)
    if isinstance(obj, Circle):
        d = obj.center - center
        dn = d.norm()
        pw = d.norm2() - obj.radius**2
        if abs(dn - obj.radius) <= tol.bound(dn, obj.radius):
            # circle through the center -> line perpendicular to d
            u = d / dn
            return Line.point_normal(center + u * (k2 / (2 * obj.radius)), u)
        return Circle(center + d * (k2 / pw), k2 * obj.radius / abs(pw))
    if isinstance(obj, Line):
        s = obj.signed_distance(center)
        if abs(s) <= tol.bound(center.norm(), obj.c):
            return obj
        # unit normal pointing from the center towards the line
        n = obj.normal * (-1.0 if s > 0 else 1.0)
        h = abs(s)
        return Circle(center + n * (k2 / (2 * h)), k2 / (2 * h))
    raise TypeError(f"cannot invert {type(obj).__name__}")


def polar(p: Point, c: Circle, tol: Tol = DEFAULT_TOL) -> Line:
    d = p - c.center
    if d.norm() <= tol.bound(c.radius, c.center.norm()):
        raise CenterPole("the center of a circle has no polar")
    # (X - O).(P - O) = r^2
    return Line.from_coeffs(d.x, d.y, -(d.dot(c.center) + c.radius**2))


def circumcircle(a: Point, b: Point, c: Point, tol: Tol = DEFAULT_TOL) -> Circle:
    ab, ac = b - a, c - a
    det = 2 * ab.cross(ac)
    scale = max(ab.norm(), ac.norm())
    if abs(det) <= tol.bound(scale * scale) * 2:
        raise CollinearPoints("points are collinear")
    ux = (ac.y * ab.norm2() - ab.y * ac.norm2()) / det
    uy = (ab.x * ac.norm2() - ac.x * ab.norm2()) / det
    off = Point(ux, uy)
    return Circle(a + off, off.norm())


def line_intersection(l1: Line, l2: Line) -> Optional[Point]:
    det = l1.a * l2.b - l1.b * l2.a
    if abs(det) < 1e-15:
        return None
    x = (l1.b * l2.c - l2.b * l1.c) / det
    y = (l2.a * l1.c - l1.a * l2.c) / det
    return Point(x, y)


def _circle_line(c: Circle, l: Line, tol: Tol) -> List[Point]:
    s = l.signed_distance(c.center)
    foot = l.foot(c.center)
    if abs(abs(s) - c.radius) <= tol.bound(s, c.radius):
        return [foot]
    if abs(s) > c.radius:
        return []
    h = math.sqrt(c.radius**2 - s * s)
    d = l.direction
    return [foot - d * h, foot + d * h]


def _circle_circle(c1: Circle, c2: Circle, tol: Tol) -> List[Point]:
    v = c2.center - c1.center
    d = v.norm()
    r1, r2 = c1.radius, c2.radius
    bound = tol.bound(d, r1, r2)
    if d <= bound:
        if abs(r1 - r2) <= bound:
            raise IdenticalObjects("circles coincide")
        return []
    u = v / d
    if abs(d - (r1 + r2)) <= bound:
        return [c1.center + u * r1]
    if abs(d - abs(r1 - r2)) <= bound:
        return [c1.center + u * (r1 if r1 > r2 else -r1)]
    if d > r1 + r2 or d < abs(r1 - r2):
        return []
    a = (d * d + r1 * r1 - r2 * r2) / (2 * d)
    h = math.sqrt(max(r1 * r1 - a * a, 0.0))
    m = c1.center + u * a
    return [m - u.perp() * h, m + u.perp() * h]


def intersect(a: GObject, b: GObject, tol: Tol = DEFAULT_TOL) -> List[Point]:
    """All common points (0, 1 or 2); a tangency yields exactly one point."""
    if isinstance(a, Point) or isinstance(b, Point):
        p, other = (a, b) if isinstance(a, Point) else (b, a)
        if isinstance(other, Point):
            if p.close_to(other, tol):
                raise IdenticalObjects("points coincide")
            return []
        return [p] if other.contains(p, tol) else []
    if isinstance(a, Line) and isinstance(b, Line):
        p = line_intersection(a, b)
        if p is None or abs(a.a * b.b - a.b * b.a) <= tol.abs_eps:
            if abs(a.c - b.c) <= tol.bound(a.c, b.c) and line_deviation(a, b) <= tol.bound(a.c, b.c):
                raise IdenticalObjects("lines coincide")
            return []
        return [p]
    if isinstance(a, Circle) and isinstance(b, Circle):
        return _circle_circle(a, b, tol)
    c, l = (a, b) if isinstance(a, Circle) else (b, a)
    return _circle_line(c, l, tol)


def tangency(a: GObject, b: GObject, tol: Tol = DEFAULT_TOL) -> Tangency:
    if isinstance(a, Circle) and isinstance(b, Circle):
        d = a.center.distance(b.center)
        bound = tol.bound(d, a.radius, b.radius)
        if abs(d - (a.radius + b.radius)) <= bound:
            return Tangency.EXTERNAL
        if d > bound and abs(d - abs(a.radius - b.radius)) <= bound:
            return Tangency.INTERNAL
        return Tangency.NONE
    if isinstance(a, Line) and isinstance(b, Circle):
        a, b = b, a
    if isinstance(a, Circle) and isinstance(b, Line):
        s = b.distance(a.center)
        if abs(s - a.radius) <= tol.bound(s, a.radius):
            return Tangency.LINE_TANGENT
        return Tangency.NONE
    return Tangency.NONE


def tangency_defect(c: Circle, obj: GObject, kind: Optional[Tangency] = None) -> float:
    """Distance from exact tangency between ``c`` and a line or circle.

    For circle pairs ``kind`` selects the tangency type measured; without it
    the smaller of the external and internal defects is returned.
    """
    if isinstance(obj, Line):
        return abs(obj.distance(c.center) - c.radius)
    d = c.center.distance(obj.center)
    ext = abs(d - (c.radius + obj.radius))
    inn = abs(d - abs(c.radius - obj.radius))
    if kind is Tangency.EXTERNAL:
        return ext
    if kind is Tangency.INTERNAL:
        return inn
    return min(ext, inn)


def tangent_points_from(p: Point, c: Circle, tol: Tol = DEFAULT_TOL) -> List[Point]:
    """Touch points of the tangent lines from ``p`` to ``c``."""
    d = p - c.center
    dn2 = d.norm2()
    r2 = c.radius**2
    if abs(dn2 - r2) <= tol.bound(dn2, r2):
        return [p]
    if dn2 < r2:
        return []
    # touch points X = O + r^2/|d|^2 d +- r sqrt(|d|^2 - r^2)/|d|^2 perp(d)
    base = c.center + d * (r2 / dn2)
    h = c.radius * math.sqrt(dn2 - r2) / dn2
    return [base + d.perp() * h, base - d.perp() * h]


def angle_bisector_foot(s: Point, a: Point, b: Point, tol: Tol = DEFAULT_TOL) -> Point:
    """Foot on AB of the bisector of angle ASB: AT/TB = SA/SB."""
    sa, sb = s.distance(a), s.distance(b)
    scale = max(sa, sb, a.distance(b))
    if a.distance(b) <= tol.bound(scale) or sa <= tol.bound(scale) or sb <= tol.bound(scale):
        raise DegenerateTriangle("degenerate triangle")
    if abs((a - s).cross(b - s)) <= tol.bound(scale * scale) and (a - s).dot(b - s) < 0:
        raise DegenerateTriangle("S lies on segment AB")
    return (a * sb + b * sa) / (sa + sb)


def arc_midpoint(c: Circle, a: Point, b: Point, avoid: Point, tol: Tol = DEFAULT_TOL) -> Point:
    """Midpoint of the arc AB of ``c`` that does not contain ``avoid``."""
    for p in (a, b, avoid):
        if not c.contains(p, Tol(max(tol.abs_eps, 1e-7), max(tol.rel_eps, 1e-7))):
            raise PointsNotOnCircle(f"({p.x}, {p.y}) is not on the circle")
    if a.distance(b) <= tol.bound(c.radius):
        raise PointsNotOnCircle("arc endpoints coincide")
    chord = Line.through(a, b)
    n = chord.normal
    m1, m2 = c.center + n * c.radius, c.center - n * c.radius
    side = chord.signed_distance(avoid)
    if abs(side) <= tol.bound(c.radius):
        raise PointsNotOnCircle("avoid point coincides with an arc endpoint")
    return m1 if chord.signed_distance(m1) * side < 0 else m2
