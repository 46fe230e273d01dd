"""Coaxial pencils of circles and their limiting (Sharygin) points.

A circle, line or point-circle is the projective 4-vector ``(a, b, c, d)`` of
``a(x^2 + y^2) + b x + c y + d = 0``.  A pencil is the affine family
``(1 - t) e1 + t e2`` together with ``t = inf`` (which returns ``e2``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from .errors import IntersectingCircles, OnRadicalAxis, ZeroDenominator
from .geom_core import DEFAULT_TOL, Circle, Line, Point, Tol


@dataclass(frozen=True)
class CircleEq:
    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        if self.a == 0 and self.b == 0 and self.c == 0 and self.d == 0:
            raise ValueError("the zero equation is not a circle")

    @classmethod
    def from_circle(cls, c: Circle) -> "CircleEq":
        o = c.center
        return cls(1.0, -2 * o.x, -2 * o.y, o.norm2() - c.radius**2)

    @classmethod
    def from_point(cls, p: Point) -> "CircleEq":
        return cls(1.0, -2 * p.x, -2 * p.y, p.norm2())

    @classmethod
    def from_line(cls, l: Line) -> "CircleEq":
        return cls(0.0, l.a, l.b, l.c)

    @classmethod
    def from_vector(cls, v) -> "CircleEq":
        return cls(*(float(x) for x in v))

    def vector(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c, self.d])

    def __call__(self, p: Point) -> float:
        return self.a * p.norm2() + self.b * p.x + self.c * p.y + self.d

    def canonical(self) -> "CircleEq":
        v = self.vector()
        k = int(np.argmax(np.abs(v)))
        return CircleEq.from_vector(v / v[k])

    def is_line(self, tol: Tol = DEFAULT_TOL) -> bool:
        return abs(self.a) <= 1e-12 * float(np.abs(self.vector()).max())

    @property
    def center(self) -> Point:
        return Point(-self.b / (2 * self.a), -self.c / (2 * self.a))

    @property
    def radius_sq(self) -> float:
        """Squared radius; negative for imaginary members, zero for points."""
        return (self.b**2 + self.c**2 - 4 * self.a * self.d) / (4 * self.a**2)

    def kind(self, tol: Tol = DEFAULT_TOL) -> str:
        if self.is_line(tol):
            return "line"
        r2 = self.radius_sq
        scale = self.center.norm2()
        if tol.is_zero(r2, scale):
            return "point"
        return "circle" if r2 > 0 else "imaginary"

    def to_circle(self) -> Circle:
        r2 = self.radius_sq
        if not r2 > 0:
            raise ValueError("member is not a real circle")
        return Circle(self.center, math.sqrt(r2))

    def to_line(self) -> Line:
        return Line.from_coeffs(self.b, self.c, self.d)


def _eq(obj) -> CircleEq:
    if isinstance(obj, CircleEq):
        return obj
    if isinstance(obj, Circle):
        return CircleEq.from_circle(obj)
    if isinstance(obj, Point):
        return CircleEq.from_point(obj)
    if isinstance(obj, Line):
        return CircleEq.from_line(obj)
    raise TypeError(f"cannot build a circle equation from {type(obj).__name__}")


@dataclass(frozen=True)
class Pencil:
    e1: CircleEq
    e2: CircleEq

    def __post_init__(self):
        m = np.vstack([self.e1.vector(), self.e2.vector()])
        s = np.linalg.svd(m, compute_uv=False)
        if s[1] <= 1e-12 * s[0]:
            raise ValueError("pencil generators are linearly dependent")

    @classmethod
    def of(cls, g1, g2) -> "Pencil":
        """Pencil spanned by two circles, points or lines."""
        return cls(_eq(g1), _eq(g2))

    def span_residual(self, e: CircleEq) -> float:
        """Relative least-squares distance of ``e`` from the pencil's span."""
        basis = np.vstack([self.e1.vector(), self.e2.vector()]).T
        q, _ = np.linalg.qr(basis)
        v = e.vector()
        v = v / np.linalg.norm(v)
        return float(np.linalg.norm(v - q @ (q.T @ v)))


@dataclass(frozen=True)
class LimitingPair:
    s: Point
    s_prime: Point


def pencil_member(p: Pencil, t: float) -> CircleEq:
    if math.isinf(t):
        return p.e2
    return CircleEq.from_vector((1 - t) * p.e1.vector() + t * p.e2.vector())


def _solve_quadratic(a: float, b: float, c: float, eps: float = 1e-14) -> List[float]:
    """Real roots of a t^2 + b t + c, cancellation-free; degree drops handled."""
    scale = max(abs(a), abs(b), abs(c))
    if scale == 0:
        return []
    a, b, c = a / scale, b / scale, c / scale
    if abs(a) <= eps:
        return [] if abs(b) <= eps else [-c / b]
    disc = b * b - 4 * a * c
    if disc < 0:
        if disc > -eps:
            return [-b / (2 * a)]
        return []
    sq = math.sqrt(disc)
    if sq == 0:
        return [-b / (2 * a)]
    qq = -0.5 * (b + math.copysign(sq, b))
    return sorted([qq / a, c / qq])


def _order(p: Point, q: Point, tol: Tol) -> Tuple[Point, Point]:
    scale = max(p.norm(), q.norm(), 1.0)
    if abs(p.x - q.x) <= tol.bound(scale):
        return (p, q) if p.y <= q.y else (q, p)
    return (p, q) if p.x < q.x else (q, p)


def sharygin_points(c1: Circle, c2: Circle, tol: Tol = DEFAULT_TOL) -> LimitingPair:
    """The two radius-zero members of the pencil of two non-intersecting circles.

    Ordered by x, then y.  Concentric circles give the common center twice.
    """
    v = c2.center - c1.center
    d = v.norm()
    r1, r2 = c1.radius, c2.radius
    bound = tol.bound(d, r1, r2)
    if d <= bound:
        if abs(r1 - r2) <= bound:
            raise IntersectingCircles("circles coincide")
        return LimitingPair(c1.center, c1.center)
    if not (d > r1 + r2 + bound or d < abs(r1 - r2) - bound):
        raise IntersectingCircles("circles meet; their limiting points are not real")
    # On the center line at signed offset x from O1: x^2 - k x + r1^2 = 0,
    # k = (d^2 + r1^2 - r2^2)/d (x and x' are mutually inverse in both circles).
    k = (d * d + r1 * r1 - r2 * r2) / d
    roots = _solve_quadratic(1.0, -k, r1 * r1)
    u = v / d
    pts = [c1.center + u * x for x in roots]
    s, sp = _order(pts[0], pts[1], tol)
    return LimitingPair(s, sp)


def member_through_point(p: Pencil, pt: Point, tol: Tol = DEFAULT_TOL) -> CircleEq:
    f1, f2 = p.e1(pt), p.e2(pt)
    v = f2 * p.e1.vector() - f1 * p.e2.vector()
    scale = max(abs(f1), abs(f2)) * max(np.abs(p.e1.vector()).max(), np.abs(p.e2.vector()).max())
    if np.abs(v).max() <= tol.bound(scale) * 1e-3 or np.abs(v).max() == 0:
        raise OnRadicalAxis("point lies on every member")
    m = CircleEq.from_vector(v)
    if m.is_line(tol):
        raise OnRadicalAxis("point lies on the radical axis; the member through it is a line")
    return m.canonical()


def _tangency_poly(p: Pencil, l: Line) -> np.ndarray:
    """Coefficients (t^2, t, 1) of (2Ac - aB - bC)^2 - (B^2 + C^2 - 4AD) along the pencil."""
    v1, v2 = p.e1.vector(), p.e2.vector()
    dv = v2 - v1

    def g(v):
        return 2 * v[0] * l.c - l.a * v[1] - l.b * v[2]

    # every coefficient is affine in t: X(t) = v1 + t dv
    g0, g1 = g(v1), g(dv)
    A0, B0, C0, D0 = v1
    A1, B1, C1, D1 = dv
    quad = g1 * g1 - (B1 * B1 + C1 * C1 - 4 * A1 * D1)
    lin = 2 * g0 * g1 - (2 * B0 * B1 + 2 * C0 * C1 - 4 * (A0 * D1 + A1 * D0))
    const = g0 * g0 - (B0 * B0 + C0 * C0 - 4 * A0 * D0)
    return np.array([quad, lin, const])


def member_tangent_to_line(p: Pencil, l: Line, tol: Tol = DEFAULT_TOL) -> List[CircleEq]:
    """Real circles of the pencil tangent to ``l`` (0 to 2 of them)."""
    qa, qb, qc = _tangency_poly(p, l)
    scale = max(abs(qa), abs(qb), abs(qc))
    if scale == 0:
        return []
    ts: List[float] = _solve_quadratic(qa, qb, qc)
    if abs(qa) <= 1e-14 * scale:
        ts.append(math.inf)  # leading coefficient vanished: root at infinity
    out = []
    for t in ts:
        m = pencil_member(p, t)
        if m.is_line(tol):
            continue
        r2 = m.radius_sq
        c = m.center
        if not r2 > tol.bound(c.norm2()):
            continue
        if abs(l.distance(c) - math.sqrt(r2)) > 1e-6 * max(1.0, math.sqrt(r2), c.norm()):
            continue
        out.append(m.canonical())
    return out


def tangency_parameter_roots(p: Pencil, l: Line) -> List[float]:
    """Finite pencil parameters whose member is tangent to ``l``."""
    qa, qb, qc = _tangency_poly(p, l)
    return _solve_quadratic(qa, qb, qc)


def in_pencil_ratio(pt: Point, s: Point, c: Circle, tol: Tol = DEFAULT_TOL) -> float:
    """|pt - s|^2 / Pow_c(pt); two points lie on one member of pencil(s, c) iff their ratios agree."""
    pw = c.power(pt)
    if abs(pw) <= tol.bound(c.radius**2, (pt - c.center).norm2()):
        raise ZeroDenominator("point lies on the circle")
    return (pt - s).norm2() / pw
