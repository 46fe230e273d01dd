"""Conics as symmetric 3x3 quadratic forms, conic pencils and twice-tangent circles.

A point ``(x, y)`` lies on ``Q`` when ``p^T Q p = 0`` for ``p = (x, y, 1)``.
Forms are projective; :meth:`ConicQ.canonical` scales to unit Frobenius
norm with the largest-magnitude entry positive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from .errors import EmptyFamily, NoIntersection, NonCentralConic, NonGeneric, NotACircle, NoRealBitangent
from .geom_core import DEFAULT_TOL, Circle, Line, Point, Tol

_IU = np.triu_indices(3)
_W = np.array([1.0, math.sqrt(2), math.sqrt(2), 1.0, math.sqrt(2), 1.0])


@dataclass(frozen=True, eq=False)
class ConicQ:
    m: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.asarray(self.m, dtype=float)
        if m.shape != (3, 3) or not np.all(np.isfinite(m)):
            raise ValueError("conic matrix must be a finite 3x3 array")
        if np.abs(m - m.T).max() > 1e-12 * max(np.abs(m).max(), 1e-300):
            raise ValueError("conic matrix must be symmetric")
        if not np.any(m):
            raise ValueError("the zero form is not a conic")
        object.__setattr__(self, "m", 0.5 * (m + m.T))

    @classmethod
    def from_coeffs(cls, A: float, B: float, C: float, D: float, E: float, F: float) -> "ConicQ":
        """Conic A x^2 + B xy + C y^2 + D x + E y + F = 0."""
        return cls(np.array([[A, B / 2, D / 2], [B / 2, C, E / 2], [D / 2, E / 2, F]]))

    @classmethod
    def from_vector(cls, v) -> "ConicQ":
        m = np.zeros((3, 3))
        m[_IU] = np.asarray(v) / _W
        return cls(m + np.triu(m, 1).T)

    def coeffs(self) -> Tuple[float, ...]:
        m = self.m
        return (m[0, 0], 2 * m[0, 1], m[1, 1], 2 * m[0, 2], 2 * m[1, 2], m[2, 2])

    def vector(self) -> np.ndarray:
        """Isometric 6-vector (off-diagonals weighted by sqrt 2)."""
        return self.m[_IU] * _W

    def canonical(self) -> "ConicQ":
        m = self.m / np.linalg.norm(self.m)
        k = np.unravel_index(np.argmax(np.abs(m)), m.shape)
        return ConicQ(m if m[k] > 0 else -m)

    def __eq__(self, o: object) -> bool:
        # exact comparison; use proportionality_residual for projective equality
        return isinstance(o, ConicQ) and np.array_equal(self.m, o.m)

    __hash__ = None

    def __call__(self, p: Point) -> float:
        v = np.array([p.x, p.y, 1.0])
        return float(v @ self.m @ v)

    def rank(self, rtol: float = 1e-10) -> int:
        s = np.linalg.svd(self.m, compute_uv=False)
        return int(np.sum(s > rtol * s[0]))

    def __add__(self, o: "ConicQ") -> "ConicQ":
        return ConicQ(self.m + o.m)

    def __mul__(self, k: float) -> "ConicQ":
        return ConicQ(self.m * k)

    __rmul__ = __mul__


def proportionality_residual(q1: ConicQ, q2: ConicQ) -> float:
    """Frobenius distance between the two forms after normalization, up to sign."""
    a = q1.m / np.linalg.norm(q1.m)
    b = q2.m / np.linalg.norm(q2.m)
    return float(min(np.linalg.norm(a - b), np.linalg.norm(a + b)))


def span_residual(q: ConicQ, *basis: ConicQ) -> float:
    """Distance of the normalized form ``q`` from the span of ``basis``."""
    b = np.column_stack([x.vector() for x in basis])
    v = q.vector() / np.linalg.norm(q.vector())
    coef, *_ = np.linalg.lstsq(b, v, rcond=None)
    return float(np.linalg.norm(b @ coef - v))


@dataclass(frozen=True)
class ConicPencil:
    q1: ConicQ
    q2: ConicQ

    def __post_init__(self):
        s = np.linalg.svd(np.vstack([self.q1.vector(), self.q2.vector()]), compute_uv=False)
        if s[1] <= 1e-12 * s[0]:
            raise ValueError("pencil generators are linearly dependent")

    def member(self, t: float) -> ConicQ:
        if math.isinf(t):
            return self.q2
        return ConicQ((1 - t) * self.q1.m + t * self.q2.m)


def line_pair(l1: Line, l2: Line) -> ConicQ:
    a, b = l1.coeffs(), l2.coeffs()
    return ConicQ(0.5 * (np.outer(a, b) + np.outer(b, a)))


def double_line(l: Line) -> ConicQ:
    a = l.coeffs()
    return ConicQ(np.outer(a, a))


def conic_from_circle(c: Circle) -> ConicQ:
    x, y = c.center
    return ConicQ(np.array([[1.0, 0.0, -x], [0.0, 1.0, -y], [-x, -y, x * x + y * y - c.radius**2]]))


def circle_from_conic(q: ConicQ, tol: Tol = DEFAULT_TOL) -> Circle:
    m = q.m
    s = np.abs(m).max()
    if abs(m[0, 0] - m[1, 1]) > tol.bound(s) or abs(m[0, 1]) > tol.bound(s) or abs(m[0, 0]) <= tol.bound(s):
        raise NotACircle("quadratic part is not a multiple of x^2 + y^2")
    a = 0.5 * (m[0, 0] + m[1, 1])
    cx, cy = -m[0, 2] / a, -m[1, 2] / a
    r2 = cx * cx + cy * cy - m[2, 2] / a
    if not r2 > 0:
        raise NotACircle("conic has no real points")
    return Circle(Point(cx, cy), math.sqrt(r2))


def conic_pencil_lemma(c1: ConicQ, c3: ConicQ, f12: ConicQ, f23: ConicQ, cutoff: float = 1e-10) -> ConicQ:
    """The conic lying both in pencil(c1, c3) and in pencil(f12, f23).

    Solves ``l c1 + m c3 - l' f12 - m' f23 = 0`` by SVD null-space extraction.
    """
    vs = [x.vector() / np.linalg.norm(x.vector()) for x in (c1, c3, f12, f23)]
    a = np.column_stack([vs[0], vs[1], -vs[2], -vs[3]])
    _, s, vt = np.linalg.svd(a)
    null = int(np.sum(s <= cutoff * s[0]))
    if null == 0:
        raise NoIntersection("the two pencils share no conic")
    if null > 1:
        raise NonGeneric("the two pencils share more than one conic")
    v = vt[-1]
    if abs(v[0]) + abs(v[1]) <= cutoff:
        raise NonGeneric("the first pencil degenerates")
    f = v[0] * vs[0] + v[1] * vs[1]
    return ConicQ.from_vector(f).canonical()


def _central(q: ConicQ, tol: Tol) -> Tuple[np.ndarray, np.ndarray]:
    blk = q.m[:2, :2]
    if abs(np.linalg.det(blk)) <= tol.bound(np.abs(q.m).max() ** 2):
        raise NonCentralConic("quadratic part is singular")
    return blk, np.linalg.solve(blk, -q.m[:2, 2])


def conic_center(q: ConicQ, tol: Tol = DEFAULT_TOL) -> Point:
    _, c = _central(q, tol)
    return Point(float(c[0]), float(c[1]))


def principal_frame(q: ConicQ, tol: Tol = DEFAULT_TOL):
    """Center, eigenvalues and unit eigenvectors of the quadratic part, ordered
    by increasing eigenvalue magnitude, and the form's value at the center.

    In the frame the conic reads ``l1 u^2 + l2 w^2 + k = 0``.
    """
    blk, c = _central(q, tol)
    w, v = np.linalg.eigh(blk)
    order = np.argsort(np.abs(w))
    w, v = w[order], v[:, order]
    center = np.array([c[0], c[1], 1.0])
    k = float(center @ q.m @ center)
    return Point(float(c[0]), float(c[1])), w, v, k


def conic_axes(q: ConicQ, tol: Tol = DEFAULT_TOL) -> Tuple[Line, Line]:
    center, _, v, _ = principal_frame(q, tol)
    return tuple(Line.point_normal(center, Point(-v[1, i], v[0, i])) for i in range(2))


@dataclass(frozen=True)
class Bitangent:
    circle: Circle
    contacts: Tuple[Point, Point]


def bitangent(gamma: ConicQ, t: float, which_axis: int, tol: Tol = DEFAULT_TOL) -> Bitangent:
    """Circle centered at ``center + t * e`` (``e`` the chosen axis direction)
    meeting ``gamma`` with multiplicity two at two points symmetric in the axis.

    Restricting the circle to the conic in its principal frame gives a
    quadratic in the axial coordinate; the radius is fixed by requiring that
    quadratic to have a double root.
    """
    if which_axis not in (1, 2):
        raise ValueError("which_axis must be 1 or 2")
    center, lam, vec, k = principal_frame(gamma, tol)
    i = which_axis - 1
    l1, l2 = lam[i], lam[1 - i]
    e = Point(float(vec[0, i]), float(vec[1, i]))
    f = Point(float(vec[0, 1 - i]), float(vec[1, 1 - i]))
    scale = max(abs(l1), abs(l2))
    if abs(l1 - l2) <= 1e-12 * scale:
        # a circle: only the concentric limit is twice tangent
        r2 = -k / l2
        if abs(t) > tol.bound(math.sqrt(abs(r2))) or not r2 > 0:
            raise NoRealBitangent("a circle has no off-center twice-tangent circle")
        return Bitangent(Circle(center, math.sqrt(r2)), (center + f * math.sqrt(r2), center - f * math.sqrt(r2)))
    u0 = t * l2 / (l2 - l1)
    w0sq = -(k + l1 * u0 * u0) / l2
    rho2 = (u0 - t) ** 2 + w0sq
    if not (w0sq > 0 and rho2 > 0):
        raise NoRealBitangent(f"no real twice-tangent circle centered at axis parameter {t}")
    w0 = math.sqrt(w0sq)
    base = center + e * u0
    return Bitangent(Circle(center + e * t, math.sqrt(rho2)), (base + f * w0, base - f * w0))


def bitangent_radius_sq(gamma: ConicQ, t, which_axis: int, tol: Tol = DEFAULT_TOL):
    """Vectorized double-contact data along an axis of a non-circular conic.

    Returns ``(rho2, w0sq)``: the squared radius of the circle centered at axis
    parameter ``t`` with double contact, and the squared half-chord of the
    contact points.  ``w0sq < 0`` means the two contacts are complex conjugate.
    """
    _, lam, _, k = principal_frame(gamma, tol)
    i = which_axis - 1
    l1, l2 = lam[i], lam[1 - i]
    if abs(l1 - l2) <= 1e-12 * max(abs(l1), abs(l2)):
        raise NoRealBitangent("circular conic: the double-contact family is concentric")
    t = np.asarray(t, dtype=float)
    u0 = t * l2 / (l2 - l1)
    w0sq = -(k + l1 * u0 * u0) / l2
    return (u0 - t) ** 2 + w0sq, w0sq


def bitangent_circle_on_axis(gamma: ConicQ, t: float, which_axis: int, tol: Tol = DEFAULT_TOL) -> Circle:
    return bitangent(gamma, t, which_axis, tol).circle


@dataclass(frozen=True)
class CenterLocus:
    """Ellipse of centers of circles tangent to one circle internally and to
    another externally: ``|P - focus1| + |P - focus2| = length_sum``."""

    focus1: Point
    focus2: Point
    length_sum: float
    r1: float
    r2: float

    def point(self, theta: float) -> Point:
        c = (self.focus1 + self.focus2) / 2
        v = self.focus2 - self.focus1
        half_f = v.norm() / 2
        a = self.length_sum / 2
        b = math.sqrt(a * a - half_f * half_f)
        u = v.unit() if half_f > 0 else Point(1.0, 0.0)
        return c + u * (a * math.cos(theta)) + u.perp() * (b * math.sin(theta))

    def circle_at(self, p: Point) -> Circle:
        """The circle centered at a locus point, tangent to both circles."""
        return Circle(p, abs(self.r1 - p.distance(self.focus1)))


def tangent_center_locus(w: Circle, w1: Circle) -> CenterLocus:
    d = w.center.distance(w1.center)
    total = w.radius + w1.radius
    if not d < total:
        raise EmptyFamily("no circle touches one circle internally and the other externally")
    return CenterLocus(w.center, w1.center, total, w.radius, w1.radius)
