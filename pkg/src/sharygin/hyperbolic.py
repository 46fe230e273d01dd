"""Poincare disk machinery relative to an absolute circle.

Hyperbolic inflation is computed by moving to the right half-plane with the
Mobius map ``z -> (1 + z)/(1 - z)`` (applied in coordinates where the
absolute is the unit circle), applying the Lorentz cycle map there and
moving back.  In the half-plane a cycle ``(x, y, r)`` has signed hyperbolic
radius ``artanh(r / x)`` and the boost with speed ``v`` subtracts
``artanh(v)`` from it, so inflation by ``rho`` uses ``v = -tanh(rho)``.

Generalized cycles travel through the Mobius maps as 4-vectors
``(a, b, c, d)`` of ``a|z|^2 + b x + c y + d``, normalized so that
``b^2 + c^2 - 4ad = 1``; the sign carries the orientation.  Points are the
null vectors.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.optimize import brentq

from .cycle_space import Axis, Cycle, lorentz, lorentz_axis
from .errors import DegenerateImage, NotAHyperbolicCircle, OutsideDisk
from .geom_core import DEFAULT_TOL, Circle, GObject, Line, Point, Tol, polar
from .pencil import CircleEq, Pencil, pencil_member, sharygin_points

GCycle = Union[Cycle, Axis, Point]


@dataclass(frozen=True)
class Absolute:
    omega: Circle

    @property
    def center(self) -> Point:
        return self.omega.center

    @property
    def radius(self) -> float:
        return self.omega.radius

    def normalize(self, p: Point) -> Point:
        return (p - self.center) / self.radius


class HClass(enum.Enum):
    HCIRCLE = "hcircle"
    HOROCYCLE = "horocycle"
    EQUIDISTANT = "equidistant"
    GEODESIC = "geodesic"
    HPOINT = "hpoint"
    EXTERIOR = "exterior"


def classify(obj: GObject, ab: Absolute, tol: Tol = DEFAULT_TOL) -> HClass:
    R = ab.radius
    if isinstance(obj, Point):
        d = obj.distance(ab.center)
        return HClass.HPOINT if d < R - tol.bound(R, d) else HClass.EXTERIOR
    if isinstance(obj, Line):
        s = obj.distance(ab.center)
        if s <= tol.bound(R):
            return HClass.GEODESIC
        return HClass.EQUIDISTANT if s < R - tol.bound(R) else HClass.EXTERIOR
    d = obj.center.distance(ab.center)
    r = obj.radius
    eps = tol.bound(R, r, d)
    if abs(d * d - R * R - r * r) <= eps * max(R, r, d):
        return HClass.GEODESIC
    if d + r < R - eps:
        return HClass.HCIRCLE
    if abs(d + r - R) <= eps:
        return HClass.HOROCYCLE
    if d - r >= R - eps or r - d >= R - eps:
        return HClass.EXTERIOR
    return HClass.EQUIDISTANT


def hyp_distance(p: Point, q: Point, ab: Absolute) -> float:
    z, w = ab.normalize(p), ab.normalize(q)
    if z.norm() >= 1 or w.norm() >= 1:
        raise OutsideDisk("both points must lie strictly inside the absolute")
    zc, wc = complex(z.x, z.y), complex(w.x, w.y)
    return 2 * math.atanh(abs(zc - wc) / abs(1 - zc * wc.conjugate()))


def _diameter(c: Circle, ab: Absolute, tol: Tol):
    """Unit direction from the disk center and normalized signed ends of the
    circle's diameter along it."""
    v = c.center - ab.center
    d = v.norm()
    u = v / d if d > tol.bound(ab.radius) else Point(1.0, 0.0)
    lo, hi = (d - c.radius) / ab.radius, (d + c.radius) / ab.radius
    if not (-1 < lo and hi < 1):
        raise NotAHyperbolicCircle("circle is not strictly inside the absolute")
    return u, lo, hi


def hyp_radius(c: Circle, ab: Absolute, tol: Tol = DEFAULT_TOL) -> float:
    _, lo, hi = _diameter(c, ab, tol)
    return math.atanh(hi) - math.atanh(lo)


def poincare_center(c: Circle, ab: Absolute, tol: Tol = DEFAULT_TOL) -> Point:
    u, lo, hi = _diameter(c, ab, tol)
    m = math.tanh(0.5 * (math.atanh(lo) + math.atanh(hi)))
    return ab.center + u * (m * ab.radius)


# --- generalized cycles as 4-vectors -------------------------------------


def to_vector(obj: GCycle) -> np.ndarray:
    if isinstance(obj, Point) or (isinstance(obj, Cycle) and obj.r == 0):
        x, y = (obj.x, obj.y)
        return np.array([1.0, -2 * x, -2 * y, x * x + y * y])
    if isinstance(obj, Cycle):
        x, y, r = obj.x, obj.y, obj.r
        return np.array([1 / (2 * r), -x / r, -y / r, (x * x + y * y - r * r) / (2 * r)])
    n = obj.normal
    return np.array([0.0, n.x, n.y, -obj.offset])


def from_vector(v: np.ndarray) -> GCycle:
    a, b, c, d = (float(x) for x in v)
    big = max(abs(a), abs(b), abs(c), abs(d))
    disc = b * b + c * c - 4 * a * d
    if abs(disc) <= 1e-10 * big * big:
        if abs(a) <= 1e-13 * big:
            raise DegenerateImage("image is the point at infinity")
        return Point(-b / (2 * a), -c / (2 * a))
    if disc < 0:
        raise DegenerateImage("image is an imaginary circle")
    k = math.sqrt(disc)
    a, b, c, d = a / k, b / k, c / k, d / k
    if abs(a) <= 1e-13 * max(abs(b), abs(c), abs(d), 1.0):
        n = math.hypot(b, c)
        return Axis(c / n, -b / n, -d / n)
    r = 1 / (2 * a)
    return Cycle(-b * r, -c * r, r)


def _translate(v: np.ndarray, tx: float, ty: float) -> np.ndarray:
    a, b, c, d = v
    return np.array([a, b - 2 * a * tx, c - 2 * a * ty, a * (tx * tx + ty * ty) - b * tx - c * ty + d])


def _scale(v: np.ndarray, k: float) -> np.ndarray:
    a, b, c, d = v
    return np.array([a / k, b, c, d * k])


def _rotate(v: np.ndarray, phi: float) -> np.ndarray:
    a, b, c, d = v
    cs, sn = math.cos(phi), math.sin(phi)
    return np.array([a, cs * b - sn * c, sn * b + cs * c, d])


def _reciprocal(v: np.ndarray) -> np.ndarray:
    # z -> 1/z is inversion in the unit circle followed by conjugation
    a, b, c, d = v
    return np.array([d, b, -c, a])


def _negate(v: np.ndarray) -> np.ndarray:
    a, b, c, d = v
    return np.array([a, -b, -c, d])


@dataclass(frozen=True)
class HalfPlaneChart:
    """Disk-to-half-plane map with its pole at angle ``phi`` on the absolute."""

    ab: Absolute
    phi: float = 0.0

    def forward(self, v: np.ndarray) -> np.ndarray:
        o = self.ab.center
        v = _translate(v, -o.x, -o.y)
        v = _scale(v, 1 / self.ab.radius)
        v = _rotate(v, -self.phi)
        # (1 + z)/(1 - z) = -1 + 2/(1 - z)
        v = _translate(_negate(v), 1.0, 0.0)
        v = _reciprocal(v)
        return _translate(_scale(v, 2.0), -1.0, 0.0)

    def backward(self, v: np.ndarray) -> np.ndarray:
        # (w - 1)/(w + 1) = 1 - 2/(w + 1)
        v = _reciprocal(_translate(v, 1.0, 0.0))
        v = _translate(_negate(_scale(v, 2.0)), 1.0, 0.0)
        v = _rotate(v, self.phi)
        v = _scale(v, self.ab.radius)
        o = self.ab.center
        return _translate(v, o.x, o.y)

    def to_half_plane(self, obj: GCycle) -> GCycle:
        return from_vector(self.forward(to_vector(obj)))

    def from_half_plane(self, obj: GCycle) -> GCycle:
        return from_vector(self.backward(to_vector(obj)))


def _pole_clear(obj: GCycle, ab: Absolute, phi: float) -> bool:
    pole = ab.center + Point(math.cos(phi), math.sin(phi)) * ab.radius
    v = to_vector(obj)
    val = v[0] * pole.norm2() + v[1] * pole.x + v[2] * pole.y + v[3]
    return abs(val) > 1e-6 * float(np.abs(v).max()) * max(1.0, pole.norm2())


def _chart_for(obj: GCycle, ab: Absolute) -> HalfPlaneChart:
    for k in range(8):
        phi = k * math.pi / 4 + (0.1 if k else 0.0)
        if _pole_clear(obj, ab, phi):
            return HalfPlaneChart(ab, phi)
    return HalfPlaneChart(ab, 0.0)


def inflation_speed(rho: float) -> float:
    """Boost speed whose cycle map inflates hyperbolic radii by ``rho``."""
    return -math.tanh(rho)


def _boost(v: float, obj: GCycle) -> GCycle:
    if isinstance(obj, Axis):
        return lorentz_axis(v, obj)
    if isinstance(obj, Point):
        obj = Cycle(obj.x, obj.y, 0.0)
    return lorentz(v, obj)


def hyp_inflate(obj: GCycle, rho: float, ab: Absolute) -> GCycle:
    """Hyperbolic inflation by ``rho`` extended to the whole Euclidean plane."""
    if rho == 0:
        return obj
    chart = _chart_for(obj, ab)
    img = _boost(inflation_speed(rho), chart.to_half_plane(obj))
    return chart.from_half_plane(img)


def hyp_inflate_pencil(c: Cycle, rho: float, ab: Absolute) -> GCycle:
    """Inflation of a hyperbolic circle by searching its pencil with the absolute
    for the member of the required hyperbolic radius."""
    circ = c.circle()
    r_h = math.copysign(hyp_radius(circ, ab), c.r)
    target = r_h + rho
    center = poincare_center(circ, ab)
    if target == 0:
        return center
    if abs(circ.center.distance(ab.center)) <= 1e-14 * ab.radius:
        # concentric pencil: members are centered at the disk center
        return Cycle(center.x, center.y, math.copysign(ab.radius * math.tanh(abs(target) / 2), target))
    pen = Pencil.of(CircleEq.from_point(center), ab.omega)

    def h(t: float) -> float:
        m = pencil_member(pen, t)
        if not m.radius_sq > 0:
            return -abs(target)
        return hyp_radius(m.to_circle(), ab) - abs(target)

    hi = 0.5
    while h(hi) < 0:
        hi = 1 - (1 - hi) / 2
        if 1 - hi < 1e-15:
            raise DegenerateImage("target radius beyond floating-point reach")
    t = brentq(h, 0.0, hi, xtol=1e-16, rtol=4 * np.finfo(float).eps, maxiter=500)
    m = pencil_member(pen, t)
    mc = m.center
    return Cycle(mc.x, mc.y, math.copysign(math.sqrt(m.radius_sq), target))


def inside_sharygin_point(c: Circle, ab: Absolute) -> Point:
    lp = sharygin_points(c, ab.omega)
    return min((lp.s, lp.s_prime), key=lambda p: p.distance(ab.center))


def central_symmetry(p: Point, ab: Absolute) -> np.ndarray:
    """Projective point reflection of the Klein model about ``p``: the harmonic
    homology with center ``p`` and axis the polar of ``p`` in the absolute."""
    s = np.array([p.x, p.y, 1.0])
    if p.distance(ab.center) <= 1e-15 * ab.radius:
        o = ab.center
        return np.array([[-1.0, 0.0, 2 * o.x], [0.0, -1.0, 2 * o.y], [0.0, 0.0, 1.0]])
    l = polar(p, ab.omega).coeffs()
    return np.eye(3) - 2 * np.outer(s, l) / (l @ s)
