"""Residual checkers for the collinearity, bisector, ratio and angle properties
of limiting points, the involution on a line fixed by two pairs, and the
projective homologies centered at a limiting point.

Every checker returns a residual that vanishes when the property holds, so a
batch harness can compare it against a tolerance and a perturbed input can
serve as a negative control.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np

from .conics import ConicQ, conic_from_circle
from .errors import DegenerateImage, InconsistentPairs, LineMissesCircle
from .geom_core import DEFAULT_TOL, Circle, Line, Point, Tol, intersect, polar
from .pencil import sharygin_points


@dataclass(frozen=True, eq=False)
class ProjectiveMap:
    """A plane projectivity acting on homogeneous columns ``(x, y, w)``."""

    m: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.asarray(self.m, dtype=float)
        if m.shape != (3, 3):
            raise ValueError("projective map must be 3x3")
        if abs(np.linalg.det(m)) <= 1e-12 * np.abs(m).max() ** 3:
            raise DegenerateImage("singular projective map")
        object.__setattr__(self, "m", m)

    def __call__(self, p: Point) -> Point:
        x, y, w = self.m @ np.array([p.x, p.y, 1.0])
        if abs(w) <= 1e-14 * max(abs(x), abs(y), 1.0):
            raise DegenerateImage("image is at infinity")
        return Point(float(x / w), float(y / w))

    def transport(self, c: ConicQ) -> ConicQ:
        """Image conic ``M^-T C M^-1``."""
        inv = np.linalg.inv(self.m)
        return ConicQ(inv.T @ c.m @ inv)

    def compose(self, o: "ProjectiveMap") -> "ProjectiveMap":
        return ProjectiveMap(self.m @ o.m)

    def normalized(self) -> np.ndarray:
        """Matrix scaled to unit Frobenius norm with a positive largest entry."""
        m = self.m / np.linalg.norm(self.m)
        k = np.unravel_index(np.argmax(np.abs(m)), m.shape)
        return m if m[k] > 0 else -m


@dataclass(frozen=True)
class LineInvolution:
    """``t -> (alpha t + beta) / (gamma t - alpha)``; ``inf`` is a valid argument."""

    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        s = max(abs(self.alpha), abs(self.beta), abs(self.gamma))
        if s == 0 or abs(self.alpha**2 + self.beta * self.gamma) <= 1e-12 * s * s:
            raise InconsistentPairs("degenerate involution")

    def __call__(self, t: float) -> float:
        a, b, g = self.alpha, self.beta, self.gamma
        if math.isinf(t):
            return math.inf if g == 0 else a / g
        den = g * t - a
        if den == 0:
            return math.inf
        return (a * t + b) / den


def second_intersection(s: Point, p: Point, c: Circle, tol: Tol = DEFAULT_TOL) -> Point:
    """Second point where line ``sp`` meets ``c``; ``p`` itself at tangency."""
    d = p - s
    if d.norm() <= tol.bound(c.radius, s.norm()):
        raise LineMissesCircle("S and P coincide; the line is undefined")
    u = d.unit()
    # |s + x u - o|^2 = r^2 has roots x_p = |sp| and x' with x_p + x' = -2 u.(s - o)
    w = s - c.center
    disc = u.dot(w) ** 2 - (w.norm2() - c.radius**2)
    if disc < -tol.bound(c.radius**2, w.norm2()):
        raise LineMissesCircle("line SP misses the circle")
    return s + u * (-2 * u.dot(w) - d.norm())


def collinearity_residual(pts: Sequence[Point]) -> float:
    """Max distance of the points to their total-least-squares line."""
    x = np.array([[p.x, p.y] for p in pts])
    x = x - x.mean(axis=0)
    _, _, vt = np.linalg.svd(x)
    return float(np.abs(x @ vt[-1]).max())


@dataclass(frozen=True)
class Property1Result:
    images: Tuple[Point, Point, Point, Point]
    collinearity_residual: float


def property1_check(s: Point, w1: Circle, w2: Circle, a: Point, b: Point, c: Point, d: Point) -> Property1Result:
    """Second intersections of SA, SB with ``w1`` and SC, SD with ``w2``.

    The residual is scale-normalized by the larger radius.
    """
    imgs = (
        second_intersection(s, a, w1),
        second_intersection(s, b, w1),
        second_intersection(s, c, w2),
        second_intersection(s, d, w2),
    )
    return Property1Result(imgs, collinearity_residual(imgs) / max(w1.radius, w2.radius))


def property2_check(s: Point, w2: Circle, a: Point, b: Point) -> float:
    """``|SA/XA - SB/XB|`` with X the touch point of AB on ``w2``."""
    x = Line.through(a, b).foot(w2.center)
    return abs(s.distance(a) / x.distance(a) - s.distance(b) / x.distance(b))


def property3_ratio(s: Point, a: Point, b: Point) -> float:
    if a == b:
        raise ValueError("A and B must differ")
    return (s.distance(a) + s.distance(b)) / a.distance(b)


def tangent_chord_ratio(s: Point, a: Point, b: Point, x: Point) -> float:
    """``SA/XA`` for a chord AB touching the second circle at X.

    Equals :func:`property3_ratio` when X lies between A and B; when the
    touch point is on the extension of the chord it equals ``|SA - SB|/AB``.
    """
    return s.distance(a) / x.distance(a)


def _wrap_half_turn(x: float) -> float:
    return (x + math.pi / 2) % math.pi - math.pi / 2


def _line_angle(s: Point, p: Point, q: Point) -> float:
    """Directed angle from line sp to line sq."""
    u, v = p - s, q - s
    return math.atan2(u.cross(v), u.dot(v))


def property4_check(s: Point, a: Point, b: Point, c: Point, d: Point) -> float:
    """Gap between the directed line angles (SA, SC) and (SD, SB), modulo pi.

    The directed form holds for every position of S and either labelling of
    C and D.  Unsigned ray angles can differ by a supplement when the
    circles are disjoint and the line meets one of them on an extension.
    """
    return abs(_wrap_half_turn(_line_angle(s, a, c) - _line_angle(s, d, b)))


def property4_unsigned(s: Point, a: Point, b: Point, c: Point, d: Point) -> float:
    """``|angle ASC - angle BSD|`` with ray angles in [0, pi]."""

    def ang(p, q):
        u, v = p - s, q - s
        return math.atan2(abs(u.cross(v)), u.dot(v))

    return abs(ang(a, c) - ang(b, d))


def _homog(t: float) -> Tuple[float, float]:
    return (1.0, 0.0) if math.isinf(t) else (float(t), 1.0)


def involution_from_pairs(p1: Tuple[float, float], p2: Tuple[float, float]) -> LineInvolution:
    """The involution swapping both pairs; ``math.inf`` is the point at infinity.

    Each pair ``(p, q)`` gives one homogeneous linear condition on
    ``(alpha, beta, gamma)``; the solution is the cross product of the two rows.
    """
    rows = []
    for p, q in (p1, p2):
        (x1, x2), (y1, y2) = _homog(p), _homog(q)
        rows.append(np.array([y2 * x1 + y1 * x2, y2 * x2, -y1 * x1]))
    sol = np.cross(rows[0], rows[1])
    if np.abs(sol).max() <= 1e-12 * max(np.abs(rows[0]).max(), np.abs(rows[1]).max()) ** 2:
        raise InconsistentPairs("the two pairs coincide")
    sol = sol / np.abs(sol).max()
    return LineInvolution(float(sol[0]), float(sol[1]), float(sol[2]))


def homology(center: Point, axis: Line, k: float) -> ProjectiveMap:
    """Homology ``I + (k - 1) s l^T / (l . s)``: fixes ``center`` and ``axis`` pointwise."""
    s = np.array([center.x, center.y, 1.0])
    l = axis.coeffs()
    ls = float(l @ s)
    if abs(ls) <= 1e-14 * np.abs(s).max():
        raise DegenerateImage("center lies on the axis")
    return ProjectiveMap(np.eye(3) + (k - 1) * np.outer(s, l) / ls)


def _homology_ratio(s: Point, l: Line, a: Point, c: Point) -> float:
    """Characteristic ``k`` of the homology (center s, axis l) sending a to c."""
    sv = np.array([s.x, s.y, 1.0])
    av = np.array([a.x, a.y, 1.0])
    cv = np.array([c.x, c.y, 1.0])
    (alpha, beta), *_ = np.linalg.lstsq(np.column_stack([av, sv]), cv, rcond=None)
    return 1 + (beta / alpha) * float(l.coeffs() @ sv) / float(l.coeffs() @ av)


def sharygin_homologies(w1: Circle, w2: Circle, which: int = 0) -> Tuple[ProjectiveMap, ProjectiveMap]:
    """The two homologies with center a limiting point S (``which`` selects it),
    axis the polar of S, matching the point of ``w1`` on the center line
    with each of the two points of ``w2`` on the same line through S.

    For concentric circles S is the center, the axis is the line at infinity
    and the maps are the homotheties of ratio +-r2/r1.
    """
    lp = sharygin_points(w1, w2)
    s = (lp.s, lp.s_prime)[which]
    if lp.s == lp.s_prime:
        k = w2.radius / w1.radius
        return (
            ProjectiveMap(_homothety(s, k)),
            ProjectiveMap(_homothety(s, -k)),
        )
    l = polar(s, w1)
    u = (w2.center - w1.center).unit()
    a = w1.center + u.perp() * w1.radius if s.distance(w1.center) < 1e-12 else w1.center + u * w1.radius
    images = sorted(intersect(w2, Line.through(s, a)), key=lambda p: (p - s).dot(a - s), reverse=True)
    if len(images) < 2:
        raise DegenerateImage("matching line is tangent to the second circle")
    return tuple(homology(s, l, _homology_ratio(s, l, a, c)) for c in images)


def _homothety(center: Point, k: float) -> np.ndarray:
    return np.array([[k, 0.0, (1 - k) * center.x], [0.0, k, (1 - k) * center.y], [0.0, 0.0, 1.0]])


def transport_residual(m: ProjectiveMap, w1: Circle, w2: Circle) -> float:
    """``||M^-T C1 M^-1 - lambda C2|| / ||lambda C2||`` for the best ``lambda``."""
    img = m.transport(conic_from_circle(w1)).m
    c2 = conic_from_circle(w2).m
    lam = float(np.sum(img * c2) / np.sum(c2 * c2))
    return float(np.linalg.norm(img - lam * c2) / np.linalg.norm(lam * c2))


def tangent_chords(w1: Circle, w2: Circle, thetas: Sequence[float]) -> List[Tuple[Point, Point, Point]]:
    """Chords of ``w1`` tangent to ``w2`` at the points of angle ``thetas``: (A, B, X)."""
    out = []
    for th in thetas:
        x = w2.point_at(th)
        pts = intersect(w1, Line.point_normal(x, Point(math.cos(th), math.sin(th))))
        if len(pts) == 2:
            out.append((pts[0], pts[1], x))
    return out


def angular_span(s: Point, pts: Sequence[Point]) -> float:
    """Largest angle between lines from ``s`` to two of the points."""
    best = 0.0
    for i, p in enumerate(pts):
        for q in pts[i + 1 :]:
            best = max(best, abs(_wrap_half_turn(_line_angle(s, p, q))))
    return best


@dataclass(frozen=True)
class SharyginConfig:
    """Two non-intersecting circles, a chosen limiting point and sample lines.

    ``secants`` are ``(A, B, C, D)`` with A, B on ``w1`` and C, D on ``w2``
    on one line; ``chords`` are ``(A, B, X)`` with AB a chord line of ``w1``
    touching ``w2`` at X.
    """

    w1: Circle
    w2: Circle
    s: Point
    secants: Tuple[Tuple[Point, Point, Point, Point], ...]
    chords: Tuple[Tuple[Point, Point, Point], ...]

    @property
    def nested(self) -> bool:
        return self.w1.center.distance(self.w2.center) < abs(self.w1.radius - self.w2.radius)

    @property
    def scale(self) -> float:
        """Extent of the figure: bounds the distance between any two points
        of the circles and the limiting point."""
        w1, w2 = self.w1, self.w2
        return max(
            2 * w1.radius,
            2 * w2.radius,
            w1.center.distance(w2.center) + w1.radius + w2.radius,
            self.s.distance(w1.center) + w1.radius,
            self.s.distance(w2.center) + w2.radius,
        )


def gen_configuration(rng: np.random.Generator, n_lines: int = 8) -> SharyginConfig:
    """A random well-conditioned configuration.

    Nested pairs keep the center offset between 0.45 and 0.85 of the radius
    gap and use the limiting point inside the inner circle (the outer one
    recedes to infinity as the pair becomes concentric, where every point
    far away nearly satisfies the properties).  Disjoint pairs keep the center
    distance between 1.2 and 2 times the radius sum and use either point.
    Secants pass through stratified interior points of ``w1``; tangent chords
    are spread evenly over the feasible touch angles.
    """
    nested = bool(rng.random() < 0.5)
    r1 = rng.uniform(0.5, 2.0)
    w1 = Circle(Point(*rng.uniform(-1, 1, 2)), r1)
    if nested:
        r2 = r1 * rng.uniform(0.2, 0.7)
        d = (r1 - r2) * rng.uniform(0.45, 0.85)
    else:
        r2 = r1 * rng.uniform(0.5, 2.0)
        d = (r1 + r2) * rng.uniform(1.2, 2.0)
    th = rng.uniform(0, 2 * math.pi)
    w2 = Circle(w1.center + Point(math.cos(th), math.sin(th)) * d, r2)
    lp = sharygin_points(w1, w2)
    if nested:
        s = min((lp.s, lp.s_prime), key=lambda p: p.distance(w2.center))
    else:
        s = (lp.s, lp.s_prime)[int(rng.integers(2))]

    secants = []
    while len(secants) < n_lines:
        a = (len(secants) + rng.uniform(0.1, 0.9)) * 2 * math.pi / n_lines
        q = w1.center + Point(math.cos(a), math.sin(a)) * (rng.uniform(0.2, 0.8) * r1)
        p = w2.center + Point(*rng.uniform(-0.5, 0.5, 2)) * r2
        if q.distance(p) < 0.05 * r1:
            continue
        line = Line.through(p, q)
        ab, cd = intersect(w1, line), intersect(w2, line)
        if len(ab) == 2 and len(cd) == 2:
            secants.append((ab[0], ab[1], cd[0], cd[1]))
    thetas = np.linspace(0, 2 * math.pi, 96, endpoint=False) + rng.uniform(0, 2 * math.pi / 96)
    feasible = tangent_chords(w1, w2, thetas)
    idx = np.linspace(0, len(feasible) - 1, n_lines).round().astype(int)
    chords = [feasible[i] for i in idx]
    return SharyginConfig(w1, w2, s, tuple(secants), tuple(chords))


@dataclass(frozen=True)
class PropertyResiduals:
    collinearity: float
    bisector: float
    ratio_spread: float
    angle: float

    def as_dict(self) -> dict:
        return {
            "collinearity": self.collinearity,
            "bisector": self.bisector,
            "ratio_spread": self.ratio_spread,
            "angle": self.angle,
        }


def property_residuals(cfg: SharyginConfig, s: Point = None) -> PropertyResiduals:
    """Worst residual of each property over the configuration's sample lines.

    The angle residual is divided by the angular width of the secant seen
    from S, so a far-away S is not rewarded for its small angles.
    """
    s = cfg.s if s is None else s
    p1 = max(property1_check(s, cfg.w1, cfg.w2, *sec).collinearity_residual for sec in cfg.secants)
    p2 = max(property2_check(s, cfg.w2, a, b) for a, b, _ in cfg.chords)
    ratios = [tangent_chord_ratio(s, a, b, x) for a, b, x in cfg.chords]
    p4 = max(property4_check(s, *sec) / angular_span(s, sec) for sec in cfg.secants)
    return PropertyResiduals(p1, p2, max(ratios) - min(ratios), p4)


def displaced(cfg: SharyginConfig, rng: np.random.Generator, frac: float = 0.01) -> Point:
    """The limiting point moved by ``frac`` of the configuration scale in a random direction."""
    a = rng.uniform(0, 2 * math.pi)
    return cfg.s + Point(math.cos(a), math.sin(a)) * (frac * cfg.scale)
