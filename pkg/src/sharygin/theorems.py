"""Seeded instance generators and residual checkers for the tangency theorems
about four concyclic points and for the two olympiad problems.

Every checker returns a :class:`Report` whose residuals are divided by the
circumradius of the relevant circle, so tolerances are dimensionless.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.optimize import brentq, minimize, minimize_scalar, root

from .conics import (
    ConicQ,
    bitangent,
    bitangent_radius_sq,
    conic_axes,
    conic_center,
    conic_from_circle,
    line_pair,
    principal_frame,
    tangent_center_locus,
)
from .cycle_space import Cycle
from .errors import (
    ConicCenterOutside,
    DegenerateImage,
    GammaNotAdmissible,
    GenerationExhausted,
    GeometryError,
    NoRealBitangent,
    SearchDiverged,
)
from .geom_core import (
    DEFAULT_TOL,
    Circle,
    Line,
    Point,
    Tangency,
    Tol,
    angle_bisector_foot,
    arc_midpoint,
    circumcircle,
    intersect,
    invert,
    line_deviation,
    line_intersection,
    polar,
    tangency,
    tangency_defect,
    tangent_points_from,
)
from .pencil import CircleEq, Pencil, member_tangent_to_line, pencil_member, sharygin_points
from .sharygin_props import collinearity_residual, property3_ratio, second_intersection

SceneObject = Union[Point, Line, Circle, Cycle, ConicQ]

WEAK_TOL = 1e-7
SIMPLIFIED_TOL = 1e-7
MAIN_TOL = 1e-6
OLYMPIAD_TOL = 1e-7


@dataclass
class Scenario:
    name: str
    seed: int
    objects: Dict[str, SceneObject]
    checks: List[str] = field(default_factory=list)
    tol: Dict[str, float] = field(default_factory=dict)

    def __getitem__(self, key: str) -> SceneObject:
        return self.objects[key]


@dataclass
class Report:
    name: str
    residuals: Dict[str, float]
    tolerances: Dict[str, float]
    passed: bool
    wall_time: float = 0.0
    info: Dict[str, str] = field(default_factory=dict)

    @classmethod
    def build(cls, name, residuals, tolerances, t0, info=None) -> "Report":
        # NaN compares false, so a NaN residual fails
        residuals = {k: float(v) for k, v in residuals.items()}
        ok = all(residuals[k] <= tolerances[k] for k in tolerances)
        return cls(name, residuals, dict(tolerances), ok, time.perf_counter() - t0, dict(info or {}))

    def max_residual(self) -> float:
        return max(self.residuals.values()) if self.residuals else 0.0


# --- construction helpers ----------------------------------------------------


def circle_through_2pts_tangent_to_circle(a: Point, b: Point, k: Circle) -> List[Circle]:
    """Circles through ``a`` and ``b`` tangent to ``k`` (zero to two of them).

    Inversion centered at ``a`` sends the wanted circles to lines through the
    image of ``b`` tangent to the image of ``k``.
    """
    if abs(k.power(a)) <= 1e-12 * max(k.radius, a.distance(k.center)) ** 2:
        return []
    bi = invert(a, 1.0, b)
    ki = invert(a, 1.0, k)
    out = []
    for x in tangent_points_from(bi, ki):
        if x.distance(bi) <= 1e-12 * max(1.0, bi.norm()):
            # b lies on k: the tangent line at b
            line = Line.point_normal(bi, bi - ki.center)
        else:
            line = Line.through(bi, x)
        if line.distance(a) <= 1e-12 * max(1.0, a.norm()):
            continue
        out.append(invert(a, 1.0, line))
    return out


@dataclass(frozen=True)
class Similarity:
    """``p -> k R(phi) p + t``."""

    k: float
    phi: float
    t: Point

    def point(self, p: Point) -> Point:
        c, s = math.cos(self.phi), math.sin(self.phi)
        return Point(self.k * (c * p.x - s * p.y) + self.t.x, self.k * (s * p.x + c * p.y) + self.t.y)

    def circle(self, c: Circle) -> Circle:
        return Circle(self.point(c.center), self.k * c.radius)


def _radii_concentric(o: Point, c: Circle):
    """Radii of circles centered at ``o`` touching ``c`` externally / internally."""
    d = o.distance(c.center)
    ext = [d - c.radius] if d - c.radius > 0 else []
    internal = [x for x in (d + c.radius, c.radius - d) if x > 0]
    return ext, internal


def _mixed_types(k: Circle, w: Circle, w1: Circle, tol: Tol) -> bool:
    ta, tb = tangency(k, w, tol), tangency(k, w1, tol)
    return {ta, tb} == {Tangency.INTERNAL, Tangency.EXTERNAL}


def _same_types(k: Circle, w: Circle, w1: Circle, tol: Tol) -> bool:
    ta, tb = tangency(k, w, tol), tangency(k, w1, tol)
    return ta == tb and ta in (Tangency.INTERNAL, Tangency.EXTERNAL)


def gen_weak_mt(seed: int, concentric: bool = False, types: Optional[str] = None, max_tries: int = 500) -> Scenario:
    """A four-point configuration for which a circle ``kappa`` touches AB, CD,
    omega and omega1.

    ``types="mixed"`` (the default) makes ``kappa`` touch one of the two
    circles internally and the other externally; ``types="same"`` asks for
    equal tangency types.  Built in a unit frame (circle ABCD the unit
    circle) and moved by a random similarity.  ``concentric`` centers
    ``kappa`` on the circle ABCD; every circle through a chord touching such
    a ``kappa`` contains it, so the concentric family only has equal types.
    """
    if types is None:
        types = "same" if concentric else "mixed"
    if types not in ("mixed", "same"):
        raise ValueError("types must be 'mixed' or 'same'")
    if concentric and types == "mixed":
        raise GenerationExhausted("a concentric kappa touches both circles internally")
    accept = _mixed_types if types == "mixed" else _same_types
    rng = np.random.default_rng(seed)
    unit = Circle(Point(0.0, 0.0), 1.0)
    loose = Tol(1e-7, 1e-7)
    for _ in range(max_tries):
        if concentric:
            kc = Point(0.0, 0.0)
        else:
            kc = Point(*rng.uniform(-1.5, 1.5, 2))
        kr = rng.uniform(0.1, 0.8)
        kappa = Circle(kc, kr)
        t1, t2 = rng.uniform(0, 2 * math.pi, 2)
        n1, n2 = Point(math.cos(t1), math.sin(t1)), Point(math.cos(t2), math.sin(t2))
        if abs(n1.cross(n2)) < 0.05:
            continue
        l1 = Line.point_normal(kappa.point_at(t1), n1)
        l2 = Line.point_normal(kappa.point_at(t2), n2)
        ab, cd = intersect(unit, l1), intersect(unit, l2)
        if len(ab) < 2 or len(cd) < 2:
            continue
        if min(p.distance(q) for p in ab for q in cd) < 0.05 or min(ab[0].distance(ab[1]), cd[0].distance(cd[1])) < 0.05:
            continue
        if any(abs(kappa.power(p)) < 1e-3 for p in ab + cd):
            continue
        pairs = []
        for w in circle_through_2pts_tangent_to_circle(ab[0], ab[1], kappa):
            for w1 in circle_through_2pts_tangent_to_circle(cd[0], cd[1], kappa):
                if max(w.radius, w1.radius) > 30 or not accept(kappa, w, w1, loose):
                    continue
                meet = intersect(w, w1)
                if len(meet) == 2 and meet[0].distance(meet[1]) > 0.01:
                    pairs.append((w, w1))
        if not pairs:
            continue
        w, w1 = pairs[int(rng.integers(len(pairs)))]
        sim = Similarity(rng.uniform(0.5, 2.0), rng.uniform(0, 2 * math.pi), Point(*rng.uniform(-1, 1, 2)))
        objs: Dict[str, SceneObject] = {
            "A": sim.point(ab[0]),
            "B": sim.point(ab[1]),
            "C": sim.point(cd[0]),
            "D": sim.point(cd[1]),
            "ABCD": sim.circle(unit),
            "omega": sim.circle(w),
            "omega1": sim.circle(w1),
            "kappa": sim.circle(kappa),
        }
        tag = ("concentric-" if concentric else "") + ("same-" if types == "same" and not concentric else "")
        name = f"weak-mt-{tag}{seed}"
        return Scenario(name, seed, objs, ["weak-mt"])
    raise GenerationExhausted(f"no valid instance after {max_tries} tries (seed {seed})")


def _lines(s: Scenario) -> Tuple[Line, Line]:
    return Line.through(s["A"], s["B"]), Line.through(s["C"], s["D"])


def _meet_points(s: Scenario) -> List[Point]:
    pts = intersect(s["omega"], s["omega1"])
    if len(pts) != 2:
        raise DegenerateImage("omega and omega1 must meet in two points")
    return pts


# --- weak theorem --------------------------------------------------------------


def residual_b(abcd: Circle, w: Circle, w1: Circle, same_types: bool = False) -> float:
    """Smallest gap between radii of circles concentric with ``abcd`` that
    touch ``w`` and ``w1`` with opposite tangency types (equal types when
    ``same_types``)."""
    o = abcd.center
    e0, i0 = _radii_concentric(o, w)
    e1, i1 = _radii_concentric(o, w1)
    if same_types:
        cand = [abs(x - y) for x in e0 for y in e1] + [abs(x - y) for x in i0 for y in i1]
    else:
        cand = [abs(x - y) for x in e0 for y in i1] + [abs(x - y) for x in i0 for y in e1]
    return min(cand) if cand else math.inf


def residual_c(abcd: Circle, s: Point, ab: Line, cd: Line) -> float:
    """Tangency defect against CD of the members of pencil(S, ABCD) tangent to AB."""
    members = member_tangent_to_line(Pencil.of(s, abcd), ab)
    defects = [abs(cd.distance(m.center) - math.sqrt(m.radius_sq)) for m in members]
    return min(defects) if defects else math.inf


def scan_tangent_members(abcd: Circle, s: Point, ab: Line, samples: int = 10_000) -> List[Circle]:
    """Brute-force search of pencil(S, ABCD) for members tangent to AB.

    Members are ``cos(phi) e_S + sin(phi) e_ABCD`` (normalized generators);
    the signed defect ``dist(center, AB) - radius`` is sampled on a uniform
    grid plus geometric grids around the two point members and the line
    member, where tangent members may be tiny or huge.  Each sign change is
    refined with Brent's method.
    """
    e1 = CircleEq.from_point(s).vector()
    e2 = CircleEq.from_circle(abcd).vector()
    e1, e2 = e1 / np.linalg.norm(e1), e2 / np.linalg.norm(e2)

    def member(phi):
        return CircleEq.from_vector(math.cos(phi) * e1 + math.sin(phi) * e2)

    def h(phi):
        m = member(phi)
        r2 = m.radius_sq if m.a != 0 else math.nan
        if not r2 > 0:
            return math.nan
        return ab.distance(m.center) - math.sqrt(r2)

    def bil(u, w):
        return u[1] * w[1] + u[2] * w[2] - 2 * (u[0] * w[3] + u[3] * w[0])

    # point members: bil(v, v) = 0 for v = e1 + t e2 (e1 is already one)
    phi_point = math.atan(-2 * bil(e1, e2) / bil(e2, e2)) % math.pi
    phi_line = math.atan2(-e1[0], e2[0]) % math.pi
    offsets = np.logspace(-14, -1, 300)
    special = [0.0, math.pi, phi_point, phi_line]
    phis = np.concatenate([np.linspace(0.0, math.pi, samples + 1)] + [np.concatenate([c - offsets, c + offsets]) for c in special])
    phis = np.unique(np.clip(phis, 0.0, math.pi))
    v = np.outer(np.cos(phis), e1) + np.outer(np.sin(phis), e2)
    a = v[:, 0]
    with np.errstate(divide="ignore", invalid="ignore"):
        cx, cy = -v[:, 1] / (2 * a), -v[:, 2] / (2 * a)
        r2 = (v[:, 1] ** 2 + v[:, 2] ** 2 - 4 * a * v[:, 3]) / (4 * a * a)
        vals = np.abs(ab.a * cx + ab.b * cy + ab.c) - np.sqrt(r2)
    vals[(a == 0) | ~(r2 > 0)] = np.nan
    out = []
    for i in np.flatnonzero(vals[:-1] * vals[1:] <= 0):
        phi = brentq(h, phis[i], phis[i + 1], xtol=1e-16, rtol=1e-15, maxiter=200)
        m = member(phi)
        c = Circle(m.center, math.sqrt(m.radius_sq))
        # a sign flip across the line member is not a root
        if abs(h(phi)) <= 1e-6 * max(c.radius, abcd.radius):
            out.append(c)
    return out


def check_weak_mt(s: Scenario) -> Report:
    t0 = time.perf_counter()
    abcd, w, w1 = s["ABCD"], s["omega"], s["omega1"]
    scale = abcd.radius
    ab, cd = _lines(s)
    rb = residual_b(abcd, w, w1) / scale
    info = {}
    try:
        rc = max(residual_c(abcd, p, ab, cd) for p in _meet_points(s)) / scale
    except DegenerateImage:
        rc = math.inf
        info["note"] = "omega and omega1 do not meet in two points"
    res = {"residual_b": rb, "residual_c": rc}
    if "kappa" in s.objects:
        k = s["kappa"]
        res["residual_a"] = max(
            tangency_defect(k, ab),
            tangency_defect(k, cd),
            tangency_defect(k, w),
            tangency_defect(k, w1),
        ) / scale
        info["kappa_types"] = f"{tangency(k, w, Tol(1e-7, 1e-7)).value},{tangency(k, w1, Tol(1e-7, 1e-7)).value}"
    # diagnostic: b) with equal tangency types, which is what a same-type kappa yields
    info["residual_b_same_types"] = f"{residual_b(abcd, w, w1, same_types=True) / scale:.3e}"
    tols = {k: WEAK_TOL for k in res}
    return Report.build(s.name, res, tols, t0, info)


@dataclass(frozen=True)
class WeakMTTrace:
    S: Point
    S1: Point
    E: Point
    T1: Point
    T2: Point
    W1: Point
    W2: Point
    V1: Point
    V2: Point
    P: Point
    Q: Point
    Y: Point
    identities: Dict[str, float]


def _foot(s: Point, a: Point, b: Point, inside: bool) -> Point:
    if not inside:
        return angle_bisector_foot(s, a, b)
    # external bisector
    sa, sb = s.distance(a), s.distance(b)
    return (a * sb - b * sa) / (sb - sa)


def weak_mt_trace(s: Scenario) -> WeakMTTrace:
    """Named points of the synthetic argument and its intermediate identities.

    S is the meeting point of omega, omega1 with the larger power with respect
    to circle ABCD.  When S lies outside ABCD the bisector feet are internal
    and W1, W2 are the arc midpoints away from S; when S lies inside, the
    same identities hold with external bisector feet, the arc midpoints on
    S's side and the ratio ``|SA - SB|/AB``.
    """
    abcd, w, w1, k = s["ABCD"], s["omega"], s["omega1"], s["kappa"]
    a, b, c, d = s["A"], s["B"], s["C"], s["D"]
    ab, cd = _lines(s)
    pts = _meet_points(s)
    S, S1 = sorted(pts, key=abcd.power, reverse=True)
    inside = abcd.power(S) <= 0
    E = line_intersection(ab, cd)
    if E is None:
        raise DegenerateImage("AB is parallel to CD")
    T1, T2 = _foot(S, a, b, inside), _foot(S, c, d, inside)
    W1, W2 = arc_midpoint(w, a, b, S), arc_midpoint(w1, c, d, S)
    if inside:
        W1, W2 = w.center * 2 - W1, w1.center * 2 - W2
    V1, V2 = ab.foot(k.center), cd.foot(k.center)
    P = w1.center + (k.center - w1.center).unit() * w1.radius
    if abs(P.distance(k.center) - k.radius) > 1e-6 * abcd.radius:
        P = w1.center - (k.center - w1.center).unit() * w1.radius
    Q = second_intersection(V1, W1, w)
    Y = line_intersection(Line.through(V1, W1), Line.through(V2, W2))
    if Y is None:
        raise DegenerateImage("V1W1 is parallel to V2W2")
    ratio = (abs(S.distance(a) - S.distance(b)) if inside else S.distance(a) + S.distance(b)) / a.distance(b)
    sc = abcd.radius
    ids = {
        "ratio_identity": abs(ratio - math.sqrt(S.distance(W1) / T1.distance(W1))),
        "t1t2_parallel_w1w2": abs((T2 - T1).unit().cross((W2 - W1).unit())),
        "s_e_y_collinear": collinearity_residual([S, E, Y]) / sc,
        "w1_w2_p_q_concyclic": _concyclic_residual(W1, W2, P, Q) / sc,
        "p_on_v2w2": Line.through(V2, W2).distance(P) / sc,
    }
    return WeakMTTrace(S, S1, E, T1, T2, W1, W2, V1, V2, P, Q, Y, ids)


def _concyclic_residual(p1: Point, p2: Point, p3: Point, p4: Point) -> float:
    c = circumcircle(p1, p2, p3)
    return abs(c.center.distance(p4) - c.radius)


def perturb_omega1(s: Scenario, factor: float = 1.05) -> Scenario:
    """Negative control: scale the radius of omega1 about its center."""
    objs = dict(s.objects)
    w1 = objs["omega1"]
    objs["omega1"] = Circle(w1.center, w1.radius * factor)
    objs.pop("kappa", None)
    return Scenario(s.name + "-perturbed", s.seed, objs, list(s.checks), dict(s.tol))


def shift_omega1(s: Scenario, frac: float = 0.05) -> Scenario:
    """Negative control keeping omega1 through C and D: slide its center
    along the perpendicular bisector of CD by ``frac`` of its radius."""
    objs = dict(s.objects)
    c, d, w1 = objs["C"], objs["D"], objs["omega1"]
    n = (d - c).unit().perp()
    center = w1.center + n * (frac * w1.radius)
    objs["omega1"] = Circle(center, center.distance(c))
    objs.pop("kappa", None)
    return Scenario(s.name + "-shifted", s.seed, objs, list(s.checks), dict(s.tol))


# --- simplified theorem --------------------------------------------------------


def _admissible(gamma: Circle, w: Circle, w1: Circle, scale: float) -> bool:
    tol = Tol(1e-9 * scale, 1e-9)
    return _mixed_types(gamma, w, w1, tol)


def admissible_gammas(s: Scenario, n: int, rng: np.random.Generator) -> List[Circle]:
    """Circles touching omega and omega1 with opposite tangency types, with
    centers sampled on the ellipse of such centers."""
    w, w1 = s["omega"], s["omega1"]
    scale = s["ABCD"].radius
    locus = tangent_center_locus(w, w1)
    out = []
    for _ in range(50 * n):
        if len(out) == n:
            break
        p = locus.point(rng.uniform(0, 2 * math.pi))
        g = locus.circle_at(p)
        if g.radius < 1e-3 * scale or g.radius > 50 * scale:
            continue
        if _admissible(g, w, w1, scale):
            out.append(g)
    if len(out) < n:
        raise GenerationExhausted("could not sample enough admissible circles")
    return out


def check_simplified_mt(s: Scenario, gamma: Circle) -> Report:
    t0 = time.perf_counter()
    abcd, w, w1 = s["ABCD"], s["omega"], s["omega1"]
    scale = abcd.radius
    if not _admissible(gamma, w, w1, scale):
        raise GammaNotAdmissible("Gamma must touch omega and omega1, one internally and one externally")
    ab, cd = _lines(s)
    if gamma.close_to(abcd):
        raise GammaNotAdmissible("Gamma coincides with circle ABCD; the pencil is undefined")
    members = member_tangent_to_line(Pencil.of(abcd, gamma), ab)
    defects = [abs(cd.distance(m.center) - math.sqrt(m.radius_sq)) for m in members]
    res = {"cd_defect": (min(defects) if defects else math.inf) / scale}
    info = {"members_tangent_to_ab": str(len(members))}
    return Report.build(s.name + "-simplified", res, {"cd_defect": SIMPLIFIED_TOL}, t0, info)


# --- main theorem --------------------------------------------------------------


def conic_member(s: Scenario, t: float) -> ConicQ:
    """``circle(ABCD) + t * AB.CD`` with the circle monic and unit line normals."""
    ab, cd = _lines(s)
    return ConicQ(conic_from_circle(s["ABCD"]).m + t * line_pair(ab, cd).m)


def _inside(p: Point, c: Circle) -> bool:
    return p.distance(c.center) < c.radius


def admissible_conic_parameters(s: Scenario, n: int, rng: np.random.Generator) -> List[float]:
    """Parameters of non-circular members whose center lies inside omega and omega1."""
    w, w1 = s["omega"], s["omega1"]
    out = []
    for _ in range(200 * n):
        if len(out) == n:
            break
        t = math.tan(rng.uniform(-0.49 * math.pi, 0.49 * math.pi))
        if abs(t) < 1e-3:
            continue
        try:
            c = conic_center(conic_member(s, t))
        except GeometryError:
            continue
        if _inside(c, w) and _inside(c, w1):
            out.append(t)
    if len(out) < n:
        raise GenerationExhausted("no conic member with its center inside both circles")
    return out


def _bisector_angle_residual(axes: Sequence[Line], ab: Line, cd: Line) -> float:
    u, v = ab.direction, cd.direction
    bis = [(u + v).unit(), (u - v).unit()]
    worst = 0.0
    for ax in axes:
        e = ax.direction
        worst = max(worst, min(abs(math.asin(max(-1.0, min(1.0, e.cross(b))))) for b in bis))
    return worst


_TYPES = (Tangency.EXTERNAL, Tangency.INTERNAL)


def _tangency_gap(c: Circle, w: Circle, kind: Tangency) -> float:
    d = c.center.distance(w.center)
    if kind is Tangency.EXTERNAL:
        return d - (c.radius + w.radius)
    return d - abs(c.radius - w.radius)


def _gaps(px, py, rho, w: Circle):
    d = np.hypot(px - w.center.x, py - w.center.y)
    return {Tangency.EXTERNAL: d - (rho + w.radius), Tangency.INTERNAL: d - np.abs(rho - w.radius)}


def _family_roots(ts, px, py, rho, scalar, w: Circle) -> List[Tuple[float, Tangency]]:
    """Roots of the tangency gaps with ``w`` along a sampled one-parameter family.

    ``rho`` is NaN where the family has no member; ``scalar(t)`` rebuilds a
    member for refinement.
    """
    out = []
    for kind, g in _gaps(px, py, rho, w).items():

        def f(t, kind=kind):
            c = scalar(t)
            return math.nan if c is None else _tangency_gap(c, w, kind)

        brackets = []
        a, b = g[:-1], g[1:]
        for i in np.flatnonzero(np.isfinite(a) & np.isfinite(b) & (a * b <= 0) & (b != 0)):
            if a[i] == 0:
                out.append((float(ts[i]), kind))
            else:
                brackets.append((ts[i], ts[i + 1]))
        # a near-double root can fall between two samples: refine every local
        # extremum that points toward zero and bracket both roots if it crosses
        l, m, r = g[:-2], g[1:-1], g[2:]
        fin = np.isfinite(l) & np.isfinite(m) & np.isfinite(r)
        ext = fin & (np.abs(m) <= np.abs(l)) & (np.abs(m) <= np.abs(r)) & (l * m > 0) & (m * r > 0)
        for i in np.flatnonzero(ext) + 1:
            sg = math.copysign(1.0, g[i])

            def h(t, sg=sg):
                v = f(t)
                return math.inf if math.isnan(v) else sg * v

            opt = minimize_scalar(h, bounds=(ts[i - 1], ts[i + 1]), method="bounded", options={"xatol": 1e-14})
            if opt.fun < 0:
                brackets += [(ts[i - 1], opt.x), (opt.x, ts[i + 1])]
        for lo, hi in brackets:
            try:
                out.append((brentq(f, lo, hi, xtol=1e-15, rtol=1e-15, maxiter=200), kind))
            except ValueError:
                # the member vanished inside the bracket
                continue
    return out


def complex_contact_defect(gamma: ConicQ, w: Circle, w1: Circle) -> Tuple[float, bool]:
    """Where the axes of ``gamma`` cross the center locus of circles touching
    ``w`` and ``w1`` with opposite types, compare the double-contact radius
    with the locus radius.

    Returns the smallest mismatch (unscaled) and whether some matching point
    (mismatch within ``1e-9`` of the locus size) has real contacts.  A small
    mismatch with only complex contacts means the conclusion holds only for
    a circle touching ``gamma`` at two complex conjugate points.
    """
    loc = tangent_center_locus(w, w1)
    center, _, vec, _ = principal_frame(gamma)
    hits = []
    for which in (1, 2):
        e = Point(float(vec[0, which - 1]), float(vec[1, which - 1]))

        def f(u):
            p = center + e * u
            return p.distance(loc.focus1) + p.distance(loc.focus2) - loc.length_sum

        if f(0.0) >= 0:
            continue
        for sgn in (1.0, -1.0):
            hi = loc.length_sum
            while f(sgn * hi) < 0:
                hi *= 2
            u = sgn * brentq(lambda x: f(sgn * x), 0.0, hi, xtol=1e-15, rtol=1e-15)
            rl = loc.circle_at(center + e * u).radius
            rho2, w0sq = bitangent_radius_sq(gamma, u, which)
            if rho2 <= 0:
                continue
            hits.append((abs(math.sqrt(float(rho2)) - rl), bool(w0sq > 0)))
    if not hits:
        return math.inf, False
    best = min(g for g, _ in hits)
    cut = max(best, 1e-9 * loc.length_sum)
    return best, any(r for g, r in hits if g <= cut)


def check_main_theorem(s: Scenario, t_gamma: float, samples: int = 4000, require_center_inside: bool = True) -> Report:
    """Search the twice-tangent circles of the conic for one touching omega,
    and report the best tangency defect of such circles against omega1.

    For every symmetry axis of the conic the centers ``center + t e`` are
    sampled, and each sign change of a tangency gap with omega is refined by
    Brent's method.  A circular member has the concentric circles as its
    twice-tangent family (double contact at the circular points), so the
    scan runs over the radius instead.

    ``require_center_inside=False`` skips the center precondition.  The
    circle ABCD itself needs it: a concentric circle touching one of omega,
    omega1 externally has its center outside that circle.
    """
    t0 = time.perf_counter()
    abcd, w, w1 = s["ABCD"], s["omega"], s["omega1"]
    scale = abcd.radius
    ab, cd = _lines(s)
    gamma = conic_member(s, t_gamma)
    center = conic_center(gamma)
    if require_center_inside and not (_inside(center, w) and _inside(center, w1)):
        raise ConicCenterOutside("the conic's center must lie inside omega and omega1")
    m = gamma.m[:2, :2]
    circular = abs(m[0, 0] - m[1, 1]) <= 1e-12 * np.abs(m).max() and abs(m[0, 1]) <= 1e-12 * np.abs(m).max()
    reach = 4 * (w.center.distance(center) + w.radius + w1.center.distance(center) + w1.radius)
    found = []
    info: Dict[str, str] = {}
    if circular:
        rs = np.linspace(0.0, reach, samples + 1)

        def fam(rho):
            return Circle(center, rho) if rho > 0 else None

        rho = np.where(rs > 0, rs, np.nan)
        px, py = np.full_like(rs, center.x), np.full_like(rs, center.y)
        found = [(fam(r), k, 0) for r, k in _family_roots(rs, px, py, rho, fam, w)]
        axes_res = 0.0
    else:
        axes_res = _bisector_angle_residual(conic_axes(gamma), ab, cd)
        _, _, vec, _ = principal_frame(gamma)
        ts = np.linspace(-reach, reach, samples + 1)
        for which in (1, 2):
            e = vec[:, which - 1]
            rho2, w0sq = bitangent_radius_sq(gamma, ts, which)
            rho = np.where((w0sq > 0) & (rho2 > 0), np.sqrt(np.abs(rho2)), np.nan)

            def fam(t, which=which):
                try:
                    return bitangent(gamma, t, which).circle
                except (NoRealBitangent, ValueError):
                    return None

            px, py = center.x + e[0] * ts, center.y + e[1] * ts
            found += [(fam(t), k, which) for t, k in _family_roots(ts, px, py, rho, fam, w)]
        cdef, real = complex_contact_defect(gamma, w, w1)
        info["complex_contact_defect"] = f"{cdef / scale:.3e}"
        info["contacts_real"] = str(real)
    best = math.inf
    for circ, kind, which in found:
        if circ is None:
            continue
        dfx = tangency_defect(circ, w1)
        if dfx < best:
            best = dfx
            t1 = min(_TYPES, key=lambda k: abs(_tangency_gap(circ, w1, k)))
            info.update(axis=str(which), omega_type=kind.value, omega1_type=t1.value)
    res = {"omega1_defect": best / scale, "axes_vs_bisectors": axes_res}
    tols = {"omega1_defect": MAIN_TOL, "axes_vs_bisectors": 1e-8}
    info["candidates"] = str(len(found))
    return Report.build(s.name + "-main", res, tols, t0, info)


# --- olympiad problems -------------------------------------------------------


def _random_triangle(rng: np.random.Generator, min_angle: float = 0.35) -> Tuple[Point, Point, Point]:
    while True:
        th = np.sort(rng.uniform(0, 2 * math.pi, 3))
        a, b, c = (Point(math.cos(t), math.sin(t)) for t in th)
        gaps = np.diff(np.append(th, th[0] + 2 * math.pi))
        # inscribed angles are half the opposite arcs
        if gaps.min() / 2 >= min_angle:
            return a, b, c


def _reflect_direction(v: Point, axis: Point) -> Point:
    a = axis.unit()
    return a * (2 * v.dot(a)) - v


@dataclass(frozen=True)
class Olympiad1Config:
    A: Point
    B: Point
    C: Point
    D: Point
    E: Point
    K: Point
    L: Point
    M: Point
    klm: Circle
    bced: Circle


def olympiad1_config(a: Point, b: Point, c: Point, lam: float) -> Olympiad1Config:
    """Configuration with ``D = A + lam (B - A)`` and ``E`` on ``AC`` making
    ``BCED`` cyclic (``AD * AB = AE * AC``)."""
    d = a + (b - a) * lam
    ae = lam * a.distance(b) ** 2 / a.distance(c)
    e = a + (c - a).unit() * ae
    be, cd = Line.through(b, e), Line.through(c, d)
    k = line_intersection(be, cd)
    if k is None:
        raise DegenerateImage("BE and CD are parallel")
    u, v = (b - a).unit(), (c - a).unit()
    iso = Line.point_normal(a, _reflect_direction(k - a, u + v).perp())
    l, m = line_intersection(iso, be), line_intersection(iso, cd)
    if l is None or m is None:
        raise DegenerateImage("isogonal line parallel to BE or CD")
    return Olympiad1Config(a, b, c, d, e, k, l, m, circumcircle(k, l, m), circumcircle(b, c, d))


def _signed_line_gap(c: Circle, l: Line) -> float:
    return l.distance(c.center) - c.radius


def olympiad1_check(
    seed: int, triangle: Optional[Tuple[Point, Point, Point]] = None, grid: int = 400, max_tries: int = 50
) -> Report:
    """Solve for ``D`` on ``AB`` making ``(KLM)`` tangent to ``DE`` and report
    its tangency defect against ``BC``; also the polar coincidence of ``A``."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    for _ in range(1 if triangle is not None else max_tries):
        a, b, c = triangle if triangle is not None else _random_triangle(rng)

        def gap(lam):
            try:
                cf = olympiad1_config(a, b, c, lam)
            except GeometryError:
                return math.nan
            return _signed_line_gap(cf.klm, Line.through(cf.D, cf.E))

        lams = np.linspace(0.02, 0.98, grid + 1)
        vals = np.array([gap(x) for x in lams])
        ok = np.isfinite(vals[:-1]) & np.isfinite(vals[1:]) & (vals[:-1] * vals[1:] < 0)
        # a true sign change, not a jump through a degenerate configuration
        ok &= np.abs(vals[:-1] - vals[1:]) < 0.5
        idx = np.flatnonzero(ok)
        if len(idx) == 0:
            continue
        i = int(idx[rng.integers(len(idx))])
        lam = brentq(gap, lams[i], lams[i + 1], xtol=1e-15, rtol=1e-15, maxiter=200)
        cf = olympiad1_config(a, b, c, lam)
        scale = circumcircle(a, b, c).radius
        de = abs(_signed_line_gap(cf.klm, Line.through(cf.D, cf.E))) / scale
        bc = abs(_signed_line_gap(cf.klm, Line.through(b, c))) / scale
        pol = line_deviation(polar(a, cf.bced), polar(a, cf.klm))
        res = {"de_defect": de, "bc_defect": bc, "polar_coincidence": pol}
        tols = {"de_defect": 1e-10, "bc_defect": OLYMPIAD_TOL, "polar_coincidence": 1e-8}
        return Report.build(f"olympiad1-{seed}", res, tols, t0, {"lambda": repr(lam)})
    raise GenerationExhausted("no tangency to DE found for any sampled triangle")


def incircle(a: Point, b: Point, c: Point) -> Circle:
    la, lb, lc = b.distance(c), c.distance(a), a.distance(b)
    p = la + lb + lc
    center = (a * la + b * lb + c * lc) / p
    s = p / 2
    area = abs((b - a).cross(c - a)) / 2
    return Circle(center, area / s)


def _ratios(s: np.ndarray, pts: Sequence[Point]) -> np.ndarray:
    p = Point(float(s[0]), float(s[1]))
    out = []
    for i in range(3):
        u, v = pts[i], pts[(i + 1) % 3]
        out.append((u.distance(p) + v.distance(p)) / u.distance(v))
    return np.array(out)


def equal_ratio_point(a: Point, b: Point, c: Point) -> Point:
    """Point with ``(AS+BS)/AB = (BS+CS)/BC = (CS+AS)/CA``: Nelder-Mead on
    the variance of the ratios from the incenter, then a Newton-type polish."""
    pts = (a, b, c)
    x0 = incircle(a, b, c).center.array()
    opt = minimize(
        lambda s: float(np.var(_ratios(s, pts))),
        x0,
        method="Nelder-Mead",
        options={"xatol": 1e-13, "fatol": 1e-24, "maxiter": 4000},
    )
    if not opt.fun <= 1e-12:
        raise SearchDiverged(f"ratio variance stalled at {opt.fun:.3e}")
    pol = root(lambda s: np.diff(_ratios(s, pts)), opt.x, method="hybr", options={"xtol": 1e-15})
    x = pol.x if pol.success and np.var(_ratios(pol.x, pts)) <= opt.fun else opt.x
    return Point(float(x[0]), float(x[1]))


def olympiad2_check(seed: int, triangle: Optional[Tuple[Point, Point, Point]] = None) -> Report:
    t0 = time.perf_counter()
    a, b, c = triangle if triangle is not None else _random_triangle(np.random.default_rng(seed))
    circ = circumcircle(a, b, c)
    scale = circ.radius
    s = equal_ratio_point(a, b, c)
    a1, b1, c1 = (second_intersection(s, p, circ) for p in (a, b, c))
    i0, i1 = incircle(a, b, c), incircle(a1, b1, c1)
    if i0.center.distance(circ.center) <= 1e-12 * scale:
        # concentric pair: the limiting point is the common center, whose
        # polars are both the line at infinity
        inner = circ.center
        pol = 0.0 if s.distance(inner) <= 1e-12 * scale else math.inf
    else:
        lp = sharygin_points(circ, i0)
        inner = min((lp.s, lp.s_prime), key=lambda p: p.distance(i0.center))
        pol = line_deviation(polar(s, circ), polar(s, i0))
    res = {
        "center_distance": i0.center.distance(i1.center) / scale,
        "radius_difference": abs(i0.radius - i1.radius) / scale,
        "polar_coincidence": pol,
        "sharygin_point_distance": s.distance(inner) / scale,
    }
    tols = {k: OLYMPIAD_TOL for k in res}
    return Report.build(f"olympiad2-{seed}", res, tols, t0)
