"""Command-line front end.

Subcommands::

    sharygin   limiting points of two circles (optionally drawn to SVG)
    transform  inflate | lorentz | hyp-inflate | invert applied to cycles
    scenario   write a generated scenario file
    verify     run a seeded suite or the checks of a scenario file
    render     draw a scenario file as SVG

Exit codes: 0 when every check passes, 1 when a check fails, 2 on invalid
input (the message names the violated precondition).

Scenario files
--------------
A line-oriented text format.  ``#`` starts a comment; blank lines are ignored.
Tokens are separated by whitespace::

    file      := { line }
    line      := "name" WORD
               | "seed" INT
               | "check" WORD { NUMBER }
               | "tol" WORD NUMBER
               | KIND ID { NUMBER }
    KIND      := "point" (x y) | "line" (a b c) | "circle" (x y r)
               | "cycle" (x y r) | "conic" (A B C D E F)
    NUMBER    := decimal with optional sign, fraction and exponent

A line ``a b c`` is ``a x + b y + c = 0`` and a conic ``A..F`` is
``A x^2 + B xy + C y^2 + D x + E y + F = 0``.  Numbers are written with
``repr`` so a load/save/load cycle is the identity.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import theorems as th
from .conics import ConicQ, principal_frame
from .cycle_space import Cycle, inflate, lorentz, tangent_cycles
from .errors import GenerationExhausted, GeometryError
from .geom_core import Circle, Line, Point, invert, polar
from .hyperbolic import Absolute, hyp_inflate
from .pencil import sharygin_points
from .sharygin_props import displaced, gen_configuration, property_residuals

EXIT_PASS, EXIT_FAIL, EXIT_INVALID = 0, 1, 2

PROPERTY_TOL = 1e-8
SUITES = ("weak-mt", "simplified-mt", "main", "olympiad1", "olympiad2", "properties")


class InputError(Exception):
    """Invalid user input; reported with exit code 2."""


# --- number formatting ---------------------------------------------------------


def fmt(x: float) -> str:
    """Short form when ``x`` is within 1e-12 of a value with at most six
    decimals, otherwise twelve decimals."""
    if not math.isfinite(x):
        return str(x)
    r = round(x, 6)
    if abs(x - r) <= 1e-12:
        s = f"{r:.6f}".rstrip("0").rstrip(".")
        return "0" if s in ("-0", "") else s
    return f"{x:.12f}"


def fmt_point(p: Point) -> str:
    return f"({fmt(p.x)}, {fmt(p.y)})"


# --- scenario files ------------------------------------------------------------

_NUM = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$|^[+-]?(inf|nan)$")
_ARITY = {"point": 2, "line": 3, "circle": 3, "cycle": 3, "conic": 6}


class ScenarioSyntaxError(InputError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line, self.col = line, col


def _tokens(text: str) -> Iterable[Tuple[int, List[Tuple[int, str]]]]:
    for ln, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        toks = [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", body)]
        if toks:
            yield ln, toks


def _number(tok: Tuple[int, str], ln: int) -> float:
    col, s = tok
    if not _NUM.match(s):
        raise ScenarioSyntaxError(f"expected a number, got {s!r}", ln, col)
    v = float(s)
    if not math.isfinite(v):
        raise ScenarioSyntaxError(f"non-finite number {s!r}", ln, col)
    return v


def _build(kind: str, vals: List[float], ln: int, col: int):
    try:
        if kind == "point":
            return Point(*vals)
        if kind == "line":
            line = Line.from_coeffs(*vals)
            # keep already-normalized input verbatim so reloading is exact
            if abs(math.hypot(vals[0], vals[1]) - 1) <= 4e-16 and np.dot(vals[:2], (line.a, line.b)) > 0:
                return Line(*vals)
            return line
        if kind == "circle":
            return Circle(Point(vals[0], vals[1]), vals[2])
        if kind == "cycle":
            return Cycle(*vals)
        return ConicQ.from_coeffs(*vals)
    except (ValueError, GeometryError) as e:
        raise ScenarioSyntaxError(f"invalid {kind}: {e}", ln, col) from None


def loads(text: str) -> th.Scenario:
    name, seed = "scenario", 0
    objects: Dict[str, object] = {}
    checks: List[str] = []
    tol: Dict[str, float] = {}
    for ln, toks in _tokens(text):
        col, key = toks[0]
        args = toks[1:]
        if key == "name":
            if len(args) != 1:
                raise ScenarioSyntaxError("'name' takes one word", ln, col)
            name = args[0][1]
        elif key == "seed":
            if len(args) != 1 or not re.fullmatch(r"[+-]?\d+", args[0][1]):
                raise ScenarioSyntaxError("'seed' takes one integer", ln, args[0][0] if args else col)
            seed = int(args[0][1])
        elif key == "check":
            if not args:
                raise ScenarioSyntaxError("'check' needs a check id", ln, col)
            if args[0][1] not in SUITES:
                raise ScenarioSyntaxError(f"unknown check {args[0][1]!r}", ln, args[0][0])
            nums = [_number(t, ln) for t in args[1:]]
            checks.append(" ".join([args[0][1]] + [repr(v) for v in nums]))
        elif key == "tol":
            if len(args) != 2:
                raise ScenarioSyntaxError("'tol' takes a residual id and a number", ln, col)
            tol[args[0][1]] = _number(args[1], ln)
        elif key in _ARITY:
            if not args:
                raise ScenarioSyntaxError(f"{key} needs an id", ln, col)
            oid = args[0][1]
            if oid in objects:
                raise ScenarioSyntaxError(f"duplicate id {oid!r}", ln, args[0][0])
            nums = args[1:]
            if len(nums) != _ARITY[key]:
                where = nums[_ARITY[key]][0] if len(nums) > _ARITY[key] else (args[-1][0] + len(args[-1][1]))
                raise ScenarioSyntaxError(f"{key} takes {_ARITY[key]} numbers, got {len(nums)}", ln, where)
            objects[oid] = _build(key, [_number(t, ln) for t in nums], ln, col)
        else:
            raise ScenarioSyntaxError(f"unknown keyword {key!r}", ln, col)
    return th.Scenario(name, seed, objects, checks, tol)


def _params(obj) -> Tuple[str, Sequence[float]]:
    if isinstance(obj, Point):
        return "point", (obj.x, obj.y)
    if isinstance(obj, Line):
        return "line", (obj.a, obj.b, obj.c)
    if isinstance(obj, Circle):
        return "circle", (obj.center.x, obj.center.y, obj.radius)
    if isinstance(obj, Cycle):
        return "cycle", (obj.x, obj.y, obj.r)
    if isinstance(obj, ConicQ):
        return "conic", obj.coeffs()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(s: th.Scenario) -> str:
    out = [f"name {s.name}", f"seed {s.seed}"]
    out += [f"check {c}" for c in s.checks]
    out += [f"tol {k} {v!r}" for k, v in s.tol.items()]
    for oid, obj in s.objects.items():
        kind, vals = _params(obj)
        out.append(" ".join([kind, oid] + [repr(float(v)) for v in vals]))
    return "\n".join(out) + "\n"


def load_file(path: str) -> th.Scenario:
    try:
        with open(path, encoding="utf-8") as f:
            return loads(f.read())
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None


# --- suites ----------------------------------------------------------------------


def properties_report(seed: int) -> th.Report:
    t0 = th.time.perf_counter()
    rng = np.random.default_rng(seed)
    cfg = gen_configuration(rng)
    res = property_residuals(cfg).as_dict()
    neg = property_residuals(cfg, displaced(cfg, rng)).as_dict()
    info = {"negative_control_min": f"{min(neg.values()):.3e}"}
    return th.Report.build(f"properties-{seed}", res, {k: PROPERTY_TOL for k in res}, t0, info)


def main_parameter(s: th.Scenario, seed: int) -> float:
    return th.admissible_conic_parameters(s, 1, np.random.default_rng(10_000 + seed))[0]


def suite_reports(suite: str, seed: int) -> List[th.Report]:
    """Reports for one seed; an empty list when the seed admits no instance."""
    if suite == "properties":
        return [properties_report(seed)]
    if suite == "olympiad1":
        return [th.olympiad1_check(seed)]
    if suite == "olympiad2":
        return [th.olympiad2_check(seed)]
    s = th.gen_weak_mt(seed)
    if suite == "weak-mt":
        return [th.check_weak_mt(s)]
    if suite == "simplified-mt":
        gammas = th.admissible_gammas(s, 3, np.random.default_rng(10_000 + seed))
        return [th.check_simplified_mt(s, g) for g in gammas]
    try:
        t = main_parameter(s, seed)
    except GenerationExhausted:
        return []
    return [th.check_main_theorem(s, t)]


def scenario_reports(s: th.Scenario) -> List[th.Report]:
    reports = []
    for check in s.checks:
        cid, *args = check.split()
        if cid == "weak-mt":
            r = th.check_weak_mt(s)
        elif cid == "simplified-mt":
            if "Gamma" not in s.objects:
                raise InputError("check simplified-mt needs a circle 'Gamma'")
            r = th.check_simplified_mt(s, s["Gamma"])
        elif cid == "main":
            if len(args) != 1:
                raise InputError("check main takes the conic pencil parameter")
            r = th.check_main_theorem(s, float(args[0]))
        elif cid in ("olympiad1", "olympiad2"):
            fn = th.olympiad1_check if cid == "olympiad1" else th.olympiad2_check
            tri = tuple(s.objects.get(k) for k in "ABC")
            r = fn(s.seed, tri if all(isinstance(p, Point) for p in tri) else None)
        else:
            r = suite_reports(cid, s.seed)[0]
        for k, v in s.tol.items():
            if k in r.tolerances:
                r.tolerances[k] = v
        r.passed = all(r.residuals[k] <= r.tolerances[k] for k in r.tolerances)
        reports.append(r)
    return reports


def report_json(r: th.Report, timing: bool) -> dict:
    d = {
        "name": r.name,
        "passed": r.passed,
        "residuals": r.residuals,
        "tolerances": r.tolerances,
        "info": r.info,
    }
    if timing:
        d["wall_time"] = r.wall_time
    return d


def _json_safe(x):
    if isinstance(x, float) and not math.isfinite(x):
        return str(x)
    if isinstance(x, dict):
        return {k: _json_safe(v) for k, v in x.items()}
    if isinstance(x, list):
        return [_json_safe(v) for v in x]
    return x


# --- SVG -------------------------------------------------------------------------

STYLE = {
    "circle": 'fill="none" stroke="#1f4e79" stroke-width="1.5"',
    "cycle": 'fill="none" stroke="#7a3b9a" stroke-width="1.5" stroke-dasharray="6 3"',
    "line": 'stroke="#555555" stroke-width="1"',
    "conic": 'fill="none" stroke="#b03a2e" stroke-width="1.5"',
    "point": 'fill="#000000"',
}
CONIC_SEGMENTS = 256


def conic_polylines(q: ConicQ, extent: float) -> List[np.ndarray]:
    """Sampled branches of a central conic (``CONIC_SEGMENTS`` segments in
    all); empty when the conic is degenerate, imaginary or not central."""
    try:
        c, lam, vec, k = principal_frame(q)
    except GeometryError:
        return []
    if abs(k) <= 1e-12 * np.abs(q.m).max():
        return []
    a2, b2 = -k / lam[0], -k / lam[1]
    e1, e2 = vec[:, 0], vec[:, 1]
    ctr = np.array([c.x, c.y])
    if a2 > 0 and b2 > 0:
        th_ = np.linspace(0.0, 2 * math.pi, CONIC_SEGMENTS + 1)
        pts = ctr + np.outer(math.sqrt(a2) * np.cos(th_), e1) + np.outer(math.sqrt(b2) * np.sin(th_), e2)
        return [pts]
    if a2 < 0 and b2 < 0:
        return []
    # hyperbola: real semi-axis along the eigenvector with the positive value
    if a2 < 0:
        a2, b2, e1, e2 = b2, a2, e2, e1
    a, b = math.sqrt(a2), math.sqrt(-b2)
    smax = math.acosh(max(1.0 + 1e-9, 2 * extent / a + 1.0))
    s = np.linspace(-smax, smax, CONIC_SEGMENTS // 2 + 1)
    out = []
    for sgn in (1.0, -1.0):
        out.append(ctr + np.outer(sgn * a * np.cosh(s), e1) + np.outer(b * np.sinh(s), e2))
    return out


@dataclass
class Viewport:
    xmin: float
    ymin: float
    size: float
    pixels: int = 600

    @classmethod
    def fit(cls, objects: Dict[str, object], margin: float = 0.08) -> "Viewport":
        xs, ys = [], []
        for obj in objects.values():
            if isinstance(obj, Point):
                xs.append(obj.x)
                ys.append(obj.y)
            elif isinstance(obj, (Circle, Cycle)):
                c = obj.center
                r = obj.radius if isinstance(obj, Circle) else abs(obj.r)
                xs += [c.x - r, c.x + r]
                ys += [c.y - r, c.y + r]
            elif isinstance(obj, ConicQ):
                try:
                    c = principal_frame(obj)[0]
                except GeometryError:
                    continue
                xs.append(c.x)
                ys.append(c.y)
        if not xs:
            return cls(-1.0, -1.0, 2.0)
        w = max(max(xs) - min(xs), max(ys) - min(ys), 1e-9)
        size = w * (1 + 2 * margin)
        cx, cy = (max(xs) + min(xs)) / 2, (max(ys) + min(ys)) / 2
        return cls(cx - size / 2, cy - size / 2, size)

    def px(self, x: float, y: float) -> Tuple[str, str]:
        k = self.pixels / self.size
        return f"{(x - self.xmin) * k:.3f}", f"{(self.ymin + self.size - y) * k:.3f}"

    def length(self, r: float) -> str:
        return f"{r * self.pixels / self.size:.3f}"


def _clip_line(l: Line, vp: Viewport) -> Optional[Tuple[Point, Point]]:
    # the viewport's circumscribed circle keeps the segment long enough
    c = Point(vp.xmin + vp.size / 2, vp.ymin + vp.size / 2)
    r = vp.size * math.sqrt(0.5)
    f = l.foot(c)
    h2 = r * r - f.distance(c) ** 2
    if h2 <= 0:
        return None
    h = math.sqrt(h2)
    return f - l.direction * h, f + l.direction * h


def render_svg(objects: Dict[str, object], title: str = "") -> str:
    vp = Viewport.fit(objects)
    n = vp.pixels
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{n}" height="{n}" viewBox="0 0 {n} {n}">',
        f"<title>{title}</title>" if title else "<title/>",
        f'<rect x="0" y="0" width="{n}" height="{n}" fill="#ffffff"/>',
    ]
    labels = []
    for oid, obj in objects.items():
        if isinstance(obj, Line):
            seg = _clip_line(obj, vp)
            if seg:
                (x1, y1), (x2, y2) = vp.px(*seg[0]), vp.px(*seg[1])
                out.append(f'<line id="{oid}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" {STYLE["line"]}/>')
        elif isinstance(obj, (Circle, Cycle)):
            kind = "circle" if isinstance(obj, Circle) else "cycle"
            r = obj.radius if isinstance(obj, Circle) else abs(obj.r)
            x, y = vp.px(obj.center.x, obj.center.y)
            out.append(f'<circle id="{oid}" cx="{x}" cy="{y}" r="{vp.length(r)}" {STYLE[kind]}/>')
        elif isinstance(obj, ConicQ):
            for i, branch in enumerate(conic_polylines(obj, vp.size)):
                pts = " ".join(",".join(vp.px(px_, py_)) for px_, py_ in branch)
                out.append(f'<polyline id="{oid}-{i}" points="{pts}" {STYLE["conic"]}/>')
    for oid, obj in objects.items():
        if isinstance(obj, Point):
            x, y = vp.px(obj.x, obj.y)
            out.append(f'<circle id="{oid}" cx="{x}" cy="{y}" r="3" {STYLE["point"]}/>')
            labels.append(f'<text x="{float(x) + 5:.3f}" y="{float(y) - 5:.3f}" font-size="14" font-family="sans-serif">{oid}</text>')
    out += labels
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _write(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    except OSError as e:
        raise InputError(f"cannot write {path}: {e.strerror}") from None


# --- argument parsing helpers ---------------------------------------------------


def _floats(s: str, n: int, what: str) -> List[float]:
    parts = s.replace(",", " ").split()
    if len(parts) != n:
        raise InputError(f"{what} needs {n} numbers, got {s!r}")
    try:
        vals = [float(p) for p in parts]
    except ValueError:
        raise InputError(f"{what}: not a number in {s!r}") from None
    if not all(math.isfinite(v) for v in vals):
        raise InputError(f"{what}: non-finite number in {s!r}")
    return vals


def _circle(s: str) -> Circle:
    x, y, r = _floats(s, 3, "circle")
    try:
        return Circle(Point(x, y), r)
    except ValueError as e:
        raise InputError(f"circle {s!r}: {e}") from None


def _cycle(s: str) -> Cycle:
    return Cycle(*_floats(s, 3, "cycle"))


def _fmt_obj(obj) -> str:
    if isinstance(obj, Cycle):
        return f"{fmt(obj.x)} {fmt(obj.y)} {fmt(obj.r)}"
    if isinstance(obj, Point):
        return f"{fmt(obj.x)} {fmt(obj.y)} 0"
    if isinstance(obj, Circle):
        return f"{fmt(obj.center.x)} {fmt(obj.center.y)} {fmt(obj.radius)}"
    if isinstance(obj, Line):
        return f"line {fmt(obj.a)} {fmt(obj.b)} {fmt(obj.c)}"
    # an oriented axis
    return f"axis {fmt(obj.dx)} {fmt(obj.dy)} {fmt(obj.offset)}"


# --- commands -------------------------------------------------------------------


def cmd_sharygin(args) -> int:
    if args.file:
        s = load_file(args.file)
        circles = [o for o in s.objects.values() if isinstance(o, Circle)]
        if len(circles) < 2:
            raise InputError("the scenario file must contain two circles")
        c1, c2 = circles[:2]
    else:
        if len(args.circles) != 2:
            raise InputError("give two circles as 'x y r' or --file")
        c1, c2 = (_circle(c) for c in args.circles)
    lp = sharygin_points(c1, c2)
    print(f"S  {fmt_point(lp.s)}")
    print(f"S' {fmt_point(lp.s_prime)}")
    if args.svg:
        objs = {"w1": c1, "w2": c2, "S": lp.s, "S'": lp.s_prime}
        try:
            objs["polar"] = polar(lp.s, c1)
        except GeometryError:
            pass
        _write(args.svg, render_svg(objs, "limiting points"))
    return EXIT_PASS


def cmd_transform(args) -> int:
    objs: List[object] = [_cycle(c) for c in args.cycles]
    if args.kind in ("inflate", "lorentz", "hyp-inflate") and args.param is None:
        raise InputError(f"{args.kind} needs --param")
    if args.kind == "inflate":
        images = [inflate(o, args.param) for o in objs]
    elif args.kind == "lorentz":
        images = [lorentz(args.param, o) for o in objs]
    elif args.kind == "hyp-inflate":
        ab = Absolute(_circle(args.absolute))
        images = [hyp_inflate(o, args.param, ab) for o in objs]
    else:
        cx, cy = _floats(args.center, 2, "center")
        k2 = 1.0 if args.param is None else args.param
        images = [invert(Point(cx, cy), k2, o.circle() if o.r else o.center) for o in objs]
    for img in images:
        print(_fmt_obj(img))
    if args.check_tangency:
        if args.kind == "invert":
            raise InputError("--check-tangency applies to cycle maps only")
        print("i j before after")
        for i in range(len(objs)):
            for j in range(i + 1, len(objs)):
                before = tangent_cycles(objs[i], objs[j])
                a, b = images[i], images[j]
                after = tangent_cycles(a, b) if isinstance(a, Cycle) and isinstance(b, Cycle) else None
                print(f"{i} {j} {int(before)} {'-' if after is None else int(after)}")
    return EXIT_PASS


def cmd_scenario(args) -> int:
    if args.suite != "weak-mt":
        raise InputError("only weak-mt scenarios can be generated")
    s = th.gen_weak_mt(args.seed, concentric=args.concentric, types=args.types)
    text = dumps(s)
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_PASS


def _summary_rows(reports: List[th.Report], skipped: int):
    worst = max((r.max_residual() for r in reports), default=0.0)
    passed = sum(r.passed for r in reports)
    return passed, len(reports) - passed, skipped, worst


def cmd_verify(args) -> int:
    if args.scenario:
        s = load_file(args.scenario)
        suite = "scenario"
        reports, skipped = scenario_reports(s), 0
    else:
        if args.suite is None:
            raise InputError("give a suite or --scenario")
        if args.seeds < 1:
            raise InputError("--seeds must be positive")
        suite = args.suite
        reports, skipped = [], 0
        for seed in range(args.start, args.start + args.seeds):
            rs = suite_reports(suite, seed)
            skipped += not rs
            reports += rs
    passed, failed, skipped, worst = _summary_rows(reports, skipped)
    print(f"{'suite':<14} {'checks':>6} {'pass':>6} {'fail':>6} {'skip':>6} {'max residual':>14}")
    print(f"{suite:<14} {len(reports):>6} {passed:>6} {failed:>6} {skipped:>6} {worst:>14.3e}")
    for r in reports:
        if not r.passed or args.verbose:
            flag = "pass" if r.passed else "FAIL"
            worst_k = max(r.residuals, key=lambda k: r.residuals[k] / r.tolerances.get(k, math.inf) if k in r.tolerances else -1)
            print(f"  {flag} {r.name} {worst_k}={r.residuals[worst_k]:.3e}")
    if args.json:
        doc = {
            "suite": suite,
            "summary": {"checks": len(reports), "passed": passed, "failed": failed, "skipped": skipped, "max_residual": worst},
            "reports": [report_json(r, args.timing) for r in reports],
        }
        _write(args.json, json.dumps(_json_safe(doc), indent=2, sort_keys=True) + "\n")
    return EXIT_PASS if failed == 0 else EXIT_FAIL


def cmd_render(args) -> int:
    s = load_file(args.file)
    _write(args.out, render_svg(s.objects, s.name))
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sharygin", description="Circle pencils, limiting points and tangency theorem checks.")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("sharygin", help="limiting points of two non-intersecting circles")
    sp.add_argument("circles", nargs="*", help="two circles, each as 'x y r'")
    sp.add_argument("--file", help="scenario file; its first two circles are used")
    sp.add_argument("--svg", help="write a figure to this path")
    sp.set_defaults(func=cmd_sharygin)

    tp = sub.add_parser("transform", help="apply a cycle transformation")
    tp.add_argument("kind", choices=("inflate", "lorentz", "hyp-inflate", "invert"))
    tp.add_argument("cycles", nargs="+", help="cycles as 'x y r' (signed radius, 0 for a point)")
    tp.add_argument("--param", type=float, help="rho for inflations, v for lorentz, k^2 for invert")
    tp.add_argument("--absolute", default="0 0 1", help="absolute circle for hyp-inflate")
    tp.add_argument("--center", default="0 0", help="inversion center")
    tp.add_argument("--check-tangency", action="store_true", help="print pairwise tangency before and after")
    tp.set_defaults(func=cmd_transform)

    gp = sub.add_parser("scenario", help="write a generated scenario file")
    gp.add_argument("suite", choices=("weak-mt",))
    gp.add_argument("--seed", type=int, default=1)
    gp.add_argument("--concentric", action="store_true")
    gp.add_argument("--types", choices=("mixed", "same"), help="tangency types of kappa (default mixed; same when concentric)")
    gp.add_argument("-o", "--out")
    gp.set_defaults(func=cmd_scenario)

    vp = sub.add_parser("verify", help="run a seeded suite or a scenario file's checks")
    vp.add_argument("suite", nargs="?", choices=SUITES)
    vp.add_argument("--seeds", type=int, default=10)
    vp.add_argument("--start", type=int, default=0, help="first seed")
    vp.add_argument("--scenario", help="scenario file whose checks to run")
    vp.add_argument("--json", help="write every residual to this file")
    vp.add_argument("--timing", action="store_true", help="include wall times in the JSON output")
    vp.add_argument("-v", "--verbose", action="store_true", help="list every report")
    vp.set_defaults(func=cmd_verify)

    rp = sub.add_parser("render", help="draw a scenario file as SVG")
    rp.add_argument("file")
    rp.add_argument("out")
    rp.set_defaults(func=cmd_render)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, GeometryError, ValueError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
