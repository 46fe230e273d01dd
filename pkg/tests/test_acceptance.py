"""Acceptance criteria at their stated sizes and tolerances.

Each test records one PASS/FAIL line (shown in the terminal summary) before
asserting, so a failing criterion still reports what it measured.
"""

import math
import pathlib
import time

import numpy as np
import pytest
from test_conics import random_conic, random_points
from test_cycle_space import SPEEDS, random_cycle, tangent_pair
from test_hyperbolic import random_absolute, random_hcycle
from test_pencil import random_disjoint_pair

from sharygin import theorems as th
from sharygin.cli import EXIT_FAIL, EXIT_INVALID, EXIT_PASS, dumps, loads, main
from sharygin.conics import conic_pencil_lemma, line_pair, span_residual
from sharygin.cycle_space import inflate, lorentz, q, sigma, tangent_cycles
from sharygin.errors import GenerationExhausted
from sharygin.geom_core import Circle, Line, Point, intersect, invert, line_deviation, polar
from sharygin.hyperbolic import hyp_inflate, hyp_inflate_pencil, hyp_radius, inside_sharygin_point, poincare_center
from sharygin.pencil import Pencil, member_tangent_to_line, sharygin_points
from sharygin.sharygin_props import displaced, gen_configuration, property_residuals

GOLDEN = pathlib.Path(__file__).parent / "golden"


def test_criterion_1_lemma_suite(acceptance):
    t0 = time.perf_counter()
    rng = np.random.default_rng(1001)
    worst_polar = worst_center = 0.0
    for _ in range(1000):
        c1, c2 = random_disjoint_pair(rng)
        lp = sharygin_points(c1, c2)
        for s in (lp.s, lp.s_prime):
            worst_polar = max(worst_polar, line_deviation(polar(s, c1), polar(s, c2)))
            i1, i2 = invert(s, 1.0, c1), invert(s, 1.0, c2)
            scale = max(i1.radius, i2.radius, i1.center.norm())
            worst_center = max(worst_center, i1.center.distance(i2.center) / scale)
    elapsed = time.perf_counter() - t0
    ok = worst_polar <= 1e-9 and worst_center <= 1e-9 and elapsed < 5
    acceptance(1, ok, f"polar {worst_polar:.2e}, concentric images {worst_center:.2e}", elapsed)
    assert ok


def test_criterion_2_properties_suite(acceptance):
    t0 = time.perf_counter()
    worst, neg_min = 0.0, math.inf
    for seed in range(500):
        rng = np.random.default_rng(2000 + seed)
        cfg = gen_configuration(rng)
        worst = max(worst, max(property_residuals(cfg).as_dict().values()))
        neg = property_residuals(cfg, displaced(cfg, rng, 0.01)).as_dict()
        neg_min = min(neg_min, min(neg.values()))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-8 and neg_min > 1e-3 and elapsed < 30
    acceptance(2, ok, f"max residual {worst:.2e}, min negative control {neg_min:.2e}", elapsed)
    assert ok


def test_criterion_3_cycle_space(acceptance):
    t0 = time.perf_counter()
    rng = np.random.default_rng(3001)
    worst_q = 0.0
    for _ in range(1000):
        a, b = random_cycle(rng, 0.1), random_cycle(rng, 0.1)
        base = q(a, b)
        scale = max(abs(v) for c in (a, b) for v in (c.x, c.y, c.r)) ** 2
        for v in SPEEDS:
            worst_q = max(worst_q, abs(q(lorentz(v, a), lorentz(v, b)) - base) / scale)
    worst_add = 0.0
    for _ in range(1000):
        c = random_cycle(rng)
        v, w = rng.choice(SPEEDS, 2)
        lhs, rhs = lorentz(v, lorentz(w, c)), lorentz((v + w) / (1 + v * w), c)
        scale = max(abs(c.x), abs(c.y), abs(c.r))
        worst_add = max(worst_add, max(abs(lhs.x - rhs.x), abs(lhs.y - rhs.y), abs(lhs.r - rhs.r)) / scale)
    tangent_ok = 0
    for _ in range(500):
        c1, c2 = tangent_pair(rng)
        rho = rng.uniform(-0.15, 3) * min(abs(c1.r), abs(c2.r))
        tangent_ok += tangent_cycles(c1, c2) and tangent_cycles(inflate(c1, rho), inflate(c2, rho))
    exact = 0
    for _ in range(500):
        c, rho = random_cycle(rng), rng.uniform(-5, 5)
        m, mi = sigma(c), sigma(inflate(c, rho))
        exact += (mi.x, mi.y, mi.z) == (m.x, m.y, m.z + rho)
    elapsed = time.perf_counter() - t0
    ok = worst_q <= 1e-12 and worst_add <= 1e-12 and tangent_ok == 500 and exact == 500
    acceptance(
        3,
        ok,
        f"q {worst_q:.2e}, velocity addition {worst_add:.2e}, tangency {tangent_ok}/500, translation {exact}/500",
        elapsed,
    )
    assert ok


def test_criterion_4_hyperbolic_bridge(acceptance):
    t0 = time.perf_counter()
    rng = np.random.default_rng(4001)
    worst_c = worst_r = worst_add = worst_p = 0.0
    for _ in range(200):
        ab = random_absolute(rng)
        c = random_hcycle(rng, ab)
        r_h = hyp_radius(c.circle(), ab)
        rho = rng.uniform(-0.9 * r_h, 2)
        a, b = hyp_inflate(c, rho, ab), hyp_inflate_pencil(c, rho, ab)
        worst_c = max(worst_c, a.center.distance(b.center) / ab.radius)
        worst_r = max(worst_r, abs(a.r - b.r) / ab.radius)
        signed = math.copysign(r_h, c.r)
        rho = rng.uniform(-r_h + 0.01, 2) * math.copysign(1, c.r)
        img = hyp_inflate(c, rho, ab)
        worst_add = max(worst_add, abs(math.copysign(hyp_radius(img.circle(), ab), img.r) - (signed + rho)))
        circ = c.circle()
        if circ.center.distance(ab.center) > 1e-6:
            p = poincare_center(circ, ab)
            worst_p = max(worst_p, p.distance(inside_sharygin_point(circ, ab)) / max(1, ab.radius))
    elapsed = time.perf_counter() - t0
    ok = worst_c <= 1e-8 and worst_r <= 1e-8 and worst_add <= 1e-9 and worst_p <= 1e-9
    acceptance(
        4,
        ok,
        f"bridge center {worst_c:.2e} radius {worst_r:.2e}, additivity {worst_add:.2e}, center {worst_p:.2e}",
        elapsed,
    )
    assert ok


def _scan_agreement(s: th.Scenario) -> float:
    ab = Line.through(s["A"], s["B"])
    scale = s["ABCD"].radius
    worst = 0.0
    for p in intersect(s["omega"], s["omega1"]):
        closed = member_tangent_to_line(Pencil.of(p, s["ABCD"]), ab)
        scanned = th.scan_tangent_members(s["ABCD"], p, ab)
        if len(scanned) != len(closed):
            return math.inf
        for m in closed:
            c = Circle(m.center, math.sqrt(m.radius_sq))
            best = min(scanned, key=lambda o: o.center.distance(c.center))
            den = max(scale, c.radius)
            worst = max(worst, best.center.distance(c.center) / den, abs(best.radius - c.radius) / den)
    return worst


def test_criterion_5_weak_mt(acceptance):
    t0 = time.perf_counter()
    passed, worst, worst_scan, worst_trace = 0, 0.0, 0.0, 0.0
    for seed in range(200):
        s = th.gen_weak_mt(seed)
        r = th.check_weak_mt(s)
        passed += r.passed
        worst = max(worst, r.residuals["residual_b"], r.residuals["residual_c"])
        worst_scan = max(worst_scan, _scan_agreement(s))
        if r.passed:
            ids = th.weak_mt_trace(s).identities
            worst_trace = max(worst_trace, ids["ratio_identity"], ids["t1t2_parallel_w1w2"])
    elapsed = time.perf_counter() - t0
    ok = passed == 200 and worst <= 1e-7 and worst_scan <= 1e-8 and worst_trace <= 1e-7 and elapsed < 60
    acceptance(
        5,
        ok,
        f"{passed}/200 pass, max residual {worst:.2e}, scan agreement {worst_scan:.2e}, trace {worst_trace:.2e}",
        elapsed,
    )
    assert ok


def test_criterion_6_simplified_mt(acceptance):
    t0 = time.perf_counter()
    total = passed = 0
    worst = 0.0
    for seed in range(200):
        s = th.gen_weak_mt(seed)
        for g in th.admissible_gammas(s, 3, np.random.default_rng(10_000 + seed)):
            r = th.check_simplified_mt(s, g)
            total += 1
            passed += r.passed
            worst = max(worst, r.residuals["cd_defect"])
    elapsed = time.perf_counter() - t0
    ok = total == 600 and passed == 600 and worst <= 1e-7
    acceptance(6, ok, f"{passed}/{total} pass, max CD defect {worst:.2e}", elapsed)
    assert ok


def _main_instances(n):
    rng = np.random.default_rng(10_000)
    out, seed = [], 0
    while len(out) < n:
        s = th.gen_weak_mt(seed)
        seed += 1
        try:
            out.append((s, th.admissible_conic_parameters(s, 1, rng)[0]))
        except GenerationExhausted:
            continue
    return out


@pytest.mark.xfail(
    strict=True,
    reason=(
        "on a share of the instances the circle centered on a conic axis that "
        "touches the conic at two points and touches omega has imaginary contact "
        "points; no real bitangent circle touching omega then exists"
    ),
)
def test_criterion_7_main_theorem(acceptance):
    t0 = time.perf_counter()
    results, controls, neg_failed = [], 0, 0
    for s, t in _main_instances(100):
        r = th.check_main_theorem(s, t)
        results.append(r)
        if r.passed:
            # omega1 grown by 20% about its center
            controls += 1
            neg_failed += not th.check_main_theorem(th.perturb_omega1(s, 1.2), t).passed
    elapsed = time.perf_counter() - t0
    passed = sum(r.passed for r in results)
    axes = max(r.residuals["axes_vs_bisectors"] for r in results)
    real = sum(r.info["contacts_real"] == "True" for r in results)
    ok = passed == 100 and axes <= 1e-8 and neg_failed == controls and elapsed < 300
    acceptance(
        7,
        ok,
        f"{passed}/100 pass, {real} with real contacts, axes {axes:.2e}, negative controls failing {neg_failed}/{controls}",
        elapsed,
    )
    assert ok


def test_criterion_7_parts_that_hold():
    # the axis claim and the algebraic tangency hold on every instance, and
    # each failure is an instance whose contacts are imaginary
    for s, t in _main_instances(100):
        r = th.check_main_theorem(s, t, samples=1500)
        assert r.residuals["axes_vs_bisectors"] <= 1e-8
        assert float(r.info["complex_contact_defect"]) <= 1e-9
        assert r.passed == (r.info["contacts_real"] == "True")


def test_criterion_8_conic_pencil_lemma(acceptance):
    t0 = time.perf_counter()
    rng = np.random.default_rng(8001)
    worst = 0.0
    for _ in range(300):
        f, c1, f12 = random_conic(rng), random_conic(rng), random_conic(rng)
        a, b, c, d = rng.uniform(0.3, 2, 4) * rng.choice([-1, 1], 4)
        out = conic_pencil_lemma(c1, c1 * a + f * b, f12, f12 * c + f * d)
        worst = max(worst, span_residual(out, c1, c1 * a + f * b), span_residual(out, f12, f12 * c + f * d))
    spread = 0.0
    for _ in range(20):
        a, b, c, d = random_points(rng, 4)
        ad_bc = line_pair(Line.through(a, d), Line.through(b, c))
        c1 = random_conic(rng)
        out = conic_pencil_lemma(
            c1,
            ad_bc + c1 * rng.uniform(0.5, 2),
            line_pair(Line.through(a, b), Line.through(c, d)),
            line_pair(Line.through(a, c), Line.through(b, d)),
        )
        ratios = [out(p) / ad_bc(p) for p in random_points(rng, 5)]
        spread = max(spread, (max(ratios) - min(ratios)) / max(abs(x) for x in ratios))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-10 and spread <= 1e-8
    acceptance(8, ok, f"span residual {worst:.2e}, AD.BC witness spread {spread:.2e}", elapsed)
    assert ok


def test_criterion_9_olympiads(acceptance):
    t0 = time.perf_counter()
    worst_bc, solved = 0.0, 0
    for seed in range(50):
        r = th.olympiad1_check(seed)
        if r.residuals["de_defect"] <= 1e-10:
            solved += 1
            worst_bc = max(worst_bc, r.residuals["bc_defect"])
    worst2 = 0.0
    for seed in range(50):
        r = th.olympiad2_check(seed)
        worst2 = max(worst2, r.residuals["center_distance"], r.residuals["radius_difference"])
    h = math.sqrt(3) / 2
    eq = th.olympiad2_check(0, triangle=(Point(0, 1), Point(-h, -0.5), Point(h, -0.5)))
    worst_eq = max(eq.residuals["center_distance"], eq.residuals["radius_difference"])
    elapsed = time.perf_counter() - t0
    ok = solved == 50 and worst_bc <= 1e-7 and worst2 <= 1e-7 and worst_eq <= 1e-12
    acceptance(
        9,
        ok,
        f"olympiad1 BC {worst_bc:.2e} ({solved}/50 solved), olympiad2 {worst2:.2e}, equilateral {worst_eq:.2e}",
        elapsed,
    )
    assert ok


def test_criterion_10_cli(acceptance, tmp_path, capsys):
    t0 = time.perf_counter()
    scn = GOLDEN / "weak_mt_seed1.scn"
    svg, report = tmp_path / "fig.svg", tmp_path / "report.json"
    codes = {
        "render": main(["render", str(scn), str(svg)]),
        "verify": main(["verify", "--scenario", str(scn), "--json", str(report)]),
    }
    svg_same = svg.read_bytes() == (GOLDEN / "weak_mt_seed1.svg").read_bytes()
    json_same = report.read_bytes() == (GOLDEN / "weak_mt_seed1.json").read_bytes()
    bad = th.perturb_omega1(loads(scn.read_text()), 1.05)
    bad.checks = ["weak-mt"]
    bad_path = tmp_path / "bad.scn"
    bad_path.write_text(dumps(bad))
    codes["fail"] = main(["verify", "--scenario", str(bad_path)])
    broken = tmp_path / "broken.scn"
    broken.write_text("circle w 0 0\n")
    codes["invalid"] = main(["verify", "--scenario", str(broken)])
    codes["intersecting"] = main(["sharygin", "0 0 1", "1 0 1"])
    capsys.readouterr()
    expected = {"render": EXIT_PASS, "verify": EXIT_PASS, "fail": EXIT_FAIL, "invalid": EXIT_INVALID, "intersecting": EXIT_INVALID}
    elapsed = time.perf_counter() - t0
    ok = svg_same and json_same and codes == expected
    acceptance(10, ok, f"svg identical {svg_same}, report identical {json_same}, exit codes {codes}", elapsed)
    assert ok
