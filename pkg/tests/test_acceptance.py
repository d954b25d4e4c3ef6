"""End-to-end acceptance checks.

Each test prints one line, ACCEPTANCE n: PASS/FAIL with the measured
numbers, before asserting, so a full run reports every verdict.  Two of
the checks state targets this implementation measurably does not meet
(1: the certified modular ball area, and the ratio clause of 7); they are
kept at their stated thresholds rather than widened, so they fail loudly.
"""

import json
import subprocess
import sys
import time
from fractions import Fraction

from mpmath import mp, mpf, workprec

from cusptorus.ball import (QuadraticIrrational, boundary_refine,
                            corner_exterior_angle, flatness_probe,
                            norm_of_class)
from cusptorus.counting import (asymptotic_report, brute_force_count,
                                count_primitive)
from cusptorus.halfplane import sin_identity_residual
from cusptorus.moduli import (area_along_path, cusp_asymptotics, cusp_point,
                              isosystolic_sample, random_moduli_point,
                              systole)
from cusptorus.traces import ModuliPoint

import oracles

MODULAR = ModuliPoint(3, 3, 3)
GOLDEN = QuadraticIrrational(1, 1, 2, 5)


def _report(n, ok, detail):
    print("ACCEPTANCE %d: %s — %s" % (n, "PASS" if ok else "FAIL", detail))
    return ok


def _run(*argv):
    return subprocess.run([sys.executable, "-m", "cusptorus"] + list(argv),
                          capture_output=True, text=True)


def test_acceptance_01_modular_ball_area():
    t0 = time.monotonic()
    r = _run("ball", "--moduli", "modular", "--eps", "0.005",
             "--format", "json")
    elapsed = time.monotonic() - t0
    doc = json.loads(r.stdout)
    lo = mpf(doc["area_lower"])
    hi = mpf(doc["area_upper"])
    ok = (r.returncode == 0 and mpf("1.07") <= lo and hi <= mpf("1.09")
          and elapsed <= 60)
    detail = ("certified area [%s, %s], required within [1.07, 1.09], "
              "%.1fs" % (mp.nstr(lo, 12), mp.nstr(hi, 12), elapsed))
    assert _report(1, ok, detail)


def test_acceptance_02_counting_law():
    t0 = time.monotonic()
    rep = asymptotic_report(MODULAR, [25, 50, 100, 200])
    elapsed = time.monotonic() - t0
    with workprec(256):
        mid = (mpf(rep.area_lower) + mpf(rep.area_upper)) / 2
        target = mid / mp.zeta(2)
        last = rep.rows[-1]
        ratio = mpf(last.primitive) / mpf(last.L) ** 2
        rel = abs(ratio - target) / target
        worst = max(abs(r.residual_per_LlogL) for r in rep.rows)
    ok = rel <= mpf("0.03") and worst <= mpf("0.5") and elapsed <= 300
    detail = ("N(200)/200^2 = %s vs area/zeta(2) = %s (off by %s), "
              "max |residual|/(L log L) = %s over L=25..200, %.1fs"
              % (mp.nstr(ratio, 8), mp.nstr(target, 8), mp.nstr(rel, 3),
                 mp.nstr(worst, 4), elapsed))
    assert _report(2, ok, detail)


def test_acceptance_03_brute_force_parity():
    bad = []
    ext_m = boundary_refine(MODULAR, mpf("0.5")).extent_upper
    for L in range(1, 13):
        with workprec(256):
            cap = int(mp.ceil(L * ext_m)) + 1
        a = count_primitive(MODULAR, L)
        b = brute_force_count(MODULAR, L, cap)
        if a != b:
            bad.append(("modular", L, a, b))
    for i in range(10):
        m = random_moduli_point(42, i)
        ext = boundary_refine(m, mpf("0.5")).extent_upper
        with workprec(m.precision_bits):
            cap = int(mp.ceil(8 * ext)) + 1
        a = count_primitive(m, 8)
        b = brute_force_count(m, 8, cap)
        if a != b:
            bad.append(("seed42/%d" % i, 8, a, b))
    ok = not bad
    detail = ("tree walk = brute force exactly, modular L=1..12 and 10 "
              "seeded points at L=8" if ok else "mismatches: %r" % bad)
    assert _report(3, ok, detail)


def test_acceptance_04_identity_suite():
    worst = mpf(0)
    for i in range(100):
        m = random_moduli_point(7, i)
        worst = max(worst, sin_identity_residual(m))
    res_m = sin_identity_residual(MODULAR)
    exact = Fraction(5, 4) * Fraction(4, 5) == 1
    ok = worst <= mpf("1e-9") and res_m <= mpf("1e-60") and exact
    detail = ("max residual %s over 100 points, modular residual %s, "
              "modular algebra (5/4)*(4/5) = 1 %s"
              % (mp.nstr(worst, 4), mp.nstr(res_m, 4), exact))
    assert _report(4, ok, detail)


def test_acceptance_05_corner_decay():
    classes = [(1, 1), (2, 1), (3, 2), (5, 3), (8, 5), (13, 8), (21, 13)]
    heights = []
    angles = []
    for c in classes:
        rep = corner_exterior_angle(MODULAR, c, mpf("1e-30"))
        assert rep.converged
        heights.append(rep.height)
        angles.append(rep.exterior_angle)
    decreasing = all(a > b for a, b in zip(angles, angles[1:]))
    xs = [float(h) for h in heights]
    ys = [float(mp.log(a)) for a in angles]
    slope, _, r2 = oracles.linear_fit(xs, ys)
    ok = decreasing and r2 >= 0.99
    detail = ("angles strictly decreasing %s over heights 1..21, "
              "log-angle fit slope %.3f, R^2 %.5f"
              % (decreasing, slope, r2))
    assert _report(5, ok, detail)


def test_acceptance_06_strict_triangle():
    cache = {}

    def nrm(c):
        if c not in cache:
            cache[c] = norm_of_class(MODULAR, c)
        return cache[c]

    done = 0
    i = 0
    min_margin = mpf("inf")
    while done < 1000:
        u = (oracles.seeded_int(6, i, 0, -20, 20),
             oracles.seeded_int(6, i, 1, -20, 20))
        v = (oracles.seeded_int(6, i, 2, -20, 20),
             oracles.seeded_int(6, i, 3, -20, 20))
        i += 1
        if u == (0, 0) or v == (0, 0):
            continue
        if u[0] * v[1] - u[1] * v[0] == 0:
            continue
        s = (u[0] + v[0], u[1] + v[1])
        with workprec(256):
            margin = nrm(u) + nrm(v) - nrm(s)
            min_margin = min(min_margin, margin)
        done += 1
    ok = min_margin > mpf("1e-60")
    detail = ("1000 non-proportional pairs, min margin %s"
              % mp.nstr(min_margin, 6))
    assert _report(6, ok, detail)


def test_acceptance_07_cusp_asymptotics():
    deep = cusp_asymptotics([mpf("1e-3")], 256)[0]
    with workprec(256):
        ratio_ok = mpf("0.9") <= deep.ratio <= mpf("1.1")
        angle_gap = abs(deep.angle - mp.pi / 2)
    angle_ok = angle_gap <= mpf("0.01")
    svals = [mpf(1), mpf("0.5"), mpf("0.2"), mpf("0.1"), mpf("0.05")]
    pts = [cusp_point(s, 256) for s in svals]
    rows = area_along_path(pts, mpf("0.5")).rows
    lows = [r.area_lower for r in rows]
    increasing = all(a < b for a, b in zip(lows, lows[1:]))
    above_floor = all(r.area_lower > r.floor for r in rows)
    ok = ratio_ok and angle_ok and increasing and above_floor
    detail = ("ratio %s (want [0.9, 1.1]) %s, |angle - pi/2| = %s %s, "
              "area lower bounds increasing %s, above 1/(l l') floor %s"
              % (mp.nstr(deep.ratio, 8), ratio_ok, mp.nstr(angle_gap, 3),
                 angle_ok, increasing, above_floor))
    assert _report(7, ok, detail)


def test_acceptance_08_isosystolic_sampling():
    rep = isosystolic_sample(1000, 1)
    with workprec(256):
        bound = 2 * mp.acosh(mpf(3) / 2)
        under = rep.max_systole <= bound + mpf("1e-9")
        attained = abs(systole(MODULAR).systole_length - bound) < mpf("1e-70")
    ok = under and attained
    detail = ("1000 samples, max systole %s vs bound %s, modular attains "
              "the bound %s"
              % (mp.nstr(rep.max_systole, 10), mp.nstr(bound, 10), attained))
    assert _report(8, ok, detail)


def test_acceptance_09_flatness_probe():
    rep = flatness_probe(MODULAR, GOLDEN, 4, 20)
    ok = rep.passed and rep.order_checked == 4
    detail = ("golden slope, order %d at depth 20, %d samples, "
              "worst headroom %s"
              % (rep.order_checked, len(rep.samples), mp.nstr(rep.delta, 6)))
    assert _report(9, ok, detail)


def test_acceptance_10_determinism():
    runs = [
        ("ball", "--eps", "0.05", "--format", "json"),
        ("count", "--L", "12,25", "--threads", "4", "--format", "json"),
        ("verify", "--moduli", "random", "--n", "3", "--seed", "7",
         "--format", "json"),
        ("scan", "--cusp", "--s", "1,0.5"),
        ("scan", "--systole", "--n", "5", "--seed", "1", "--format", "json"),
    ]
    stable = True
    for argv in runs:
        a = _run(*argv)
        b = _run(*argv)
        stable = stable and a.returncode == b.returncode == 0 \
            and a.stdout == b.stdout
    serial = _run("count", "--L", "12,25")
    threaded = _run("count", "--L", "12,25", "--threads", "4")
    stable = stable and serial.stdout == threaded.stdout
    ok = stable
    detail = ("%d commands repeated byte-identically, threaded count "
              "matches serial" % len(runs))
    assert _report(10, ok, detail)
