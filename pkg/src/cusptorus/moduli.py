"""Scans across the moduli space of hyperbolic once-punctured tori.

Trace triples (x, y, z) with x^2 + y^2 + z^2 = xyz, all entries above 2,
parametrize the complete hyperbolic structures.  The cusp family
x = 2 cosh(s/2), y = z = x / sqrt(x - 2) follows the path where the geodesic
of length s pinches; the sampler draws (x, y) uniformly from a box and
completes z, giving reproducible random structures for spot checks.
"""

from collections import namedtuple
from hashlib import sha256

from mpmath import mp, mpf, workprec

from .ball import boundary_refine
from .errors import ReductionDiverged
from .halfplane import intersection_angle
from .traces import (DEFAULT_PRECISION_BITS, ModuliPoint, lift_to_matrices,
                     trace_to_length)

SystoleReport = namedtuple("SystoleReport",
                           "reduced_triple systole_length reduction_steps")

SampleRow = namedtuple("SampleRow", "index x y z systole")

IsosystolicReport = namedtuple("IsosystolicReport", "rows max_systole bound")

CuspRow = namedtuple("CuspRow", "s len_gamma len_gamma_prime ratio angle")

AreaRow = namedtuple("AreaRow", "area_lower area_upper floor")

AreaPathReport = namedtuple("AreaPathReport", "rows second_differences")

# reduction stalls are cut off here; valid triples reduce in far fewer steps
_MAX_REDUCTION_STEPS = 10000


def cusp_triple(s, precision_bits=DEFAULT_PRECISION_BITS):
    """Trace triple on the pinching path where (1,0) has length s."""
    with workprec(precision_bits):
        sm = mpf(s)
        if not sm > 0:
            raise ValueError("pinching length must be positive")
        x = 2 * mp.cosh(sm / 2)
        y = x / mp.sqrt(x - 2)
        return x, y, y


def cusp_point(s, precision_bits=DEFAULT_PRECISION_BITS):
    x, y, z = cusp_triple(s, precision_bits)
    return ModuliPoint(x, y, z, precision_bits=precision_bits)


def systole(m):
    """Reduce the triple by trace flips and read off the shortest length.

    Each step replaces the largest trace t by u*v - t, the other root of its
    Markoff quadratic, whenever that is a genuine decrease.  The reduced
    minimum trace gives the systole.  Decreases below one part in 1e30 stop
    the loop early so near-stationary real triples cannot spin.
    """
    with workprec(m.precision_bits):
        t = list(m.triple)
        steps = 0
        while True:
            if steps >= _MAX_REDUCTION_STEPS:
                raise ReductionDiverged(
                    "no reduced triple after %d flips" % steps)
            i = max(range(3), key=lambda j: t[j])
            u, v = t[(i + 1) % 3], t[(i + 2) % 3]
            w = u * v - t[i]
            if w >= t[i] or (t[i] - w) <= abs(t[i]) * mpf("1e-30"):
                break
            t[i] = w
            steps += 1
        return SystoleReport(tuple(t), trace_to_length(min(t)), steps)


def _u64(seed, i, j):
    h = sha256(("%s|%d|%d" % (seed, i, j)).encode()).digest()
    return int.from_bytes(h[:8], "big") / 2.0 ** 64


def random_moduli_point(seed, index, precision_bits=DEFAULT_PRECISION_BITS):
    """Seeded draw of a moduli point, stable across runs and platforms.

    Draws (x, y) uniformly from [2.05, 12]^2 as doubles through a SHA-256
    counter, rejecting pairs whose completion quadratic has no real root,
    then takes z as the larger root.
    """
    j = 0
    while True:
        ux = _u64(seed, index, j)
        uy = _u64(seed, index, j + 1)
        xf = 2.05 + ux * (12.0 - 2.05)
        yf = 2.05 + uy * (12.0 - 2.05)
        with workprec(precision_bits):
            x, y = mpf(xf), mpf(yf)
            disc = (x * y) ** 2 - 4 * (x * x + y * y)
            if disc > 0:
                z = (x * y + mp.sqrt(disc)) / 2
                return ModuliPoint(x, y, z, precision_bits=precision_bits)
        j += 2


def isosystolic_sample(n, seed, precision_bits=DEFAULT_PRECISION_BITS):
    """Systoles of n seeded random structures against the extremal bound.

    The hexagonal point (3,3,3) maximizes the systole at 2 arccosh(3/2);
    every sampled systole must stay below that bound plus a hair of
    arithmetic slack, and the report carries the observed maximum.
    """
    n = int(n)
    if n < 1:
        raise ValueError("sample size must be at least 1")
    rows = []
    for i in range(n):
        m = random_moduli_point(seed, i, precision_bits)
        rep = systole(m)
        x, y, z = m.triple
        rows.append(SampleRow(i, x, y, z, rep.systole_length))
    with workprec(precision_bits):
        bound = 2 * mp.acosh(mpf(3) / 2)
        max_sys = max(row.systole for row in rows)
        if max_sys > bound + mpf("1e-9"):
            raise RuntimeError(
                "sampled systole %s exceeds the extremal bound %s"
                % (mp.nstr(max_sys, 12), mp.nstr(bound, 12)))
    return IsosystolicReport(rows, max_sys, bound)


def cusp_asymptotics(s_values, precision_bits=DEFAULT_PRECISION_BITS):
    """Row per pinching parameter: lengths, their ratio, crossing angle.

    As s decreases, len(gamma') should track 2|log s| and the crossing angle
    should approach a right angle.  The ratio column is len(gamma') over
    2|log s|, infinite at s = 1 where the denominator vanishes.
    """
    s_values = list(s_values)
    if not s_values:
        raise ValueError("need at least one pinching parameter")
    for prev, cur in zip(s_values, s_values[1:]):
        if not cur < prev:
            raise ValueError("pinching parameters must strictly decrease")
    rows = []
    for s in s_values:
        m = cusp_point(s, precision_bits)
        with workprec(precision_bits):
            sm = mpf(s)
            if not sm > 0:
                raise ValueError("pinching parameters must be positive")
            lg = trace_to_length(m.triple[0])
            lgp = trace_to_length(m.triple[1])
            den = 2 * abs(mp.log(sm))
            ratio = lgp / den if den > 0 else mp.inf
            a, b = lift_to_matrices(m)
            theta = intersection_angle(a, b).theta
            folded = min(theta, mp.pi - theta)
        rows.append(CuspRow(sm, lg, lgp, ratio, folded))
    return rows


def area_along_path(path, eps):
    """Certified ball areas along a list of moduli points.

    Each row pairs the certified interval with the coarse floor
    1/(len(1,0) * len(0,1)) that the area can never undercut.  Second
    differences of the interval midpoints come along for judging convexity
    of the area as a function of position on the path.
    """
    path = list(path)
    if not path:
        raise ValueError("need at least one moduli point")
    rows = []
    mids = []
    for m in path:
        ball = boundary_refine(m, mpf(eps))
        with workprec(m.precision_bits):
            la = trace_to_length(m.triple[0])
            lb = trace_to_length(m.triple[1])
            floor = 1 / (la * lb)
            mids.append((mpf(ball.area_lower) + mpf(ball.area_upper)) / 2)
        rows.append(AreaRow(ball.area_lower, ball.area_upper, floor))
    seconds = [mids[i - 1] - 2 * mids[i] + mids[i + 1]
               for i in range(1, len(mids) - 1)]
    return AreaPathReport(rows, seconds)
