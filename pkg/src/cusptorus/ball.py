"""The length norm on homology and certified geometry of its unit ball.

norm_of_class / norm_of_vector evaluate the norm at integer classes and at
real vectors; boundary_refine builds a two-sided polygonal sandwich of the
unit ball in interval arithmetic, so the reported area interval is certified
rather than estimated.  corner_exterior_angle and flatness_probe measure the
boundary's local shape: corners at rational slopes, flatness at quadratic
irrationals.

Certification scheme: boundary points c/l(c) are exact up to interval
rounding, the inscribed polygon gives the lower area, and each boundary arc
is trapped in the triangle cut off by extending the two adjacent chords, so
their sum bounds the area from above.  Both bounds are computed with mpmath
interval arithmetic at the moduli point's precision.
"""

import math
from collections import namedtuple
from fractions import Fraction

from mpmath import mp, iv, mpf, atan2, sqrt, log

from .errors import (ZeroClass, NonConvergence, PrecisionExhausted,
                     NotInTree)
from .traces import trace_to_length
from .farey import class_trace, farey_parents, _check_primitive

CornerReport = namedtuple("CornerReport", "cls exterior_angle height converged")
FlatnessReport = namedtuple("FlatnessReport",
                            "slope order_checked samples passed delta")


def _as_fraction(val):
    """Exact rational value of an int/float/Fraction/mpf component."""
    if isinstance(val, int):
        return Fraction(val)
    if isinstance(val, Fraction):
        return val
    if isinstance(val, float):
        if not math.isfinite(val):
            raise ValueError("vector components must be finite")
        return Fraction(val)
    if isinstance(val, mpf):
        if not mp.isfinite(val):
            raise ValueError("vector components must be finite")
        sign, man, exp, _ = val._mpf_
        r = Fraction(man) * (Fraction(2) ** exp)
        return -r if sign else r
    raise TypeError("unsupported component type %r" % type(val))


def _frac_mpf(fr):
    return mpf(fr.numerator) / mpf(fr.denominator)


class QuadraticIrrational(object):
    """(a + b*sqrt(d))/c with integer a, b, c and squarefree-needless d >= 2.

    Exactly comparable against rationals, which is what the boundary walk
    needs.  Rational values are refused: b = 0 or square d would name a
    corner point, not a flat one.
    """

    def __init__(self, a, b, c, d):
        if c == 0:
            raise ValueError("zero denominator")
        if b == 0:
            raise ValueError("rational value: b = 0")
        if d < 2 or math.isqrt(d) ** 2 == d:
            raise ValueError("rational value: d = %d is a perfect square" % d)
        if c < 0:
            a, b, c = -a, -b, -c
        g = math.gcd(math.gcd(abs(a), abs(b)), c)
        self.a, self.b, self.c, self.d = a // g, b // g, c // g, d

    def cmp_fraction(self, p, q):
        """Sign of self - p/q for integers p, q with q > 0."""
        # sign of (a q - c p) + b q sqrt(d), all integers
        s = self.a * q - self.c * p
        t = self.b * q
        if s >= 0 and t >= 0:
            return 1 if (s or t) else 0
        if s <= 0 and t <= 0:
            return -1
        ss, td = s * s, t * t * self.d
        if s > 0:
            return 1 if ss > td else (-1 if ss < td else 0)
        return -1 if ss > td else (1 if ss < td else 0)

    def value(self):
        """mpf value at the ambient precision."""
        return (self.a + self.b * sqrt(mpf(self.d))) / self.c

    def __repr__(self):
        return "QuadraticIrrational((%d + %d*sqrt(%d))/%d)" % (
            self.a, self.b, self.d, self.c)


def norm_of_class(m, h):
    """Length of the minimal multicurve in class h: gcd times the primitive
    geodesic length."""
    p, q = h
    if p == 0 and q == 0:
        raise ZeroClass("norm undefined at (0,0)")
    g = math.gcd(abs(p), abs(q))
    with mp.workprec(m.precision_bits):
        return g * trace_to_length(class_trace(m, (p // g, q // g)))


def _reflected(m):
    """Moduli point whose first-quadrant tree is this one's second-quadrant
    tree: (p,q) -> (-p,q) preserves traces between the two."""
    from .traces import ModuliPoint
    x, y, z = m.triple
    with mp.workprec(m.precision_bits):
        return ModuliPoint(x, y, x * y - z, precision_bits=m.precision_bits,
                           rtol=m.rtol)


def _bracket_walk(m, cmp_slope, vx, vy, tol, max_steps):
    """Shrinking two-sided bracket for the norm of direction (vx, vy) in the
    open first quadrant.  cmp_slope(med) gives the exact sign of
    slope(target) - slope(med).

    Upper bounds: v = alpha*u + beta*w over the enclosing Farey pair.
    Lower bounds: v = a*med - b*far across the mediant, so the reverse
    triangle inequality applies with the mediant's exact length.
    """
    x, y, z = m.triple
    u, tu = (1, 0), mpf(x)
    w, tw = (0, 1), mpf(y)
    tm = mpf(z)
    lower, upper = mpf(0), mpf("inf")
    for step in range(max_steps):
        med = (u[0] + w[0], u[1] + w[1])
        lu = trace_to_length(tu)
        lw = trace_to_length(tw)
        lm = trace_to_length(tm)
        det = u[0] * w[1] - u[1] * w[0]
        alpha = (vx * w[1] - vy * w[0]) / det
        beta = (u[0] * vy - u[1] * vx) / det
        upper = min(upper, alpha * lu + beta * lw)
        den = med[1] * u[0] - med[0] * u[1]
        a1 = (vy * u[0] - vx * u[1]) / den
        b1 = (med[0] * vy - med[1] * vx) / den
        if a1 >= 0 and b1 >= 0:
            lower = max(lower, a1 * lm - b1 * lu)
        den2 = med[1] * w[0] - med[0] * w[1]
        a2 = (vy * w[0] - vx * w[1]) / den2
        b2 = (med[0] * vy - med[1] * vx) / den2
        if a2 >= 0 and b2 >= 0:
            lower = max(lower, a2 * lm - b2 * lw)
        if upper - lower < tol:
            return (lower + upper) / 2
        sgn = cmp_slope(med)
        if sgn == 0:
            # exact rational hit: v is a multiple of med
            return (vx / med[0]) * lm
        if sgn > 0:
            tu, u, tm = tm, med, tm * tw - tu
        else:
            tw, w, tm = tm, med, tm * tu - tw
    raise NonConvergence(
        "norm bracket still %s wide after %d steps"
        % (mp.nstr(upper - lower, 6), max_steps))


def norm_of_vector(m, v, tol, max_steps=100000):
    """Norm of a real homology vector, within tol.

    Components are taken exactly (floats and mpfs are exact binary
    rationals); the walk compares slopes in exact integer arithmetic, so
    only the returned value is approximate.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    vx, vy = _as_fraction(v[0]), _as_fraction(v[1])
    if vx == 0 and vy == 0:
        raise ZeroClass("norm undefined at the zero vector")
    if vx < 0 or (vx == 0 and vy < 0):
        vx, vy = -vx, -vy
    x, y, z = m.triple
    tol = mpf(tol)
    bits = int(max(0, -mp.log(tol, 2))) + 64
    wp = max(m.precision_bits, bits)
    with mp.workprec(wp):
        if vy == 0:
            return _frac_mpf(vx) * trace_to_length(x)
        if vx == 0:
            return _frac_mpf(vy) * trace_to_length(y)
        if vy < 0:
            return norm_of_vector(_reflected(m), (vx, -vy), tol, max_steps)
        vxm, vym = _frac_mpf(vx), _frac_mpf(vy)

        def cmp_slope(med):
            cr = vy * med[0] - vx * med[1]
            return (cr > 0) - (cr < 0)

        return _bracket_walk(m, cmp_slope, vxm, vym, tol, max_steps)


def _norm_at_irrational_slope(m, sigma, tol, max_steps=100000):
    """Norm of (1, sigma) for a QuadraticIrrational slope in (0, inf)."""
    with mp.workprec(max(m.precision_bits, int(-mp.log(tol, 2)) + 64)):
        sv = sigma.value()
        if sv <= 0:
            raise ValueError("slope must be positive here")
        return _bracket_walk(m, lambda med: sigma.cmp_fraction(med[1], med[0]),
                             mpf(1), sv, tol, max_steps)


# ---------------------------------------------------------------------------
# certified sandwich

class BallApproximation(object):
    """Polygonal two-sided approximation of the unit ball.

    vertices: full boundary cycle, counterclockwise from (1,0), as
    (class, point) pairs with point = class / norm(class).
    extent_upper: certified upper bound on max(|u1|, |u2|) over the ball,
    which is what cap checks in the counting oracle consume.
    """

    def __init__(self, vertices, area_lower, area_upper, refinement_eps,
                 extent_upper):
        self.vertices = vertices
        self.area_lower = area_lower
        self.area_upper = area_upper
        self.refinement_eps = refinement_eps
        self.extent_upper = extent_upper

    def __repr__(self):
        return "BallApproximation(%d vertices, area [%s, %s])" % (
            len(self.vertices), mp.nstr(self.area_lower, 12),
            mp.nstr(self.area_upper, 12))


_Vert = namedtuple("_Vert", "cls t l P")


def _iv_length(t):
    h = t / 2
    return 2 * iv.log(h + iv.sqrt(h * h - 1))


def _make_vert(cls, t):
    l = _iv_length(t)
    return _Vert(cls, t, l, (iv.mpf(cls[0]) / l, iv.mpf(cls[1]) / l))


def _antipode(v):
    return _Vert((-v.cls[0], -v.cls[1]), v.t, v.l, (-v.P[0], -v.P[1]))


def _nonzero(val, what):
    if val.a <= 0 <= val.b:
        raise PrecisionExhausted("%s interval contains zero" % what)
    return val


def boundary_refine(m, eps, max_rounds=100000):
    """Refine the half boundary until the certified area gap is below eps.

    Vertices carry exact classes; per-interval difference traces make every
    mediant trace a single multiply.  The worst interval (largest certified
    gap) is split each round, which keeps the refinement order deterministic.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    with mp.workprec(m.precision_bits):
        eps = mpf(eps)
        target = eps * mpf("0.98")
    x, y, z = m.triple
    old_iv_prec = iv.prec
    iv.prec = m.precision_bits
    try:
        t_x, t_y, t_z = iv.mpf(x), iv.mpf(y), iv.mpf(z)
        zp = t_x * t_y - t_z
        # half boundary, counterclockwise; the last interval wraps to the
        # antipode of the first vertex
        verts = [_make_vert((1, 0), t_x), _make_vert((1, 1), t_z),
                 _make_vert((0, 1), t_y), _make_vert((-1, 1), zp)]
        # diffs[i] = trace of verts[i] - verts[i+1] (antipode at the wrap)
        diffs = [t_y, t_x, t_x, t_y]

        def vert_at(i):
            n = len(verts)
            if 0 <= i < n:
                return verts[i]
            if i < 0:
                return _antipode(verts[i + n])
            return _antipode(verts[i - n])

        def interval_gap(i):
            A = vert_at(i)
            B = vert_at(i + 1)
            prev = vert_at(i - 1)
            nxt = vert_at(i + 2)
            d1 = (A.P[0] - prev.P[0], A.P[1] - prev.P[1])
            d2 = (B.P[0] - nxt.P[0], B.P[1] - nxt.P[1])
            den = _nonzero(d1[0] * d2[1] - d1[1] * d2[0], "chord crossing")
            rx = B.P[0] - A.P[0]
            ry = B.P[1] - A.P[1]
            s = (rx * d2[1] - ry * d2[0]) / den
            qx = A.P[0] + s * d1[0]
            qy = A.P[1] + s * d1[1]
            ar = (qx - A.P[0]) * (B.P[1] - A.P[1]) \
                - (qy - A.P[1]) * (B.P[0] - A.P[0])
            return abs(ar) / 2, (qx, qy)

        rounds = 0
        while True:
            n = len(verts)
            gaps = [interval_gap(i)[0] for i in range(n)]
            total = 2 * sum(gaps)
            if total.b <= target:
                break
            rounds += 1
            if rounds > max_rounds:
                raise PrecisionExhausted(
                    "area gap %s not below %s after %d splits"
                    % (mp.nstr(mpf(total.b), 6), mp.nstr(eps, 6), max_rounds))
            i = max(range(n), key=lambda k: gaps[k].b)
            A = vert_at(i)
            B = vert_at(i + 1)
            mcls = (A.cls[0] + B.cls[0], A.cls[1] + B.cls[1])
            mt = A.t * B.t - diffs[i]
            verts.insert(i + 1, _make_vert(mcls, mt))
            diffs[i:i + 1] = [B.t, A.t]

        # final certified sums, fixed left-to-right order; interval
        # endpoints convert to plain numbers at the point's precision
        with mp.workprec(m.precision_bits):
            n = len(verts)
            full = [v.P for v in verts] + [(-v.P[0], -v.P[1]) for v in verts]
            acc = iv.mpf(0)
            for i in range(len(full)):
                x1, y1 = full[i]
                x2, y2 = full[(i + 1) % len(full)]
                acc += x1 * y2 - x2 * y1
            lower_iv = acc / 2
            gap_apex = [interval_gap(i) for i in range(n)]
            total = 2 * sum(g for g, _ in gap_apex)
            area_lower = lower_iv.a
            area_upper = (lower_iv + total).b

            # convexity certificate over the full cycle
            for i in range(len(full)):
                o = full[i]
                a = full[(i + 1) % len(full)]
                b = full[(i + 2) % len(full)]
                cr = (a[0] - o[0]) * (b[1] - o[1]) \
                    - (a[1] - o[1]) * (b[0] - o[0])
                if cr.a <= 0:
                    raise PrecisionExhausted(
                        "convex position not certified at vertex %d" % i)

            ext = mpf(0)
            for v in verts:
                ext = max(ext, abs(mpf(v.P[0].a)), abs(mpf(v.P[0].b)),
                          abs(mpf(v.P[1].a)), abs(mpf(v.P[1].b)))
            for _, (qx, qy) in gap_apex:
                ext = max(ext, abs(mpf(qx.a)), abs(mpf(qx.b)),
                          abs(mpf(qy.a)), abs(mpf(qy.b)))

            out = []
            for v in verts:
                out.append((v.cls, (mpf(v.P[0].mid), mpf(v.P[1].mid))))
            for v in verts:
                out.append(((-v.cls[0], -v.cls[1]),
                            (-mpf(v.P[0].mid), -mpf(v.P[1].mid))))
            return BallApproximation(out, mpf(area_lower), mpf(area_upper),
                                     eps, ext)
    finally:
        iv.prec = old_iv_prec


def area_interval(m, eps):
    """Certified (lower, upper) for the unit ball area, upper - lower <= eps."""
    ball = boundary_refine(m, eps)
    return ball.area_lower, ball.area_upper


# ---------------------------------------------------------------------------
# corners and flatness

def _side_neighbors(m, c):
    """Classes naming the two boundary arcs meeting at c, as (before, after)
    in counterclockwise order around c's representative."""
    p, q = c
    if p < 0 or (p == 0 and q < 0):
        p, q = -p, -q
    if (p, q) == (1, 0):
        return (0, 1), (0, -1)
    if (p, q) == (0, 1):
        return (1, 0), (-1, 0)
    if q < 0:
        # mixed-sign representative: mirror of the first-quadrant node
        pp, qq = p, -q
        if (pp, qq) == (1, 1):
            pu, pw = (1, 0), (0, 1)
        else:
            pu, pw = farey_parents((pp, qq))
        return (pu[0], -pu[1]), (pw[0], -pw[1])
    if (p, q) == (1, 1):
        return (1, 0), (0, 1)
    return farey_parents((p, q))


def corner_exterior_angle(m, c, tol, max_k=4096):
    """Exterior angle at the boundary vertex of class c, by chord limits.

    Chords run to the boundary points of k*c + u and k*c + w for the two
    Farey side neighbors u, w; the angle between incoming and outgoing chord
    directions converges geometrically in k, so k doubles until the change
    drops below tol.
    """
    _check_primitive(c)
    if tol <= 0:
        raise ValueError("tol must be positive")
    u, w = _side_neighbors(m, c)
    with mp.workprec(m.precision_bits):
        def bpoint(cls):
            l = trace_to_length(class_trace(m, cls))
            return (cls[0] / l, cls[1] / l)

        Pc = bpoint(c)
        prev_ang = None
        k = 1
        while k <= max_k:
            Pu = bpoint((k * c[0] + u[0], k * c[1] + u[1]))
            Pw = bpoint((k * c[0] + w[0], k * c[1] + w[1]))
            vin = (Pc[0] - Pu[0], Pc[1] - Pu[1])
            vout = (Pw[0] - Pc[0], Pw[1] - Pc[1])
            cr = vin[0] * vout[1] - vin[1] * vout[0]
            dt = vin[0] * vout[0] + vin[1] * vout[1]
            ang = abs(atan2(cr, dt))
            if prev_ang is not None and abs(ang - prev_ang) < tol:
                return CornerReport(tuple(c), ang,
                                    max(abs(c[0]), abs(c[1])), True)
            prev_ang = ang
            k *= 2
    raise NonConvergence(
        "corner angle at %s still moving at k=%d" % (tuple(c), max_k))


def flatness_probe(m, slope, N, depth):
    """Probe boundary flatness of order N at an irrational-slope point.

    Builds the local convex graph over the chord-limit support line from the
    walk's convergent boundary points; passed means every sample inside the
    empirically found delta obeys f(x) <= |x|^N.  Finite samples are
    evidence about the limit behavior, not a proof of it.
    """
    if not isinstance(slope, QuadraticIrrational):
        raise TypeError("rational slopes name corners; the boundary graph "
                        "there has a nonzero angle, not flatness")
    if N < 2:
        raise ValueError("N must be at least 2")
    if depth < 4:
        raise ValueError("depth must be at least 4")
    wp = max(m.precision_bits, 360)
    with mp.workprec(wp):
        sv = slope.value()
        if sv <= 0:
            raise ValueError("slope must lie in the open first quadrant")
        x, y, z = m.triple
        # convergent classes with traces along the slope's walk path
        path = []
        u, tu = (1, 0), mpf(x)
        w, tw = (0, 1), mpf(y)
        tm = mpf(z)
        for _ in range(depth + 9):
            med = (u[0] + w[0], u[1] + w[1])
            path.append((med, tm))
            if slope.cmp_fraction(med[1], med[0]) > 0:
                tu, u, tm = tm, med, tm * tw - tu
            else:
                tw, w, tm = tm, med, tm * tu - tw

        lstar = _norm_at_irrational_slope(m, slope, mpf(10) ** -70)
        Pstar = (1 / lstar, sv / lstar)

        def bpoint(entry):
            cls, t = entry
            l = trace_to_length(t)
            return (cls[0] / l, cls[1] / l)

        deep1 = bpoint(path[depth + 7])
        deep2 = bpoint(path[depth + 8])
        dv = (deep2[0] - deep1[0], deep2[1] - deep1[1])
        dn = sqrt(dv[0] ** 2 + dv[1] ** 2)
        dhat = (dv[0] / dn, dv[1] / dn)
        nhat = (-dhat[1], dhat[0])
        if -Pstar[0] * nhat[0] - Pstar[1] * nhat[1] < 0:
            nhat = (dhat[1], -dhat[0])

        samples = []
        for k in range(2, depth + 1):
            Q = bpoint(path[k])
            dx = Q[0] - Pstar[0]
            dy = Q[1] - Pstar[1]
            xj = dx * dhat[0] + dy * dhat[1]
            fj = dx * nhat[0] + dy * nhat[1]
            if fj < mpf("-1e-60"):
                raise PrecisionExhausted(
                    "sample below the support line by %s" % mp.nstr(fj, 6))
            samples.append((xj, fj))

        # delta: largest sampled |x| whose closed prefix all passes
        order = sorted(range(len(samples)), key=lambda i: abs(samples[i][0]))
        delta = None
        for i in order:
            xj, fj = samples[i]
            if fj <= abs(xj) ** N:
                delta = abs(xj)
            else:
                break
        return FlatnessReport(slope, N, samples, delta is not None, delta)
