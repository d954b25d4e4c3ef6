"""Upper half-plane geometry: axes, intersection angles, the sinh-sinh-sin
identity.

Geodesics are realized as axes of hyperbolic matrices acting by Moebius
maps.  Angles come from the cross-ratio of the four ideal endpoints after
normalizing one axis to (0, infinity); the convention is fixed so that the
cosine formula with tr(M1*M2) holds with sign.  All functions run at the
ambient mpmath precision; sin_identity_residual wraps its work in the
moduli point's precision.
"""

from collections import namedtuple

from mpmath import mp, mpf, sqrt, acos, sinh

from .errors import NotHyperbolic, DisjointAxes
from .traces import trace_to_length, lift_to_matrices

GeodesicAxis = namedtuple("GeodesicAxis",
                          "fixed_minus fixed_plus translation_length")
IntersectionAngle = namedtuple("IntersectionAngle", "theta crossing_point")

_INF = mpf("inf")


def axis_of(M):
    """Axis of a hyperbolic matrix: repelling endpoint (fixed_minus),
    attracting endpoint (fixed_plus), translation length.

    Fixed points are the roots of c*w^2 + (d-a)*w - b = 0; infinity is
    represented as mpf('inf').
    """
    t = M.trace()
    abst = abs(mpf(t))
    if abst <= 2:
        raise NotHyperbolic("trace %s has no axis" % mp.nstr(mpf(t), 8))
    a, b, c, d = M.a, M.b, M.c, M.d
    if t < 0:
        # same Moebius action; normalize so the big eigenvalue exceeds 1
        a, b, c, d = -a, -b, -c, -d
    s = sqrt(abst * abst - 4)
    if c != 0:
        att = ((a - d) + s) / (2 * c)
        rep = ((a - d) - s) / (2 * c)
    else:
        other = mpf(b) / (d - a)
        if abs(a) > abs(d):
            att, rep = _INF, other
        else:
            att, rep = other, _INF
    return GeodesicAxis(rep, att, trace_to_length(abst))


def _normalizer(rep, att):
    """Moebius map sending rep -> 0 and att -> infinity, as a callable on
    extended reals."""
    if att == _INF:
        return lambda w: mpf(1) if w == _INF else w - rep
    if rep == _INF:
        return lambda w: mpf(0) if w == _INF else 1 / (w - att)
    return lambda w: mpf(1) if w == _INF else (w - rep) / (w - att)


def _circle_of(axis):
    """(center, radius) of the axis semicircle, or ('line', x0) if vertical."""
    e1, e2 = axis.fixed_minus, axis.fixed_plus
    if e1 == _INF or e2 == _INF:
        finite = e2 if e1 == _INF else e1
        return ("line", finite)
    return ("circle", ((e1 + e2) / 2, abs(e2 - e1) / 2))


def intersection_angle(M1, M2):
    """Angle in (0, pi) at the crossing of the two axes.

    Normalizes axis 1 to (0, infinity); with u, v the images of M2's
    attracting and repelling endpoints, the axes cross iff u*v < 0 and
    cos(theta) = (u + v)/(u - v).  That sign convention pairs theta with
    tr(M1*M2) in the cosine formula (the complementary angle pairs with
    tr(M1*M2^-1)).
    """
    ax1 = axis_of(M1)
    ax2 = axis_of(M2)
    ends1 = (ax1.fixed_minus, ax1.fixed_plus)
    ends2 = (ax2.fixed_minus, ax2.fixed_plus)
    for e in ends1:
        if e in ends2:
            raise DisjointAxes("axes share the boundary point %s" % e)
    T = _normalizer(ax1.fixed_minus, ax1.fixed_plus)
    u = T(ax2.fixed_plus)
    v = T(ax2.fixed_minus)
    if u * v >= 0:
        raise DisjointAxes("axis endpoints do not interleave")
    costh = (u + v) / (u - v)
    if costh > 1:
        costh = mpf(1)
    elif costh < -1:
        costh = mpf(-1)
    theta = acos(costh)

    g1 = _circle_of(ax1)
    g2 = _circle_of(ax2)
    if g1[0] == "line" and g2[0] == "line":
        raise DisjointAxes("parallel vertical axes")
    if g1[0] == "line":
        x0 = g1[1]
        ctr, rad = g2[1]
        py = sqrt(rad * rad - (x0 - ctr) ** 2)
        point = (x0, py)
    elif g2[0] == "line":
        x0 = g2[1]
        ctr, rad = g1[1]
        py = sqrt(rad * rad - (x0 - ctr) ** 2)
        point = (x0, py)
    else:
        c1, r1 = g1[1]
        c2, r2 = g2[1]
        px = (r1 * r1 - r2 * r2 + c2 * c2 - c1 * c1) / (2 * (c2 - c1))
        py = sqrt(r1 * r1 - (px - c1) ** 2)
        point = (px, py)
    return IntersectionAngle(theta, point)


def sin_identity_residual(m):
    """|sinh(l_a/2) * sinh(l_b/2) * sin(theta) - 1| for the lifted generator
    pair; exactly zero in the algebra, so the value measures numerics."""
    with mp.workprec(m.precision_bits):
        A, B = lift_to_matrices(m)
        theta = intersection_angle(A, B).theta
        x, y, _ = m.triple
        sa = sqrt((mpf(x) / 2) ** 2 - 1)
        sb = sqrt((mpf(y) / 2) ** 2 - 1)
        return abs(sa * sb * mp.sin(theta) - 1)


def full_length_product(m):
    """sinh(l_a) * sinh(l_b) * sin(theta) with full lengths.

    Reported alongside the half-length residual for comparison; this
    product is not an identity (it is 9.0 at the (3,3,3) point) and nothing
    asserts it.
    """
    with mp.workprec(m.precision_bits):
        A, B = lift_to_matrices(m)
        theta = intersection_angle(A, B).theta
        x, y, _ = m.triple
        la = trace_to_length(x)
        lb = trace_to_length(y)
        return sinh(la) * sinh(lb) * mp.sin(theta)