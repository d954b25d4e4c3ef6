"""Trace coordinates for hyperbolic once-punctured tori.

A marked hyperbolic structure is recorded by the traces (x, y, z) of a
generator pair (A, B) and their product AB.  The commutator of a cusped
torus's generators is parabolic with trace -2, so the triple satisfies the
Markoff equation x^2 + y^2 + z^2 = x*y*z, and every coordinate exceeds 2.

Deciding precision: integer triples stay exact Python ints through all tree
recursion (traces grow doubly exponentially with depth, far past float64
range); everything else is mpmath arbitrary precision at the point's
configured mantissa width.
"""

from mpmath import mp, mpf, acosh, cosh, sqrt

from .errors import (MarkoffViolation, NonHyperbolicTrace, TraceTooSmall,
                     DegenerateLift)

DEFAULT_PRECISION_BITS = 256
DEFAULT_RTOL = mpf("1e-12")


def _as_number(v, prec):
    """ints stay exact; everything else becomes an mpf at prec bits."""
    if isinstance(v, int) and not isinstance(v, bool):
        return v
    with mp.workprec(prec):
        return mpf(v)


class ModuliPoint:
    """A point of moduli space: validated trace triple plus working precision.

    Immutable value object; all operations on it are pure functions, safe to
    share across threads.
    """

    def __init__(self, x, y, z, precision_bits=DEFAULT_PRECISION_BITS,
                 rtol=DEFAULT_RTOL):
        if precision_bits < 64:
            raise ValueError("precision_bits must be >= 64")
        self.precision_bits = int(precision_bits)
        self.rtol = mpf(rtol)
        x = _as_number(x, self.precision_bits)
        y = _as_number(y, self.precision_bits)
        z = _as_number(z, self.precision_bits)
        if not (x > 2 and y > 2 and z > 2):
            raise NonHyperbolicTrace(
                "all traces must exceed 2, got (%s, %s, %s)" % (x, y, z))
        with mp.workprec(self.precision_bits):
            residual = x * x + y * y + z * z - x * y * z
            if abs(residual) > mpf(rtol) * abs(x * y * z):
                raise MarkoffViolation(
                    "x^2+y^2+z^2 - xyz = %s exceeds rtol %s"
                    % (mp.nstr(residual, 8), mp.nstr(mpf(rtol), 8)))
        self.x, self.y, self.z = x, y, z

    @property
    def triple(self):
        return (self.x, self.y, self.z)

    def is_integral(self):
        return all(isinstance(v, int) for v in self.triple)

    def __eq__(self, other):
        return (isinstance(other, ModuliPoint) and self.triple == other.triple
                and self.precision_bits == other.precision_bits)

    def __repr__(self):
        return "ModuliPoint(%s, %s, %s, precision_bits=%d)" % (
            self.x, self.y, self.z, self.precision_bits)


def validate_triple(x, y, z, rtol=DEFAULT_RTOL,
                    precision_bits=DEFAULT_PRECISION_BITS):
    """Check the Markoff relation and hyperbolicity; return a ModuliPoint.

    Raises NonHyperbolicTrace if some coordinate is <= 2, MarkoffViolation if
    the relation fails at relative tolerance rtol.
    """
    return ModuliPoint(x, y, z, precision_bits=precision_bits, rtol=rtol)


def markoff_child(x, y, z, which):
    """One step down the triple tree.

    left  -> (x, z, x*z - y)
    right -> (z, y, y*z - x)

    Both children satisfy the Markoff relation exactly in exact arithmetic:
    the new trace is the second root of Z^2 - (t1*t2) Z + (t1^2 + t2^2) = 0.
    """
    if which == "left":
        return (x, z, x * z - y)
    if which == "right":
        return (z, y, y * z - x)
    raise ValueError("which must be 'left' or 'right'")


def trace_to_length(t):
    """Geodesic length from the trace: 2*arccosh(t/2).

    Evaluated at the ambient mpmath precision; callers holding a ModuliPoint
    should wrap in mp.workprec(point.precision_bits).
    """
    if t < 2:
        raise TraceTooSmall("trace %s < 2 is not a closed geodesic" % (t,))
    return 2 * acosh(mpf(t) / 2)


def length_to_trace(l):
    """Inverse of trace_to_length: 2*cosh(l/2)."""
    return 2 * cosh(mpf(l) / 2)


class Mat2:
    """Real 2x2 matrix, determinant one by convention (not enforced here)."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        self.a, self.b, self.c, self.d = a, b, c, d

    def trace(self):
        return self.a + self.d

    def det(self):
        return self.a * self.d - self.b * self.c

    def inv(self):
        # determinant-one inverse; no division
        return Mat2(self.d, -self.b, -self.c, self.a)

    def __mul__(self, other):
        return Mat2(self.a * other.a + self.b * other.c,
                    self.a * other.b + self.b * other.d,
                    self.c * other.a + self.d * other.c,
                    self.c * other.b + self.d * other.d)

    def __repr__(self):
        return "Mat2(%s, %s, %s, %s)" % (self.a, self.b, self.c, self.d)


def fricke_residual(A, B):
    """tr(A B A^-1 B^-1) + 2; zero exactly when the commutator is parabolic.

    By the Fricke relation this equals
    tr(A)^2 + tr(B)^2 + tr(AB)^2 - tr(A) tr(B) tr(AB) for det-one matrices.
    """
    comm = A * B * A.inv() * B.inv()
    return comm.trace() + 2


def lift_to_matrices(m):
    """An explicit determinant-one pair (A, B) with the point's traces.

    A = diag(lam, 1/lam) with lam + 1/lam = x and lam > 1;
    B = [[a, 1], [a*d - 1, d]] with a = (z - y/lam)/(lam - 1/lam), d = y - a.
    Then tr A = x, tr B = y, tr AB = z and the commutator has trace -2.
    """
    with mp.workprec(m.precision_bits):
        x, y, z = (mpf(v) for v in m.triple)
        if x == 2:
            raise DegenerateLift("x = 2 gives a parabolic A")
        lam = (x + sqrt(x * x - 4)) / 2
        a = (z - y / lam) / (lam - 1 / lam)
        d = y - a
        A = Mat2(lam, mpf(0), mpf(0), 1 / lam)
        B = Mat2(a, mpf(1), a * d - 1, d)
        return A, B
