from fractions import Fraction

from mpmath import mp, mpf, workprec
import pytest
from hypothesis import given, settings, strategies as st

from cusptorus.ball import (QuadraticIrrational, _norm_at_irrational_slope,
                            area_interval, boundary_refine,
                            corner_exterior_angle, flatness_probe,
                            norm_of_class, norm_of_vector)
from cusptorus.errors import NonConvergence, ZeroClass
from cusptorus.moduli import random_moduli_point
from cusptorus.traces import ModuliPoint, trace_to_length

MODULAR = ModuliPoint(3, 3, 3)

GOLDEN = QuadraticIrrational(1, 1, 2, 5)

# reference value for the norm of (1, (1+sqrt(5))/2) on the modular torus,
# from a 70-digit bracket run
GOLDEN_NORM = mpf("2.8973455052746653")


def test_norm_of_class_values():
    with workprec(256):
        assert abs(norm_of_class(MODULAR, (1, 0))
                   - mpf("1.9248473002384138")) < mpf("1e-15")
        assert abs(norm_of_class(MODULAR, (2, 1))
                   - mpf("3.5254943480781721")) < mpf("1e-15")
        assert abs(norm_of_class(MODULAR, (1, -1))
                   - mpf("3.5254943480781721")) < mpf("1e-15")
        # non-primitive classes scale by the gcd
        assert abs(norm_of_class(MODULAR, (2, 0))
                   - 2 * norm_of_class(MODULAR, (1, 0))) < mpf("1e-70")
    with pytest.raises(ZeroClass):
        norm_of_class(MODULAR, (0, 0))


def test_norm_of_vector_rational_directions():
    tol = mpf("1e-30")
    with workprec(256):
        lc = norm_of_class(MODULAR, (2, 1))
        assert abs(norm_of_vector(MODULAR, (2, 1), tol) - lc) < mpf("1e-25")
        assert abs(norm_of_vector(MODULAR, (2.0, 1.0), tol) - lc) < mpf("1e-25")
        assert abs(norm_of_vector(MODULAR, (0.5, 0.25), tol)
                   - lc / 4) < mpf("1e-25")
        assert abs(norm_of_vector(MODULAR, (-2, -1), tol) - lc) < mpf("1e-25")
        assert abs(norm_of_vector(MODULAR, (1, -1), tol)
                   - norm_of_class(MODULAR, (1, -1))) < mpf("1e-25")
        assert abs(norm_of_vector(MODULAR, (0, 3), tol)
                   - 3 * norm_of_class(MODULAR, (0, 1))) < mpf("1e-25")
    with pytest.raises(ZeroClass):
        norm_of_vector(MODULAR, (0, 0), tol)
    with pytest.raises(ValueError):
        norm_of_vector(MODULAR, (1, 1), 0)


def test_norm_of_vector_homogeneous_and_symmetric():
    tol = mpf("1e-20")
    with workprec(256):
        base = norm_of_vector(MODULAR, (Fraction(1), Fraction(7, 5)), tol)
        scaled = norm_of_vector(MODULAR, (Fraction(3), Fraction(21, 5)), tol)
        assert abs(scaled - 3 * base) < mpf("1e-15")


def test_golden_norm_against_reference():
    got = _norm_at_irrational_slope(MODULAR, GOLDEN, mpf("1e-6"))
    assert abs(got - GOLDEN_NORM) < mpf("1e-6")
    tight = _norm_at_irrational_slope(MODULAR, GOLDEN, mpf("1e-20"))
    assert abs(tight - GOLDEN_NORM) < mpf("1e-15")


def test_quadratic_irrational_comparisons():
    assert GOLDEN.cmp_fraction(1, 1) > 0      # phi > 1
    assert GOLDEN.cmp_fraction(2, 1) < 0      # phi < 2
    assert GOLDEN.cmp_fraction(8, 5) > 0      # phi > 8/5
    assert GOLDEN.cmp_fraction(13, 8) < 0     # phi < 13/8
    assert GOLDEN.cmp_fraction(21, 13) > 0    # phi > 21/13
    with workprec(300):
        v = GOLDEN.value()
        assert abs(v - (1 + mp.sqrt(5)) / 2) < mpf("1e-80")


@settings(deadline=None, max_examples=60)
@given(st.integers(1, 400), st.integers(1, 400))
def test_quadratic_irrational_cmp_matches_value(p, q):
    with workprec(300):
        v = GOLDEN.value()
        diff = v - mpf(p) / q
    want = (diff > 0) - (diff < 0)
    assert GOLDEN.cmp_fraction(p, q) == want


def test_quadratic_irrational_rejects_rationals():
    with pytest.raises(ValueError):
        QuadraticIrrational(1, 0, 2, 5)
    with pytest.raises(ValueError):
        QuadraticIrrational(1, 1, 2, 4)
    with pytest.raises(ValueError):
        QuadraticIrrational(1, 1, 0, 5)


def test_boundary_refine_modular_frozen():
    ball = boundary_refine(MODULAR, mpf("0.005"))
    assert mp.nstr(ball.area_lower, 12) == "0.891717917125"
    assert mp.nstr(ball.area_upper, 12) == "0.895895175011"
    assert ball.area_upper - ball.area_lower <= mpf("0.005")
    assert len(ball.vertices) == 36
    assert ball.vertices[0][0] == (1, 0)
    # full cycle covers antipodes
    assert ball.vertices[18][0] == (-1, 0)


def test_boundary_refine_tightens_monotonically():
    loose = boundary_refine(MODULAR, mpf("0.05"))
    tight = boundary_refine(MODULAR, mpf("0.005"))
    assert tight.area_lower >= loose.area_lower
    assert tight.area_upper <= loose.area_upper
    fine = area_interval(MODULAR, mpf("1e-6"))
    assert mp.nstr(fine[0], 15) == "0.891803159966189"
    assert mp.nstr(fine[1], 15) == "0.891804098886903"


def test_boundary_vertices_convex_and_on_ball():
    ball = boundary_refine(MODULAR, mpf("0.01"))
    pts = [P for _, P in ball.vertices]
    n = len(pts)
    with workprec(256):
        for i in range(n):
            o = pts[i]
            a = pts[(i + 1) % n]
            b = pts[(i + 2) % n]
            cr = (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
            assert cr > 0
        for cls, P in ball.vertices:
            l = norm_of_class(MODULAR, cls)
            assert abs(P[0] * l - cls[0]) < mpf("1e-40")
            assert abs(P[1] * l - cls[1]) < mpf("1e-40")


def test_extent_covers_vertices():
    ball = boundary_refine(MODULAR, mpf("0.5"))
    with workprec(256):
        # (2,1)/len sticks out past 1/len(1,0), so the extent must exceed it
        assert ball.extent_upper >= 2 / norm_of_class(MODULAR, (2, 1))
        for _, P in ball.vertices:
            assert max(abs(P[0]), abs(P[1])) <= ball.extent_upper


def test_boundary_refine_rejects_bad_eps():
    with pytest.raises(ValueError):
        boundary_refine(MODULAR, 0)


def test_boundary_refine_random_point():
    m = random_moduli_point(3, 1)
    ball = boundary_refine(m, mpf("0.05"))
    assert ball.area_upper - ball.area_lower <= mpf("0.05")
    assert ball.area_lower > 0
    with workprec(m.precision_bits):
        la = trace_to_length(m.triple[0])
        lb = trace_to_length(m.triple[1])
        assert ball.area_lower > 1 / (la * lb)


def test_corner_angles():
    rep = corner_exterior_angle(MODULAR, (1, 0), mpf("1e-12"))
    assert rep.converged
    assert abs(rep.exterior_angle - mpf("0.485776733223823")) < mpf("1e-10")
    rep2 = corner_exterior_angle(MODULAR, (-1, 0), mpf("1e-12"))
    assert abs(rep2.exterior_angle - rep.exterior_angle) < mpf("1e-30")
    deep = corner_exterior_angle(MODULAR, (21, 13), mpf("1e-12"))
    assert deep.height == 21
    assert deep.exterior_angle < mpf("1e-13")
    with pytest.raises(NonConvergence):
        corner_exterior_angle(MODULAR, (1, 0), mpf("1e-40"), max_k=4)
    with pytest.raises(ValueError):
        corner_exterior_angle(MODULAR, (1, 0), 0)


def test_flatness_probe_golden():
    rep = flatness_probe(MODULAR, GOLDEN, 4, 20)
    assert rep.passed
    assert rep.delta is not None and rep.delta > 0
    assert rep.order_checked == 4
    assert len(rep.samples) == 19


def test_flatness_probe_validation():
    with pytest.raises(TypeError):
        flatness_probe(MODULAR, 1.618, 4, 20)
    with pytest.raises(ValueError):
        flatness_probe(MODULAR, GOLDEN, 1, 20)
    with pytest.raises(ValueError):
        flatness_probe(MODULAR, GOLDEN, 4, 3)
