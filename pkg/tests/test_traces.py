from mpmath import mp, mpf, workprec
import pytest
from hypothesis import given, strategies as st

from cusptorus.errors import (DegenerateLift, MarkoffViolation,
                              NonHyperbolicTrace, TraceTooSmall)
from cusptorus.traces import (Mat2, ModuliPoint, fricke_residual,
                              length_to_trace, lift_to_matrices,
                              markoff_child, trace_to_length, validate_triple)


def test_modular_point():
    m = ModuliPoint(3, 3, 3)
    assert m.triple == (3, 3, 3)
    assert m.is_integral()
    assert m.precision_bits == 256


def test_real_point():
    m = ModuliPoint(4.0, 4.0, 8 + mp.sqrt(32))
    assert not m.is_integral()


def test_non_hyperbolic_rejected():
    with pytest.raises(NonHyperbolicTrace):
        ModuliPoint(2, 3, 3)
    with pytest.raises(NonHyperbolicTrace):
        ModuliPoint(3, 3, -3)


def test_markoff_violation_rejected():
    with pytest.raises(MarkoffViolation):
        ModuliPoint(3, 3, 4)


def test_precision_floor():
    with pytest.raises(ValueError):
        ModuliPoint(3, 3, 3, precision_bits=32)


def test_equality_tracks_triple_and_precision():
    assert ModuliPoint(3, 3, 3) == ModuliPoint(3, 3, 3)
    assert ModuliPoint(3, 3, 3) != ModuliPoint(3, 3, 3, precision_bits=128)
    assert validate_triple(3, 3, 6).triple == (3, 3, 6)


@given(st.integers(0, 12), st.integers(0, 1))
def test_markoff_children_preserve_relation(steps, first):
    t = (3, 3, 3)
    which = ["left", "right"]
    for k in range(steps):
        t = markoff_child(*t, which[(first + k) % 2])
    x, y, z = t
    assert x * x + y * y + z * z == x * y * z


def test_markoff_child_examples():
    assert markoff_child(3, 3, 3, "left") == (3, 3, 6)
    assert markoff_child(3, 3, 6, "right") == (6, 3, 15)
    with pytest.raises(ValueError):
        markoff_child(3, 3, 3, "up")


def test_trace_length_roundtrip():
    with workprec(256):
        assert abs(trace_to_length(3) - mpf(
            "1.9248473002384138")) < mpf("1e-15")
        for t in (mpf("2.001"), mpf(3), mpf(100)):
            back = length_to_trace(trace_to_length(t))
            assert abs(back - t) < mpf("1e-70")
    with pytest.raises(TraceTooSmall):
        trace_to_length(1.5)


def test_mat2_algebra():
    A = Mat2(1, 1, 1, 2)
    B = Mat2(1, -1, -1, 2)
    assert A.det() == 1 and B.det() == 1
    assert (A * B).trace() == 3
    AI = A.inv()
    assert (A * AI).trace() == 2 and (A * AI).b == 0


def test_lift_matches_traces():
    with workprec(256):
        rx, ry = mpf("4.2"), mpf("5.1")
        rz = (rx * ry + mp.sqrt((rx * ry) ** 2 - 4 * (rx * rx + ry * ry))) / 2
    for m in (ModuliPoint(3, 3, 3), ModuliPoint(3, 3, 6),
              ModuliPoint(rx, ry, rz)):
        with workprec(m.precision_bits):
            A, B = lift_to_matrices(m)
            x, y, z = (mpf(v) for v in m.triple)
            assert abs(A.trace() - x) < mpf("1e-70")
            assert abs(B.trace() - y) < mpf("1e-70")
            assert abs((A * B).trace() - z) < mpf("1e-70")
            assert abs(A.det() - 1) < mpf("1e-70")
            assert abs(B.det() - 1) < mpf("1e-70")
            assert abs(fricke_residual(A, B)) < mpf("1e-70")


def test_lift_rejects_parabolic_generator():
    class Stub:
        triple = (mpf(2), mpf(10), mpf(10))
        precision_bits = 256

    with pytest.raises(DegenerateLift):
        lift_to_matrices(Stub())
