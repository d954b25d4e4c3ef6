"""Length norm on the homology of a hyperbolic once-punctured torus.

Moduli points are Markoff trace triples; primitive homology classes name
simple closed geodesics.  The package computes class lengths through the
Stern-Brocot trace recursion, builds certified polygonal approximations of
the norm's unit ball, verifies the trace and angle identities behind the
construction, and reproduces the quadratic counting law for geodesics by
length.
"""

from .ball import (BallApproximation, CornerReport, FlatnessReport,
                   QuadraticIrrational, area_interval, boundary_refine,
                   corner_exterior_angle, flatness_probe, norm_of_class,
                   norm_of_vector)
from .counting import (AsymptoticReport, AsymptoticRow, CountReport,
                       asymptotic_report, brute_force_count, count_primitive,
                       count_total)
from .errors import (CapTooSmall, CuspTorusError, DegenerateLift,
                     DepthExceeded, DisjointAxes, MarkoffViolation,
                     NonConvergence, NonHyperbolicTrace, NotHyperbolic,
                     NotInTree, PrecisionExhausted, ReductionDiverged,
                     TraceTooSmall, ZeroClass)
from .farey import (FareyNode, christoffel_word, class_trace,
                    enumerate_classes, farey_parents, quadrant_roots,
                    word_matrix)
from .halfplane import (GeodesicAxis, IntersectionAngle, axis_of,
                        full_length_product, intersection_angle,
                        sin_identity_residual)
from .moduli import (CuspRow, IsosystolicReport, SystoleReport,
                     area_along_path, cusp_asymptotics, cusp_point,
                     cusp_triple, isosystolic_sample, random_moduli_point,
                     systole)
from .traces import (DEFAULT_PRECISION_BITS, Mat2, ModuliPoint,
                     fricke_residual, length_to_trace, lift_to_matrices,
                     markoff_child, trace_to_length, validate_triple)

__version__ = "0.1.0"
