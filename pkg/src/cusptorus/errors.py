"""Error taxonomy shared across the package.

Every domain failure raises a subclass of CuspTorusError so the CLI can map
library errors to exit code 2 uniformly.
"""


class CuspTorusError(Exception):
    pass


class MarkoffViolation(CuspTorusError):
    """Trace triple does not satisfy x^2 + y^2 + z^2 = x*y*z within tolerance."""


class NonHyperbolicTrace(CuspTorusError):
    """Some coordinate of a trace triple is <= 2."""


class TraceTooSmall(CuspTorusError):
    """trace_to_length called with t < 2."""


class DegenerateLift(CuspTorusError):
    """Matrix lift impossible (eigenvalue 1, i.e. x = 2)."""


class NotInTree(CuspTorusError):
    """Class has no Farey parents (axes and the root are tree seeds)."""


class DepthExceeded(CuspTorusError):
    """Tree descent hit the depth cap; usually a precision or bound problem."""


class ZeroClass(CuspTorusError):
    """The zero homology class has no norm."""


class NonConvergence(CuspTorusError):
    """Iterative bracket or chord limit failed to reach tolerance."""


class PrecisionExhausted(CuspTorusError):
    """Requested refinement cannot be certified at the working precision."""


class NotHyperbolic(CuspTorusError):
    """Matrix with |trace| <= 2 has no axis."""


class DisjointAxes(CuspTorusError):
    """Axis endpoints do not interleave; no crossing point."""


class CapTooSmall(CuspTorusError):
    """Brute-force search box provably misses classes within the length bound."""


class ReductionDiverged(CuspTorusError):
    """Systole reduction exceeded its step cap."""
