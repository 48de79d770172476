"""Exception hierarchy.

Validation failures derive from :class:`CurveError` (a ``ValueError``) so the
CLI can map them to exit code 1; numerical failures derive from
:class:`NoConvergence` and map to exit code 2.
"""


class CurveError(ValueError):
    """A curve or parameter set is outside the admissible class."""


class BadParameters(CurveError):
    pass


class AngleOrderError(CurveError):
    pass


class SectorTooWideError(CurveError):
    pass


class ClosureMismatchError(CurveError):
    pass


class NonPositiveRadiusError(CurveError):
    pass


class ReflexVertexError(CurveError):
    pass


class OrientationReversingError(CurveError):
    pass


class SingularMapError(CurveError):
    pass


class OutsideKernelError(CurveError):
    pass


class OutOfDomainError(CurveError):
    pass


class InvalidProbeError(CurveError):
    """A finite-difference probe left the class; retry with a smaller step."""


class NoConvergence(RuntimeError):
    pass
