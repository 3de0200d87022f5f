"""Exception hierarchy shared by every module of the package."""


class BourError(Exception):
    """Base class for all errors raised by :mod:`bour`."""


class ExcludedExponent(BourError, ValueError):
    """The family value m is one of -1, 0, 1 (logarithmic antiderivatives)."""


class BranchDomain(BourError, ValueError):
    """A real power of a negative (or zero) base was requested."""


class SingularPoint(BourError, ArithmeticError):
    """The parametrization is not an immersion at the requested point."""


class DegenerateNormal(BourError, ArithmeticError):
    """The normal vector is lightlike or vanishes."""


class PathThroughSingularity(BourError, ValueError):
    """A quadrature path touches the pole of the Weierstrass integrand."""


class DomainEdge(BourError, ValueError):
    """A finite-difference stencil leaves the patch domain."""


class EmptyRealizableDomain(BourError, ValueError):
    """Branch clipping removed every grid line of a sampling domain."""


class IoFailure(BourError, OSError):
    """Writing an export file failed."""
