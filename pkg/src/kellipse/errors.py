"""Exception hierarchy shared by the kellipse modules."""


class KEllipseError(Exception):
    """Base class for all errors raised by this package."""


class NotOnCurveError(KEllipseError, ValueError):
    pass


class NotPerfectSquareError(KEllipseError, ValueError):
    pass


class CommonComponentError(KEllipseError, ValueError):
    """Two polynomials share a factor, so their resultant vanishes identically."""


class ConvergenceError(KEllipseError, RuntimeError):
    pass


class InterpolationError(KEllipseError, RuntimeError):
    pass


class NonGenericError(KEllipseError):
    """The configuration violates an assumption that holds for generic foci/radius."""


class HigherMultiplicityError(NonGenericError):
    pass


class ResourceGuardError(KEllipseError):
    pass


class BranchPointError(KEllipseError, ValueError):
    pass


class EmptyInteriorError(KEllipseError, ValueError):
    pass


class OriginNotInteriorError(KEllipseError, ValueError):
    pass


class OracleMismatchError(KEllipseError, RuntimeError):
    """Two independent numerical oracles disagree beyond tolerance."""
