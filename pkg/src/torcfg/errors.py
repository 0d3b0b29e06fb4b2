"""Exception hierarchy."""


class TorcfgError(Exception):
    """Base class for all library errors."""


class BadParameter(TorcfgError, ValueError):
    pass


class NotSimple(TorcfgError, ValueError):
    pass


class InconsistentLattice(TorcfgError, ValueError):
    pass


class DimensionMismatch(TorcfgError, ValueError):
    pass


class TooLarge(TorcfgError, ValueError):
    pass


class NotAComplex(TorcfgError, ValueError):
    """A boundary operator does not square to zero."""


class CoefficientMismatch(TorcfgError, ValueError):
    pass


class NotASubspacePattern(TorcfgError, ValueError):
    pass


class VertexMismatch(TorcfgError, ValueError):
    pass


class ValidationFailed(TorcfgError, ValueError):
    pass


class NonFieldCoefficients(TorcfgError, ValueError):
    pass
