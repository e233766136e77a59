"""Exception and warning types raised across the package."""


class DomainWallError(Exception):
    """Base class for all package errors."""


class InvalidParameter(DomainWallError, ValueError):
    pass


class SpacingTooSmall(InvalidParameter):
    """Walls glued closer than their cores allow."""


class NoExactZeroMode(InvalidParameter):
    """Requested an exact zero mode for an even number of walls."""


class UnsupportedProfile(InvalidParameter):
    pass


class InvalidWindow(InvalidParameter):
    """Energy window touching the essential spectrum."""


class InvalidSample(InvalidParameter):
    pass


class ConfigError(InvalidParameter):
    pass


class NumericalError(DomainWallError, RuntimeError):
    """Base class for failures of a numerical method to converge."""


class QuadratureError(NumericalError):
    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved


class ResolventError(NumericalError):
    pass


class ReconstructionError(NumericalError):
    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved


class EigenvectorError(NumericalError):
    def __init__(self, message, eigenvalues=None):
        super().__init__(message)
        self.eigenvalues = eigenvalues


class IntegrationError(NumericalError):
    pass


class BoundaryRootWarning(UserWarning):
    pass


class RootMergeWarning(UserWarning):
    pass


class DomainTruncationWarning(UserWarning):
    pass


class EssentialSpectrumWarning(UserWarning):
    pass
