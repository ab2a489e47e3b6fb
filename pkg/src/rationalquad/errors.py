"""Exception hierarchy shared by all modules."""


class RationalQuadError(Exception):
    """Base class for every error raised by this package."""


class InvalidInput(RationalQuadError, ValueError):
    pass


class PoleOnSupport(InvalidInput):
    """A prescribed pole (or evaluation point) touches the support of the measure."""


class UnsupportedCase(RationalQuadError):
    """The pole configuration is not handled by the requested construction."""


class NonPositiveBeta(RationalQuadError, ArithmeticError):
    """A computed beta recursion coefficient was not positive.

    In practice this signals numerical instability upstream (ill-conditioned
    modified moments, or cancellation in a signed discrete measure).
    """

    def __init__(self, message, index=None, value=None):
        super().__init__(message)
        self.index = index
        self.value = value


class ConvergenceFailure(RationalQuadError, ArithmeticError):
    pass


class EigensolverFailure(RationalQuadError, ArithmeticError):
    pass


class NonFiniteValue(RationalQuadError, ArithmeticError):
    pass
