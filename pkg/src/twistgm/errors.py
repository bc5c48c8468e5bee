"""Exception hierarchy shared by the symbolic and numeric layers."""


class TwistGMError(Exception):
    """Base class for all errors raised by twistgm."""


class DomainError(TwistGMError):
    """An input lies outside the domain where an operation is defined."""


class DivisionByZero(DomainError, ZeroDivisionError):
    pass


class PoleAtPoint(DomainError):
    pass


class NonlinearDenominator(DomainError):
    pass


class DegenerateConfiguration(DomainError):
    pass


class ResonantExponent(DomainError):
    pass


class ExponentSumViolation(DomainError):
    pass


class ForeignPole(DomainError):
    pass


class SingularBasis(DomainError):
    pass


class UnabsorbableFactor(DomainError):
    pass


class NotCyclic(DomainError):
    pass


class UnknownPair(TwistGMError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class InvalidArgument(DomainError, ValueError):
    pass


class PolePar(DomainError):
    """A parameter sits on a pole of Gamma or of the series coefficients."""


class OutsideDisk(DomainError):
    pass


class DivergentEndpoint(DomainError):
    pass


class QuadratureNoConvergence(TwistGMError):
    pass


class PathThroughSingularity(DomainError):
    pass


class StiffnessFailure(TwistGMError):
    pass
