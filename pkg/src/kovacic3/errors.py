"""Exception hierarchy for the whole engine."""


class Kovacic3Error(Exception):
    """Base class for all package errors."""


class ZeroOperator(Kovacic3Error):
    pass


class WrongOrder(Kovacic3Error):
    pass


class OrderError(WrongOrder):
    pass


class ParseError(Kovacic3Error):
    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


class IrregularPoint(Kovacic3Error):
    pass


class LogarithmicSolution(Kovacic3Error):
    pass


class TruncationTooSmall(Kovacic3Error):
    pass


class DivisionByZeroSeries(Kovacic3Error):
    pass


class IrreducibilityUndetermined(Kovacic3Error):
    pass


class DependencySearchOverflow(Kovacic3Error):
    pass


class MatchFailure(Kovacic3Error):
    pass


class SyzygyUnsatisfiable(Kovacic3Error):
    pass


class IrreducibleFactorNotFound(Kovacic3Error):
    pass


class NoLinearCombination(Kovacic3Error):
    pass


class ZeroLeadingValue(Kovacic3Error):
    pass


class VerificationFailed(Kovacic3Error):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class FixtureError(Kovacic3Error):
    pass


class FieldMixError(Kovacic3Error):
    """Arithmetic attempted between two different quadratic extensions."""
