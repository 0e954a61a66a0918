"""Exception hierarchy shared by every module of the package."""


class QacError(Exception):
    """Base class for all library errors."""


class DivisionByZero(QacError, ZeroDivisionError):
    pass


class BackendMismatch(QacError, TypeError):
    """Exact and approximate scalars were mixed in one comparison."""


class PoleAtNegativeIndex(QacError):
    pass


class PoleInDenominator(QacError):
    pass


class ExactModeUnsupported(QacError):
    """An infinite object was requested as a bare exact scalar."""


class InvertedBaseUnsupported(QacError):
    """An infinite object was requested at base q > 1."""


class GuardExceeded(QacError):
    pass


class NonConvergent(QacError):
    pass


class ConvergenceDomain(QacError):
    pass


class NonUnit(QacError):
    pass


class UnknownVariable(QacError, KeyError):
    pass


class OutOfOrder(QacError, IndexError):
    pass


class ParameterConstraint(QacError, ValueError):
    pass


class EvaluationAtZero(QacError):
    pass


class SingularEvaluation(QacError):
    pass


class NotDivisible(QacError):
    pass


class SamplingExhausted(QacError):
    pass


class ConfigError(QacError, ValueError):
    pass


class ParseError(QacError, ValueError):
    pass


class MissingParameter(QacError, KeyError):
    pass
