"""Exception hierarchy shared by all loglat modules."""


class LogLatError(Exception):
    """Base class for all certification and precondition failures."""


class NotSquarefree(LogLatError):
    pass


class ReducibleDetected(LogLatError):
    pass


class PrecisionExhausted(LogLatError):
    pass


class BallTooWide(LogLatError):
    pass


class ReconstructionFailed(LogLatError):
    pass


class RankDeficient(LogLatError):
    pass


class RankMismatch(LogLatError):
    pass


class NotPositiveDefinite(LogLatError):
    pass


class EnumerationBudgetExceeded(LogLatError):
    pass


class InsufficientPrecision(LogLatError):
    pass


class NotAUnit(LogLatError):
    pass


class NotASubfield(LogLatError):
    pass


class NotGalois(LogLatError):
    pass


class NotNormal(LogLatError):
    pass


class FixedFieldConstructionFailed(LogLatError):
    pass


class NotWeakMinkowski(LogLatError):
    pass


class SearchExhausted(LogLatError):
    pass


class OrderBudgetExceeded(LogLatError):
    pass


class IndexMismatch(LogLatError):
    pass


class InvarianceViolated(LogLatError):
    pass


class AllZero(LogLatError):
    pass


class SingularBlock(LogLatError):
    pass


class ResidualTooLarge(LogLatError):
    pass


class SetupViolated(LogLatError):
    pass


class BudgetExceeded(LogLatError):
    pass


class NotEven(LogLatError):
    pass


class CombinatorialBudgetExceeded(LogLatError):
    pass


class MissingClassNumber(LogLatError):
    pass


class BundleInvalid(LogLatError):
    pass
