"""Exception types raised across the package.

Every error derives from :class:`QuotarithError` so callers (and the CLI)
can catch the whole family in one place.  ``exit_code`` is the process
status the command line maps each error to.
"""


class QuotarithError(ValueError):
    exit_code = 4


class NotCoprime(QuotarithError):
    pass


class NotCongruent(QuotarithError):
    pass


class CapExceeded(QuotarithError):
    exit_code = 3


class HypothesisViolated(QuotarithError):
    exit_code = 2


class PreconditionViolated(HypothesisViolated):
    pass


class NotDivisible(HypothesisViolated):
    pass


class RangeTooSmall(QuotarithError):
    pass


class NotSquarefree(QuotarithError):
    pass


class ExcludedInput(QuotarithError):
    pass


class MemoryBudgetExceeded(QuotarithError):
    exit_code = 3


class IdentityViolation(QuotarithError):
    """An identity that must hold for every input failed: an implementation fault."""

    exit_code = 1
