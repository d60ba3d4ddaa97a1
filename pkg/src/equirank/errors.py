"""Exception hierarchy shared by every module.

The CLI maps these onto process exit codes; library users can catch the
base class or the specific failure they care about.
"""


class EquirankError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 5


class SpecStringError(EquirankError, ValueError):
    """A group/G-set/rule spec string could not be parsed.

    Carries the offending token and, where known, its position.
    """

    exit_code = 2

    def __init__(self, message, token=None, position=None):
        super().__init__(message)
        self.token = token
        self.position = position


class BudgetExceeded(EquirankError):
    """A requested object is larger than the configured size budget."""

    exit_code = 3


class ClosureCapExceeded(BudgetExceeded):
    """Monoid closure grew past its cap; the partial size is recorded.

    Raised instead of returning a truncated closure, so generation checks
    can never silently pass on an incomplete element set.
    """

    def __init__(self, cap, partial_size):
        super().__init__(
            f"closure exceeded cap of {cap} elements (at least {partial_size} found)"
        )
        self.cap = cap
        self.partial_size = partial_size


class PropertyFailure(EquirankError):
    """A structural identity that must hold on valid inputs did not.

    Used for cross-check mismatches (order formulas vs. enumeration,
    recomposition failures, verification suite failures).
    """

    exit_code = 4


class DomainError(EquirankError, ValueError):
    """An operation was applied outside its mathematical domain.

    Examples: a point-collapse with incompatible stabilizers, restricting
    a G-set to a non-invariant subset, a local rule whose memory set is
    not contained in the group.
    """

    exit_code = 2


class StabilizerError(DomainError):
    """A stabilizer containment/equality precondition failed."""
