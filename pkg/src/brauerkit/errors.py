"""Exception hierarchy.

Every domain failure raised by the library derives from :class:`BrauerkitError`,
so the CLI can map them to exit code 1 by class name.
"""


class BrauerkitError(Exception):
    """Base class for all domain errors."""


class FactorizationBoundExceeded(BrauerkitError):
    pass


class HenselConditionFailed(BrauerkitError):
    pass


class InsufficientPrecision(BrauerkitError):
    pass


class DimensionOverflow(BrauerkitError):
    pass


class NotAnAction(BrauerkitError):
    pass


class NotASubgroup(BrauerkitError):
    pass


class NotAGroup(BrauerkitError):
    pass


class SearchBudgetExceeded(BrauerkitError):
    pass


class DegenerateForm(BrauerkitError):
    pass


class DiscriminantNotTrivial(BrauerkitError):
    pass


class NoSmoothResiduePoint(BrauerkitError):
    pass
