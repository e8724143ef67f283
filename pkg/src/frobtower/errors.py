"""Exception hierarchy shared by every layer of the package."""


class FrobTowerError(Exception):
    """Base class for all package errors."""


class LevelMismatch(FrobTowerError):
    pass


class NoSolution(FrobTowerError):
    pass


class SplittingFieldFailure(FrobTowerError):
    """A polynomial factor does not split over the current ground field.

    ``radicand`` is the squarefree integer whose square root would split the
    offending quadratic factor, or ``None`` when no quadratic extension of
    the current field can help.
    """

    def __init__(self, message, radicand=None):
        super().__init__(message)
        self.radicand = radicand


class AssumptionViolated(FrobTowerError):
    """A candidate Jucys-Murphy element fails the centralizer or eigenvalue hypotheses."""


class AssumptionBViolated(AssumptionViolated):
    pass


class NonRealCoordinate(FrobTowerError):
    pass


class ZeroMassVertex(FrobTowerError):
    pass


class ConfigError(FrobTowerError):
    pass


class InvariantFailure(FrobTowerError):
    """An identity that must hold during construction did not."""
