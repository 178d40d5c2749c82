"""Exception hierarchy shared by the whole package."""


class RacahDahaError(Exception):
    """Base class for every error raised here."""


class DomainError(RacahDahaError, ValueError):
    """An argument is outside the domain of the operation."""


class DimensionError(RacahDahaError, ValueError):
    """Matrix or vector sizes do not fit together."""


class SingularMatrixError(RacahDahaError, ValueError):
    pass


class PreconditionError(RacahDahaError, ValueError):
    """A closed-form criterion was asked about a module it does not cover."""


class NotARepresentation(RacahDahaError):
    """Matrices failed a defining relation that must hold on a module."""

    def __init__(self, message, failures=()):
        super().__init__(message)
        self.failures = list(failures)


class NonRationalSpectrum(RacahDahaError):
    """A characteristic polynomial does not split over the rationals."""


class Inconclusive(RacahDahaError):
    """A heuristic submodule search could not certify irreducibility."""


class NotInCatalog(RacahDahaError):
    pass


class NonRationalParameters(RacahDahaError):
    pass


class WitnessConstructionFailed(RacahDahaError):
    pass


class EquivalenceViolation(RacahDahaError):
    """A computed instance contradicts one of the verified equivalences."""

    def __init__(self, spec, clause, detail=""):
        super().__init__(f"{spec}: {clause} {detail}".strip())
        self.spec = spec
        self.clause = clause
