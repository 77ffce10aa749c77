"""Exception hierarchy shared by all delaylab modules."""


class DelayLabError(Exception):
    """Base class for every error raised by delaylab."""


class ParameterError(DelayLabError, ValueError):
    """Invalid input parameters (CLI exit status 1)."""


class NonPositive(ParameterError):
    pass


class MisalignedStep(ParameterError):
    pass


class HorizonTooShort(ParameterError):
    pass


class DomainViolation(ParameterError):
    pass


class ScenarioInvalid(ParameterError):
    pass


class BracketInvalid(ParameterError):
    pass


class TooShort(ParameterError):
    pass


class NumericalError(DelayLabError, ArithmeticError):
    """Failure during integration (CLI exit status 2)."""


class NonFinite(NumericalError):
    def __init__(self, time, value=None):
        self.time = time
        self.value = value
        super().__init__(f"non-finite value {value!r} at t={time:.9g}")


class FutureLookup(NumericalError):
    def __init__(self, query, frontier):
        self.query = query
        self.frontier = frontier
        super().__init__(
            f"delayed lookup at t={query:.9g} beyond computed history (frontier t={frontier:.9g})"
        )
