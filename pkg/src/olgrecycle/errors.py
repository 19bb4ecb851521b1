"""Exception types shared across the package."""


class ParameterError(ValueError):
    """A parameter or scenario value lies outside its admissible range."""


class ScenarioError(ParameterError):
    """A scenario file could not be parsed."""


class NumericError(ArithmeticError):
    """A computation produced a non-finite or undefined quantity.

    ``state`` carries the last finite simulation state when one exists.
    """

    def __init__(self, message, state=None):
        super().__init__(message)
        self.state = state


class RegimeError(ValueError):
    """An operation was requested outside the tax regime it is defined for."""


class LowPollutionWarning(UserWarning):
    """Pollution stock at or below one, where the health specification is not meant to apply."""
