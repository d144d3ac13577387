"""Exception types shared across the package."""


class InputError(ValueError):
    """Invalid user input: unknown generator symbol, family mismatch, bad parameters."""


class BudgetExceededError(RuntimeError):
    """A resource budget was exhausted.

    Carries whatever partial result exists so callers can report best-effort
    bounds (``radius_reached`` for ball enumeration, ``partial`` for a partly
    converged certificate).
    """

    def __init__(self, message, *, radius_reached=None, partial=None):
        super().__init__(message)
        self.radius_reached = radius_reached
        self.partial = partial


class ElementNotFoundError(LookupError):
    """An element was not located within the searched radius."""

    def __init__(self, message, *, radius_searched=None):
        super().__init__(message)
        self.radius_searched = radius_searched
