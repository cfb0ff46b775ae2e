"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain an operation supports."""


class PoleError(DomainError):
    """Gamma evaluated at a nonpositive integer (use reciprocals there)."""


class NotRescalable(DomainError):
    """Rescaling to unit coefficients is undefined (reaction rate a = 0)."""


class TruncationError(RuntimeError):
    """A series did not meet its tolerance within the term budget.

    Carries the best Leibniz bracket available at the point of failure.
    """

    def __init__(self, message, term_sequence=None, bracket=None):
        super().__init__(message)
        self.term_sequence = term_sequence
        self.bracket = bracket
