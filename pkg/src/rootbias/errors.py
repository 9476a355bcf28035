"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where a function is defined."""


class ConvergenceError(RuntimeError):
    """A series or quadrature failed to reach its tolerance.

    ``partial`` holds the best value reached before giving up.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
