"""Exception types shared across the package."""


class GraphError(Exception):
    """Invalid graph construction or operation argument."""


class SizeLimitError(GraphError):
    """An exhaustive operation was asked to run beyond its configured limit.

    Carries optional fallback data (e.g. inexact bounds) in ``payload``.
    """

    def __init__(self, message, payload=None):
        super().__init__(message)
        self.payload = payload


class BudgetExceededError(Exception):
    """A search exceeded its node budget without deciding the question."""
