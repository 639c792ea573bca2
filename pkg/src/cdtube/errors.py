"""Exception hierarchy shared across the package."""


class CdtubeError(Exception):
    """Base class for all package errors."""


class DomainError(CdtubeError, ValueError):
    """An argument violates a documented precondition."""


class DegenerateParameterError(CdtubeError, ValueError):
    """Hypergeometric parameters hit a pole or vanishing denominator.

    Callers are expected to fall back to numerical integration.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ConvergenceError(CdtubeError, RuntimeError):
    """An iterative evaluation failed to converge within its caps.

    ``best_estimate`` carries the last iterate when one is available.
    """

    def __init__(self, message, best_estimate=None, report=None):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.report = report


class EvaluationError(CdtubeError, RuntimeError):
    """Both the analytic route and the quadrature fallback failed."""
