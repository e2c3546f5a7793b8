"""Exception hierarchy shared by all modules.

The CLI maps these onto stable exit codes: usage 2, domain 3,
convergence/accuracy 4, I/O 5.
"""


class WfracError(Exception):
    """Base class for all toolkit errors."""


class DomainError(WfracError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class AdmissibilityError(DomainError):
    """beta > 1 requested where the evolution theory requires beta <= 1."""


class PoleError(DomainError):
    """Gamma function evaluated at a non-positive integer."""


class GammaOverflowError(DomainError, OverflowError):
    """Gamma function argument above the double-precision ceiling."""


class GridError(DomainError):
    """Sample grid too coarse for a stable quadrature/derivative estimate."""


class ConvergenceError(WfracError, RuntimeError):
    """Series or iteration failed to converge within its term/step cap."""


class AccuracyError(WfracError, RuntimeError):
    """Requested evaluation cannot meet its accuracy contract."""


class NoCrossingError(WfracError, RuntimeError):
    """Energy never reached the half-life target within the simulated range."""


class UsageError(WfracError):
    """Malformed command line."""
