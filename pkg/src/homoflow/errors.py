"""Exception types shared across the package."""


class HomoflowError(Exception):
    """Base class for all library errors."""


class DomainError(HomoflowError):
    """Input outside the mathematical domain of an operation."""


class DegenerateC(DomainError):
    """Hypergeometric parameter C is a non-positive integer (series branch)
    or an integer (fundamental-solution pair degenerates)."""


class NoConvergence(HomoflowError):
    """Series or transformation stack failed to reach tolerance."""


class ToleranceFailure(HomoflowError):
    """Integrator step size underflowed without a blow-up certificate."""


class NotInJ(DomainError):
    """Coefficients lie outside the admissible set for global solutions."""


class CriticalSurface(HomoflowError):
    """Operation requires a nondegenerate solution interval but the
    coefficients sit on the critical surface (single leaf)."""


class EndpointNotReached(HomoflowError):
    """Profile domain does not extend to the requested endpoint."""


class Inconclusive(HomoflowError):
    """Dyadic fit spread too large to classify."""


class SingularPoint(DomainError):
    """Evaluation point hits a pole or critical point of the generating
    meromorphic function."""


class GridTooCoarse(HomoflowError):
    """Profile grid too coarse for derivative recovery."""


class GridTouchesAxis(DomainError):
    """Meridional grid does not keep the required margin from the axis."""


class SelectionFailure(HomoflowError):
    """No interior solution with the required zero crossing exists."""


class NotEulerAdmissible(DomainError):
    """P_c is not nonnegative on the requested window."""


class SpecMismatch(HomoflowError):
    """Render payload does not match the requested kind."""
