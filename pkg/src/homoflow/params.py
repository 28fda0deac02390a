"""Parameter geometry of the solution families.

The right-hand side of the reduced equation is the quadratic
P_c(y) = c1 (1-y) + c2 (1+y) + c3 (1-y^2).  Everything in this module
is a pure function of (nu, c1, c2, c3).
"""

import cmath
import enum
import math
from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class FlowParams:
    """Viscosity and the three coefficients of P_c."""

    nu: float
    c1: float
    c2: float
    c3: float

    def __post_init__(self):
        if not self.nu > 0:
            raise DomainError(f"viscosity must be positive, got {self.nu}")

    def p(self, y):
        """P_c(y)."""
        return (
            self.c1 * (1.0 - y)
            + self.c2 * (1.0 + y)
            + self.c3 * (1.0 - y * y)
        )

    def p_prime(self, y):
        return -self.c1 + self.c2 - 2.0 * self.c3 * y

    @property
    def c(self):
        return (self.c1, self.c2, self.c3)


@dataclass(frozen=True)
class TauSet:
    """The four possible endpoint values of U_theta.

    tau1/tau2 at y = -1, tau1p/tau2p at y = +1; tau1 + tau2 = 4 nu and
    tau1p + tau2p = -4 nu.
    """

    tau1: float
    tau2: float
    tau1p: float
    tau2p: float

    def members(self, endpoint):
        """Pair of admissible values at 'minus1' or 'plus1'."""
        if endpoint == "minus1":
            return (self.tau1, self.tau2)
        if endpoint == "plus1":
            return (self.tau1p, self.tau2p)
        raise ValueError(f"unknown endpoint {endpoint!r}")


@dataclass(frozen=True)
class HypMap:
    """Map from (nu, c) to hypergeometric-equation parameters.

    A and B may form a complex-conjugate pair (stored as complex); C is
    always real.  a = tau1/2 and b = tau2p/2.
    """

    a: float
    b: float
    lam: float
    A: complex
    B: complex
    C: float

    @property
    def complex_pair(self):
        return abs(self.A.imag) > 0.0


class CaseLabel(enum.Enum):
    CASE1 = 1
    CASE2 = 2
    CASE3 = 3
    CASE4 = 4
    CASE5 = 5
    CASE6 = 6


def bar_c3(c1, c2, nu):
    """Critical c3 below which no global solution exists."""
    if c1 < -nu * nu or c2 < -nu * nu:
        raise DomainError(
            f"bar_c3 requires c1, c2 >= -nu^2 (got c1={c1}, c2={c2}, nu={nu})"
        )
    s1 = math.sqrt(nu * nu + c1)
    s2 = math.sqrt(nu * nu + c2)
    return -0.5 * (s1 + s2) * (s1 + s2 + 2.0 * nu)


def in_j(p: FlowParams) -> bool:
    """Membership of c in the admissible set J_nu."""
    nu2 = p.nu * p.nu
    if p.c1 < -nu2 or p.c2 < -nu2:
        return False
    return p.c3 >= bar_c3(p.c1, p.c2, p.nu)


def classify_case(p: FlowParams) -> CaseLabel:
    """The unique matching case of the six-case taxonomy."""
    nu2 = p.nu * p.nu
    if not in_j(p):
        return CaseLabel.CASE6
    if p.c3 == bar_c3(p.c1, p.c2, p.nu):
        return CaseLabel.CASE5
    c1_crit = p.c1 == -nu2
    c2_crit = p.c2 == -nu2
    if c1_crit and c2_crit:
        return CaseLabel.CASE4
    if c1_crit:
        return CaseLabel.CASE2
    if c2_crit:
        return CaseLabel.CASE3
    return CaseLabel.CASE1


def tau_values(p: FlowParams) -> TauSet:
    """Endpoint constants (tau1, tau2, tau1p, tau2p)."""
    nu2 = p.nu * p.nu
    if p.c1 < -nu2 or p.c2 < -nu2:
        raise DomainError(
            f"tau_values requires c1, c2 >= -nu^2 (got c1={p.c1}, c2={p.c2})"
        )
    s1 = math.sqrt(nu2 + p.c1)
    s2 = math.sqrt(nu2 + p.c2)
    return TauSet(
        tau1=2.0 * p.nu - 2.0 * s1,
        tau2=2.0 * p.nu + 2.0 * s1,
        tau1p=-2.0 * p.nu - 2.0 * s2,
        tau2p=-2.0 * p.nu + 2.0 * s2,
    )


def hyp_map(p: FlowParams) -> HypMap:
    """Hypergeometric parameters (a, b, lambda, A, B, C) for given (nu, c)."""
    nu2 = p.nu * p.nu
    if p.c1 < -nu2 or p.c2 < -nu2:
        raise DomainError(
            f"hyp_map requires c1, c2 >= -nu^2 (got c1={p.c1}, c2={p.c2})"
        )
    a = -math.sqrt(p.c1 + nu2) + p.nu
    b = math.sqrt(p.c2 + nu2) - p.nu
    lam = 0.5 * (p.c1 + p.c2) + p.c3 - a * b
    disc = (a - b - p.nu) ** 2 - 2.0 * lam
    root = cmath.sqrt(disc)
    big_a = ((a - b - p.nu) + root) / (2.0 * p.nu)
    big_b = ((a - b - p.nu) - root) / (2.0 * p.nu)
    return HypMap(a=a, b=b, lam=lam, A=big_a, B=big_b, C=a / p.nu)
