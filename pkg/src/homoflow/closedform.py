"""Explicit solution families, evaluated pointwise.

All profiles are stored as U_theta(y) = u_theta * sin(theta) with
y = cos(theta); recover_field turns a meridional profile into the full
velocity and pressure field on a theta grid.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np

from .errors import DomainError, GridTooCoarse
from .params import FlowParams
from .specfun import ellip_e, ellip_k

# default meridional grid: theta clusters the y-samples near the poles
_THETA_PAD = 1e-3
_N_GRID = 601


def _default_y_grid(n=_N_GRID):
    theta = np.linspace(math.pi - _THETA_PAD, _THETA_PAD, n)
    return np.cos(theta)


@dataclass
class Profile:
    """Meridional profile U_theta(y) on a subinterval of (-1, 1)."""

    y_grid: np.ndarray
    u_values: np.ndarray
    domain: Tuple[float, float]
    reaches_minus1: bool
    reaches_plus1: bool
    params: Optional[FlowParams] = None
    evaluator: Optional[Callable] = None
    blowup_points: Tuple[float, ...] = field(default_factory=tuple)

    def __post_init__(self):
        self.y_grid = np.asarray(self.y_grid, dtype=float)
        self.u_values = np.asarray(self.u_values, dtype=float)
        if np.any(np.diff(self.y_grid) <= 0):
            raise DomainError("y_grid must be strictly increasing")
        y0, y1 = self.domain
        if self.y_grid[0] < y0 or self.y_grid[-1] > y1:
            raise DomainError("y_grid must lie inside the stated domain")

    def u(self, y):
        """U_theta at y, from the exact evaluator when available."""
        if self.evaluator is not None:
            return self.evaluator(y)
        return np.interp(y, self.y_grid, self.u_values)

    def endpoint_value(self, side):
        """Extrapolated U_theta at y = -1 ('minus1') or y = +1 ('plus1').

        Richardson extrapolation from eps in {1e-2, 5e-3, 2.5e-3};
        endpoint behavior is real-analytic so this converges fast.
        """
        if side not in ("minus1", "plus1"):
            raise ValueError(f"unknown endpoint {side!r}")
        sign = -1.0 if side == "minus1" else 1.0
        e = 1e-2
        f1 = float(self.u(sign * (1.0 - e)))
        f2 = float(self.u(sign * (1.0 - e / 2.0)))
        f3 = float(self.u(sign * (1.0 - e / 4.0)))
        # smooth approach contracts by ~1/2 per halving; a logarithmic
        # approach contracts hardly at all
        if abs(f3 - f2) <= 0.7 * abs(f2 - f1) or f2 == f1:
            return (8.0 * f3 - 6.0 * f2 + f1) / 3.0
        # slow (logarithmic) approach at a degenerate endpoint: fit
        # f = L + A/(ln eps + C) through three depths equally spaced in
        # ln eps, where L drops out linearly
        g1, g2, g3 = (
            float(self.u(sign * (1.0 - e))) for e in (1e-4, 1e-8, 1e-12)
        )
        den = 2.0 * g2 - g1 - g3
        if abs(den) > 1e-14 * (abs(g1) + abs(g3) + 1.0):
            return (g1 * g2 - 2.0 * g1 * g3 + g2 * g3) / den
        return g3


@dataclass
class FlowField:
    """Axisymmetric no-swirl field sampled on a theta grid in (0, pi).

    p is normalized so that p(pi/2) = nu*u_r(pi/2) - u_theta(pi/2)^2/2,
    i.e. the free constant is zero.
    """

    theta_grid: np.ndarray
    u_r: np.ndarray
    u_theta: np.ndarray
    u_phi: np.ndarray
    p: np.ndarray
    p_constant: float = 0.0
    params: Optional[FlowParams] = None

    def divergence_residual(self):
        """Max relative violation of u_r = -du_theta/dtheta - u_theta*cot(theta).

        Normalized pointwise; the two terms on the right grow like
        1/sin^2(theta) toward the poles and would swamp an absolute norm.
        """
        du = np.gradient(self.u_theta, self.theta_grid)
        cot_term = self.u_theta / np.tan(self.theta_grid)
        rhs = -du - cot_term
        scale = 1.0 + np.abs(du) + np.abs(cot_term)
        # skip pole-adjacent points the grid cannot resolve: fields with
        # pole singularities vary like 1/sin(theta), so finite differences
        # need h << sin(theta) there
        h = np.gradient(self.theta_grid)
        mask = np.sin(self.theta_grid) > 40.0 * h
        if not mask.any():
            mask = slice(None)
        return float(np.max(np.abs(self.u_r - rhs)[mask] / scale[mask]))


def landau_profile(nu, gamma):
    """Bounded one-parameter family: U_theta = 2 nu (1-y^2)/(y + 2 nu/gamma)."""
    if gamma == 0.0 or abs(gamma) >= 2.0 * nu:
        raise DomainError(
            f"landau_profile needs 0 < |gamma| < 2 nu, got gamma={gamma}"
        )
    shift = 2.0 * nu / gamma

    def ev(y):
        y = np.asarray(y, dtype=float)
        return 2.0 * nu * (1.0 - y * y) / (y + shift)

    yg = _default_y_grid()
    return Profile(
        y_grid=yg,
        u_values=ev(yg),
        domain=(-1.0, 1.0),
        reaches_minus1=True,
        reaches_plus1=True,
        params=FlowParams(nu=nu, c1=0.0, c2=0.0, c3=0.0),
        evaluator=ev,
    )


def _in_i_nu(nu, tau, sigma):
    if tau <= 2.0 * nu and sigma < nu - tau / 4.0:
        return True
    if tau >= 2.0 * nu and sigma == tau / 4.0:
        return True
    return False


def one_sing_profile(nu, tau, sigma):
    """Profile smooth away from the south pole, with U_theta(-1) = tau.

    Three branches depending on the sign of tau - 2 nu; b = |1 - tau/(2 nu)|.
    """
    if not _in_i_nu(nu, tau, sigma):
        raise DomainError(
            f"(tau, sigma)=({tau}, {sigma}) outside the admissible set"
        )
    b = abs(1.0 - tau / (2.0 * nu))
    s = 2.0 * sigma / nu

    if tau < 2.0 * nu:

        def ev(y):
            y = np.asarray(y, dtype=float)
            z = 0.5 * (1.0 + y)
            den = (1.0 - s + b) * z**-b + s - 1.0 + b
            frac = 2.0 * b * (1.0 - s - b) / den
            return nu * (1.0 - y) * (1.0 - b - frac)

    elif tau == 2.0 * nu:

        def ev(y):
            y = np.asarray(y, dtype=float)
            z = 0.5 * (1.0 + y)
            return nu * (1.0 - y) * (
                1.0 + 2.0 * (1.0 - s) / ((1.0 - s) * np.log(z) - 2.0)
            )

    else:

        def ev(y):
            y = np.asarray(y, dtype=float)
            return nu * (1.0 + b) * (1.0 - y)

    # induced coefficients: c2 = 0 and (c1, c3) fitted from the identity
    # nu (1-y^2) U' + 2 nu y U = P_c - U^2/2 at two interior points
    r0 = _riccati_lhs(ev, nu, 0.0)
    r5 = _riccati_lhs(ev, nu, 0.5)
    # P(0) = c1 + c3, P(0.5) = 0.5 c1 + 0.75 c3
    c3 = (r5 - 0.5 * r0) / 0.25
    c1 = r0 - c3

    yg = _default_y_grid()
    return Profile(
        y_grid=yg,
        u_values=ev(yg),
        domain=(-1.0, 1.0),
        reaches_minus1=True,
        reaches_plus1=True,
        params=FlowParams(nu=nu, c1=c1, c2=0.0, c3=c3),
        evaluator=ev,
    )


def _riccati_lhs(ev, nu, y, h=1e-5):
    """nu (1-y^2) U' + 2 nu y U + U^2/2 with a 4th-order FD derivative."""
    up = (
        -ev(y + 2 * h) + 8.0 * ev(y + h) - 8.0 * ev(y - h) + ev(y - 2 * h)
    ) / (12.0 * h)
    u = ev(y)
    return float(nu * (1.0 - y * y) * up + 2.0 * nu * y * u + 0.5 * u * u)


def critical_profile(nu, c1, c2):
    """The unique global profile on the critical surface c3 = bar_c3."""
    nu2 = nu * nu
    if c1 < -nu2 or c2 < -nu2:
        raise DomainError(
            f"critical_profile requires c1, c2 >= -nu^2 (got {c1}, {c2})"
        )
    from .params import bar_c3

    s1 = nu + math.sqrt(nu2 + c1)
    s2 = nu + math.sqrt(nu2 + c2)

    def ev(y):
        y = np.asarray(y, dtype=float)
        return s1 * (1.0 - y) - s2 * (1.0 + y)

    yg = _default_y_grid()
    return Profile(
        y_grid=yg,
        u_values=ev(yg),
        domain=(-1.0, 1.0),
        reaches_minus1=True,
        reaches_plus1=True,
        params=FlowParams(nu=nu, c1=c1, c2=c2, c3=bar_c3(c1, c2, nu)),
        evaluator=ev,
    )


def elliptic_profile(alpha):
    """Elliptic-integral family at nu=1, c=(0, 0, 0.5).

    alpha in [0, inf] (math.inf accepted) gives the global solutions;
    alpha parametrizes gamma through
    gamma = K(1/2)(1-alpha) / ((2E(1/2)-K(1/2))(1+alpha)).
    """
    if not (alpha >= 0.0):
        raise DomainError(f"alpha must be in [0, inf], got {alpha}")
    infinite = math.isinf(alpha)

    def ev_one(yi):
        z = 0.5 * (1.0 + yi)
        kz = ellip_k(z)
        ez = ellip_e(z)
        kw = ellip_k(1.0 - z)
        ew = ellip_e(1.0 - z)
        if infinite:
            num = -kw
            den = ew - z * kw
        else:
            num = kz - alpha * kw
            den = ez - (1.0 - z) * kz + alpha * (ew - z * kw)
        return (1.0 - yi * yi) * num / (2.0 * den)

    def ev(y):
        if np.ndim(y) == 0:
            return ev_one(float(y))
        arr = np.asarray(y, dtype=float)
        out = np.array([ev_one(v) for v in arr.ravel()])
        return out.reshape(arr.shape)

    yg = _default_y_grid()
    return Profile(
        y_grid=yg,
        u_values=ev(yg),
        domain=(-1.0, 1.0),
        reaches_minus1=True,
        reaches_plus1=True,
        params=FlowParams(nu=1.0, c1=0.0, c2=0.0, c3=0.5),
        evaluator=ev,
    )


def _theta_grid(n=_N_GRID):
    return np.linspace(_THETA_PAD, math.pi - _THETA_PAD, n)


def euler_fields(c, n=_N_GRID):
    """The two inviscid fields with U_theta = +-sqrt(2 P_c) and their pressure.

    Returns (v_plus, v_minus, q) where q is the shared pressure profile
    evaluated at r = 1.
    """
    c1, c2, c3 = c
    theta = _theta_grid(n)
    y = np.cos(theta)
    p_c = c1 * (1.0 - y) + c2 * (1.0 + y) + c3 * (1.0 - y * y)
    if np.any(p_c < 0):
        bad = y[p_c < 0][0]
        raise DomainError(f"P_c < 0 at y = {bad:.6g}; inviscid field undefined")
    p_prime = -c1 + c2 - 2.0 * c3 * y
    sin2 = 1.0 - y * y
    root = np.sqrt(2.0 * p_c)
    q = -0.5 * (-2.0 * c3 + 2.0 * p_c / sin2)
    fields = []
    for sign in (1.0, -1.0):
        u_theta = sign * root / np.sin(theta)
        with np.errstate(divide="ignore", invalid="ignore"):
            u_r = np.where(root > 0, sign * p_prime / np.where(root > 0, root, 1.0), 0.0)
        fields.append(
            FlowField(
                theta_grid=theta,
                u_r=u_r,
                u_theta=u_theta,
                u_phi=np.zeros_like(theta),
                p=q.copy(),
            )
        )
    return fields[0], fields[1], q


def euler_ns_profile(a, b, nu=1.0, n=_N_GRID):
    """Linear profile U_theta = a y + b, solving both the inviscid and
    viscous reduced equations.

    The coefficients c induced by the viscous equation at the given nu
    are attached as field params.
    """
    theta = _theta_grid(n)
    y = np.cos(theta)
    sin2 = 1.0 - y * y
    u_theta = (a * y + b) / np.sin(theta)
    u_r = np.full_like(theta, float(a))
    p = -(a * a + b * b + 2.0 * a * b * y) / (2.0 * sin2)
    c3 = -(nu * a + 0.5 * a * a)
    base = 2.0 * nu * a + 0.5 * a * a + 0.5 * b * b
    c1 = 0.5 * (base - (2.0 * nu * b + a * b))
    c2 = 0.5 * (base + (2.0 * nu * b + a * b))
    return FlowField(
        theta_grid=theta,
        u_r=u_r,
        u_theta=u_theta,
        u_phi=np.zeros_like(theta),
        p=p,
        params=FlowParams(nu=nu, c1=c1, c2=c2, c3=c3),
    )


def recover_field(prof: Profile) -> FlowField:
    """Full velocity and pressure field from a meridional profile.

    u_r = dU_theta/dy (4th-order differences), u_theta = U_theta/sin(theta),
    p = nu u_r - u_theta^2/2 with the constant fixed to zero.
    """
    if prof.y_grid.size < 5:
        raise GridTooCoarse("need at least 5 samples to differentiate")
    if prof.params is None:
        raise GridTooCoarse("profile carries no viscosity; cannot form p")
    nu = prof.params.nu
    yg = prof.y_grid
    y0, y1 = prof.domain

    if prof.evaluator is not None:
        u = np.asarray(prof.evaluator(yg), dtype=float)
        # per-point stencil width limited by the distance to the domain edge
        h = np.minimum(1e-4, np.minimum(yg - y0, y1 - yg) / 4.0)
        h = np.maximum(h, 1e-9)
        ev = prof.evaluator
        u_r = (
            -ev(yg + 2 * h) + 8.0 * ev(yg + h) - 8.0 * ev(yg - h) + ev(yg - 2 * h)
        ) / (12.0 * h)
    else:
        u = prof.u_values
        u_r = _fd_derivative(yg, u)

    theta = np.arccos(yg)[::-1]
    u = u[::-1]
    u_r = np.asarray(u_r)[::-1]
    sin_t = np.sin(theta)
    u_theta = u / sin_t
    p = nu * u_r - 0.5 * u_theta * u_theta
    return FlowField(
        theta_grid=theta,
        u_r=u_r,
        u_theta=u_theta,
        u_phi=np.zeros_like(theta),
        p=p,
        params=prof.params,
    )


def _fd_derivative(x, f):
    """Derivative on a nonuniform grid via local 5-point Lagrange fits."""
    n = len(x)
    out = np.empty(n)
    for i in range(n):
        lo = min(max(i - 2, 0), n - 5)
        xs = x[lo : lo + 5]
        fs = f[lo : lo + 5]
        # derivative of the Lagrange interpolant at x[i]
        xi = x[i]
        d = 0.0
        for j in range(5):
            term = 0.0
            for m in range(5):
                if m == j:
                    continue
                prod = 1.0
                for k in range(5):
                    if k in (j, m):
                        continue
                    prod *= (xi - xs[k]) / (xs[j] - xs[k])
                term += prod / (xs[j] - xs[m])
            d += fs[j] * term
        out[i] = d
    return out
