"""Global-solution interval, extremal profiles, foliation, and the
Type 1/2/3 singularity taxonomy.

The interval [gamma_minus, gamma_plus] of initial values U(0) = gamma
yielding global profiles is found by bisection on endpoint
reachability; the extremal profiles are started from an endpoint series
when the endpoint is nondegenerate, and from the bisected gamma
otherwise.
"""

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .closedform import Profile
from .errors import CriticalSurface, Inconclusive, NotInJ, ToleranceFailure
from .params import FlowParams, bar_c3, in_j, tau_values
from .riccati import (
    SolveRequest,
    boundary_limit,
    endpoint_reachable,
    integrate_ivp,
)


@dataclass(frozen=True)
class GammaInterval:
    gamma_minus: float
    gamma_plus: float
    tol: float


class SingType(enum.Enum):
    TYPE1 = 1  # bounded
    TYPE2 = 2  # |u| ~ |log distance|
    TYPE3 = 3  # |u| ~ 1/distance


@dataclass(frozen=True)
class SingularityType:
    kind: SingType
    log_coefficient: Optional[float] = None
    order_coefficient: Optional[float] = None


def _bracket_radius(p: FlowParams):
    taus = tau_values(p)
    return abs(taus.tau2) + abs(taus.tau1p) + 4.0 * p.nu


def _bisect_threshold(pred, lo, hi, tol):
    """Largest-x-false / smallest-x-true boundary of a monotone predicate.

    pred(lo) must be False and pred(hi) True.
    """
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return lo, hi


def gamma_bounds(params: FlowParams, tol: float = 1e-6) -> GammaInterval:
    """The interval of gamma = U(0) giving globally defined profiles.

    gamma_minus = inf of forward reachability of +1, gamma_plus = sup of
    backward reachability of -1, each located by bisection after a
    coarse scan establishes the bracket.
    """
    if not in_j(params):
        raise NotInJ(f"c = {params.c} is not admissible at nu = {params.nu}")
    r = _bracket_radius(params)

    def fwd(g):
        return endpoint_reachable(
            SolveRequest(params=params, ybar=0.0, gamma=g, direction="forward"),
            +1,
        )

    def bwd(g):
        return endpoint_reachable(
            SolveRequest(params=params, ybar=0.0, gamma=g, direction="backward"),
            -1,
        )

    scan = np.linspace(-r, r, 20)
    fvals = [fwd(g) for g in scan]
    bvals = [bwd(g) for g in scan]
    if fvals[0] or not fvals[-1] or not bvals[0] or bvals[-1]:
        raise ToleranceFailure("reachability scan violates the expected pattern")
    i = next(k for k in range(19) if not fvals[k] and fvals[k + 1])
    lo, hi = _bisect_threshold(fwd, scan[i], scan[i + 1], tol)
    g_minus = 0.5 * (lo + hi)
    j = next(k for k in range(19) if bvals[k] and not bvals[k + 1])
    lo, hi = _bisect_threshold(lambda g: not bwd(g), scan[j], scan[j + 1], tol)
    g_plus = 0.5 * (lo + hi)
    return GammaInterval(gamma_minus=g_minus, gamma_plus=g_plus, tol=tol)


def _series_start_minus1(p: FlowParams, delta):
    """First-order expansion of the extremal branch at y = -1.

    U(-1 + d) = tau2 + a1 d with a1 from substituting the series in the
    equation; valid when c1 > -nu^2 (simple endpoint).
    """
    tau2 = tau_values(p).tau2
    a1 = (-p.c1 + p.c2 + 2.0 * p.c3 - 2.0 * p.nu * tau2) / tau2
    return tau2 + a1 * delta, tau2, a1


def _upper_profile(p: FlowParams, interval=None, tol=1e-8, delta=1e-8):
    if p.c1 > -p.nu**2:
        gamma0, tau2, a1 = _series_start_minus1(p, delta)
        req = SolveRequest(
            params=p, ybar=-1.0 + delta, gamma=gamma0, direction="forward"
        )
        prof, _ = integrate_ivp(req)
        prof.reaches_minus1 = True
        prof.near_edge["minus1"] = lambda d: tau2 + a1 * d
        return prof
    # degenerate endpoint: no simple series; take the bisected gamma
    if interval is None:
        interval = gamma_bounds(p, tol=tol)
    req = SolveRequest(
        params=p, ybar=0.0, gamma=interval.gamma_plus - 2.0 * tol, direction="both"
    )
    prof, _ = integrate_ivp(req)
    return prof


def _lower_profile(p: FlowParams, interval=None, tol=1e-8, delta=1e-8):
    # mirror image: y -> -y, U -> -U swaps c1 and c2
    if p.c2 > -p.nu**2:
        pm = FlowParams(nu=p.nu, c1=p.c2, c2=p.c1, c3=p.c3)
        gamma0, tau2m, a1m = _series_start_minus1(pm, delta)
        req = SolveRequest(
            params=p, ybar=1.0 - delta, gamma=-gamma0, direction="backward"
        )
        prof, _ = integrate_ivp(req)
        prof.reaches_plus1 = True
        prof.near_edge["plus1"] = lambda d: -(tau2m + a1m * d)
        return prof
    if interval is None:
        interval = gamma_bounds(p, tol=tol)
    req = SolveRequest(
        params=p, ybar=0.0, gamma=interval.gamma_minus + 2.0 * tol, direction="both"
    )
    prof, _ = integrate_ivp(req)
    return prof


def extremal_profiles(params: FlowParams):
    """The largest and smallest global profiles (upper, lower)."""
    if not in_j(params):
        raise NotInJ(f"c = {params.c} is not admissible at nu = {params.nu}")
    nu2 = params.nu**2
    interval = None
    if params.c1 <= -nu2 or params.c2 <= -nu2:
        interval = gamma_bounds(params, tol=1e-8)
    upper = _upper_profile(params, interval=interval)
    lower = _lower_profile(params, interval=interval)
    return upper, lower


def foliation(params: FlowParams, n: int):
    """n global profiles at gamma equally spaced across the interval."""
    if not in_j(params):
        raise NotInJ(f"c = {params.c} is not admissible at nu = {params.nu}")
    if params.c3 == bar_c3(params.c1, params.c2, params.nu):
        raise CriticalSurface("only one global profile on the critical surface")
    if n < 2:
        raise ValueError("need n >= 2 leaves")
    interval = gamma_bounds(params)
    upper, lower = extremal_profiles(params)
    gammas = np.linspace(interval.gamma_minus, interval.gamma_plus, n)
    leaves = [lower]
    for g in gammas[1:-1]:
        prof, _ = integrate_ivp(SolveRequest(params=params, ybar=0.0, gamma=g))
        leaves.append(prof)
    leaves.append(upper)
    return leaves


def _near_edge_values(prof: Profile, endpoint: str, deltas):
    """U at distances deltas from the endpoint, resolved in the
    stretched variable.

    Falls back to re-solving the initial value problem when the profile
    does not carry a stretched-layer representation (closed-form
    profiles whose plain-y evaluators lose the tiny distances to
    rounding).
    """
    near = getattr(prof, "near_edge", {})
    if endpoint in near:
        fn = near[endpoint]
        return np.array([fn(float(d)) for d in deltas])
    if prof.params is None:
        raise Inconclusive("no parameters to re-solve the profile near the edge")
    y0, y1 = prof.domain
    ybar = 0.0 if y0 < 0.0 < y1 else 0.5 * (y0 + y1)
    direction = "backward" if endpoint == "minus1" else "forward"
    req = SolveRequest(
        params=prof.params,
        ybar=ybar,
        gamma=float(prof.u(ybar)),
        direction=direction,
        depth=min(1e-12, float(np.min(deltas))),
    )
    solved, _ = integrate_ivp(req)
    near = getattr(solved, "near_edge", {})
    if endpoint not in near:
        raise Inconclusive("endpoint layer could not be resolved")
    fn = near[endpoint]
    return np.array([fn(float(d)) for d in deltas])


def _u_r_from_identity(p: FlowParams, endpoint: str, deltas, u_vals):
    """Radial component near an endpoint via the equation itself.

    u_r = U' = (P_c - 2 nu y U - U^2/2) / (nu (1-y^2)), written in the
    distance d = 1 -+ |y| to avoid catastrophic rounding.
    """
    d = np.asarray(deltas, dtype=float)
    u = np.asarray(u_vals, dtype=float)
    if endpoint == "minus1":
        y = -1.0 + d
        p_c = p.c1 * (2.0 - d) + p.c2 * d + p.c3 * d * (2.0 - d)
    else:
        y = 1.0 - d
        p_c = p.c1 * d + p.c2 * (2.0 - d) + p.c3 * d * (2.0 - d)
    num = p_c - 2.0 * p.nu * y * u - 0.5 * u * u
    return num / (p.nu * d * (2.0 - d))


_X_DYADIC = 1e-2 * 0.5 ** np.arange(10)  # distances |x'| in [1e-5, 1e-2]


def _dyadic_deltas():
    x = _X_DYADIC
    return x * x / (1.0 + np.sqrt(1.0 - x * x)), x


def singularity_type(prof: Profile, endpoint: str, nu: float) -> SingularityType:
    """Classify the profile's behavior at an endpoint.

    Type 3: the tangential velocity is of order 1/distance (nonzero
    endpoint value of U).  Type 2: the radial velocity grows like
    |log distance|, with the coefficient from a linear fit.  Type 1:
    everything stays bounded.
    """
    if endpoint == "minus1" and not prof.reaches_minus1:
        raise Inconclusive("profile does not reach y = -1")
    if endpoint == "plus1" and not prof.reaches_plus1:
        raise Inconclusive("profile does not reach y = +1")
    u_end = boundary_limit(prof, endpoint).value
    if abs(u_end) >= 1e-3:
        return SingularityType(kind=SingType.TYPE3, order_coefficient=abs(u_end))

    deltas, xs = _dyadic_deltas()
    u_vals = _near_edge_values(prof, endpoint, deltas)
    p = prof.params
    u_r = _u_r_from_identity(p, endpoint, deltas, u_vals)
    lx = np.log(xs)
    m, _ = np.polyfit(lx, u_r, 1)
    if abs(m) <= 1e-3:
        return SingularityType(kind=SingType.TYPE1)
    # consecutive-difference slopes vet the fit
    local = np.diff(u_r) / np.diff(lx)
    spread = (local.max() - local.min()) / abs(m)
    if spread > 0.10:
        raise Inconclusive(
            f"dyadic log-fit slopes spread {spread:.1%} around {m:.4g}"
        )
    return SingularityType(kind=SingType.TYPE2, log_coefficient=float(m))


def asymptotic_indicators(prof: Profile, endpoint: str, nu: float):
    """(tau, eta): endpoint value of U, and for the marginal value
    tau = 2 nu the logarithmic rate constant eta in {0, 2 nu}."""
    tau = boundary_limit(prof, endpoint).value
    # mirror the right endpoint onto the left so the marginal value is
    # +2 nu in both cases
    signed = tau if endpoint == "minus1" else -tau
    if abs(signed - 2.0 * nu) > 1e-3:
        return tau, None
    deltas, xs = _dyadic_deltas()
    u_vals = _near_edge_values(prof, endpoint, deltas)
    if endpoint == "plus1":
        u_vals = -u_vals
    vals = (u_vals - 2.0 * nu) * np.log(xs)
    # extrapolate the slow 1/log corrections away
    t = 1.0 / np.log(xs)
    est = float(np.polyfit(t, vals, 1)[1])
    eta = 0.0 if abs(est) < abs(est - 2.0 * nu) else 2.0 * nu
    if min(abs(est), abs(est - 2.0 * nu)) > 0.5 * nu:
        raise Inconclusive(f"eta estimate {est:.4g} is far from both 0 and 2 nu")
    return tau, eta
