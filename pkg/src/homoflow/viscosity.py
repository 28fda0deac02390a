"""Small-viscosity sweeps: convergence of the viscous profiles to the
inviscid branches V_pm = +-sqrt(2 P_c), with rate fitting and
transition-layer measurement.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import NotEulerAdmissible, NotInJ, SelectionFailure
from .params import FlowParams, in_j
from .classify import extremal_profiles, gamma_bounds
from .riccati import SolveRequest, integrate_ivp


@dataclass(frozen=True)
class SweepReport:
    nu_list: tuple
    errors_plus: tuple  # sup gap to V+ on the upper window, per nu
    errors_minus: tuple  # sup gap to V- on the lower window, per nu
    rate_exponent: float
    rate_constant: float
    fit_residual: float
    epsilon: float
    layer_centers: Optional[tuple] = None
    layer_widths: Optional[tuple] = None


def _check_euler_admissible(c):
    """P_c >= 0 on [-1, 1] (isolated zeros allowed) with positive
    endpoint values, checked on the exact quadratic."""
    c1, c2, c3 = c
    lo = min(2.0 * c1, 2.0 * c2)
    if c3 < 0.0:
        yv = (c2 - c1) / (2.0 * c3)
        if -1.0 < yv < 1.0:
            pv = c1 * (1.0 - yv) + c2 * (1.0 + yv) + c3 * (1.0 - yv * yv)
            lo = min(lo, pv + 1e-12)
    if lo <= 0.0 or min(2.0 * c1, 2.0 * c2) <= 0.0:
        raise NotEulerAdmissible(f"P_c is not nonnegative on [-1, 1] for c={c}")


def _v_branch(c, y):
    c1, c2, c3 = c
    p = c1 * (1.0 - y) + c2 * (1.0 + y) + c3 * (1.0 - y * y)
    return np.sqrt(2.0 * p)


def _fit_rate(nus, errs):
    """Least-squares exponent and constant of err ~ const * nu^exponent."""
    ln_nu = np.log(np.asarray(nus, dtype=float))
    ln_e = np.log(np.asarray(errs, dtype=float))
    m, b = np.polyfit(ln_nu, ln_e, 1)
    resid = float(np.max(np.abs(ln_e - (m * ln_nu + b))))
    return float(m), float(math.exp(b)), resid


def extremal_limit_sweep(c, nu_list, epsilon: float = 0.1) -> SweepReport:
    """Gap between the extremal viscous profiles and +-sqrt(2 P_c).

    The largest profile converges to V+ and the smallest to V- on
    windows that keep distance epsilon from the poles; the fitted
    log-log slope of the larger of the two gaps is the reported rate.
    """
    _check_euler_admissible(c)
    nus = tuple(float(v) for v in nu_list)
    y = np.linspace(-1.0 + epsilon, 1.0 - epsilon, 801)
    v = _v_branch(c, y)
    errs_p, errs_m = [], []
    for nu in nus:
        p = FlowParams(nu, *c)
        if not in_j(p):
            raise NotInJ(f"c={c} not admissible at nu={nu}")
        upper, lower = extremal_profiles(p)
        errs_p.append(float(np.max(np.abs(upper.u(y) - v))))
        errs_m.append(float(np.max(np.abs(lower.u(y) + v))))
    worst = np.maximum(errs_p, errs_m)
    m, const, resid = _fit_rate(nus, worst)
    return SweepReport(
        nu_list=nus,
        errors_plus=tuple(errs_p),
        errors_minus=tuple(errs_m),
        rate_exponent=m,
        rate_constant=const,
        fit_residual=resid,
        epsilon=epsilon,
    )


def select_interior_profile(p: FlowParams, y0: float, tol: float = 1e-8):
    """The interior global profile whose zero crossing sits at y0.

    Well-defined because the global profiles are pointwise ordered in
    gamma = U(0) and bracket zero at y0 between the extremals.
    """
    interval = gamma_bounds(p)
    pad = 10.0 * interval.tol

    def u_at_y0(g):
        prof, _ = integrate_ivp(SolveRequest(params=p, ybar=0.0, gamma=g))
        return prof, float(prof.u(y0))

    lo, hi = interval.gamma_minus + pad, interval.gamma_plus - pad
    _, ulo = u_at_y0(lo)
    _, uhi = u_at_y0(hi)
    if not ulo < 0.0 < uhi:
        raise SelectionFailure(
            f"no interior zero crossing at y0={y0}: bracket "
            f"values ({ulo:.3g}, {uhi:.3g})"
        )
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        _, um = u_at_y0(mid)
        if um > 0.0:
            hi = mid
        else:
            lo = mid
    prof, _ = u_at_y0(0.5 * (lo + hi))
    return prof


def interior_limit_sweep(
    c, theta0: float, nu_list, epsilon: float = 0.1
) -> SweepReport:
    """Two-sided convergence of interior profiles across a transition
    layer pinned at cos(theta0).

    Each profile is selected so its zero crossing sits at
    y0 = cos(theta0); the gap to V+ is measured above the layer and to
    V- below, and the layer is located as the interval where |U| stays
    under half the smallest windowed branch value.
    """
    _check_euler_admissible(c)
    y0 = math.cos(theta0)
    nus = tuple(float(v) for v in nu_list)
    y_hi = np.linspace(y0 + epsilon, 1.0 - epsilon, 401)
    y_lo = np.linspace(-1.0 + epsilon, y0 - epsilon, 401)
    v_hi = _v_branch(c, y_hi)
    v_lo = _v_branch(c, y_lo)
    # half of the limiting branch magnitude at the layer center; P_c may
    # degenerate elsewhere in the window without spoiling the measurement
    half_jump = 0.5 * float(_v_branch(c, np.array([y0]))[0])

    errs_p, errs_m, centers, widths = [], [], [], []
    y_fine = np.linspace(-1.0 + 1e-4, 1.0 - 1e-4, 8001)
    for nu in nus:
        p = FlowParams(nu, *c)
        if not in_j(p):
            raise NotInJ(f"c={c} not admissible at nu={nu}")
        prof = select_interior_profile(p, y0)
        errs_p.append(float(np.max(np.abs(prof.u(y_hi) - v_hi))))
        errs_m.append(float(np.max(np.abs(prof.u(y_lo) + v_lo))))
        u = prof.u(y_fine)
        inside = np.abs(u) < half_jump
        # the contiguous run around the pinned crossing
        idx0 = int(np.searchsorted(y_fine, y0))
        if not inside[idx0]:
            raise SelectionFailure("selected profile is not small at y0")
        a = idx0
        while a > 0 and inside[a - 1]:
            a -= 1
        b = idx0
        while b < len(y_fine) - 1 and inside[b + 1]:
            b += 1
        widths.append(float(y_fine[b] - y_fine[a]))
        sign = np.sign(u)
        cross = np.nonzero(sign[:-1] * sign[1:] < 0)[0]
        ci = cross[np.argmin(np.abs(y_fine[cross] - y0))]
        ya, yb = y_fine[ci], y_fine[ci + 1]
        centers.append(float(ya - u[ci] * (yb - ya) / (u[ci + 1] - u[ci])))

    worst = np.maximum(errs_p, errs_m)
    m, const, resid = _fit_rate(nus, worst)
    return SweepReport(
        nu_list=nus,
        errors_plus=tuple(errs_p),
        errors_minus=tuple(errs_m),
        rate_exponent=m,
        rate_constant=const,
        fit_residual=resid,
        epsilon=epsilon,
        layer_centers=tuple(centers),
        layer_widths=tuple(widths),
    )
