"""Initial-value solves of the reduced equation in three representations.

The nonlinear equation

    nu (1-y^2) U' + 2 nu y U + U^2/2 = P_c(y),  U(ybar) = gamma,

is integrated directly (integrate_ivp), through the equivalent linear
second-order equation for w with U = 2 nu (1-y^2) w'/w (linear_rep), and
through the hypergeometric fundamental system when c1, c2 >= -nu^2
(hypergeom_rep).  The three agree on their common domains and serve as
cross-checks on each other.
"""

import cmath
import enum
import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from . import _integrate as kern
from ._integrate import DenseSolution
from .closedform import Profile
from .errors import (
    DegenerateC,
    EndpointNotReached,
    ToleranceFailure,
)
from .params import FlowParams, hyp_map, tau_values
from .specfun import hyp2f1, hyp2f1_deriv

_YSWITCH = 0.95
_DEPTH = 1e-12
_YLIM_LINEAR = 1.0 - 1e-6


@dataclass(frozen=True)
class SolveRequest:
    params: FlowParams
    ybar: float
    gamma: float
    direction: str = "both"  # "forward" | "backward" | "both"
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    blowup_threshold: float = 1e6
    depth: float = _DEPTH  # distance 1 -+ |y| down to which endpoints are resolved

    def __post_init__(self):
        if not (-1.0 < self.ybar < 1.0):
            raise ValueError(f"ybar must be in (-1, 1), got {self.ybar}")
        if self.direction not in ("forward", "backward", "both"):
            raise ValueError(f"unknown direction {self.direction!r}")
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise ValueError("tolerances must be positive")
        p = self.params
        if p.c1 >= -p.nu**2 and p.c2 >= -p.nu**2:
            taus = tau_values(p)
            tmax = max(abs(t) for t in (taus.tau1, taus.tau2, taus.tau1p, taus.tau2p))
            if self.blowup_threshold <= tmax:
                raise ValueError(
                    "blowup_threshold must exceed all endpoint values"
                )


class ClassLabel(enum.Enum):
    GLOBAL = "global"
    A1 = "a1"  # one blow-up at y1 < 1, U -> -inf
    A2 = "a2"  # one blow-up at y0 > -1, U -> +inf
    A3 = "a3"  # both


@dataclass(frozen=True)
class DomainClass:
    label: ClassLabel
    blowup_points: Tuple[float, ...]


@dataclass
class LinearRep:
    y_samples: np.ndarray
    w_samples: np.ndarray
    wprime_samples: np.ndarray
    mu: float
    D: float  # math.inf means w = w1
    wronskian_range: Tuple[float, float]


@dataclass
class _Segment:
    kind: int  # kern.FORM_*
    dense: DenseSolution
    y_lo: float
    y_hi: float

    def eval(self, y):
        if self.kind == kern.FORM_PLAIN:
            return self.dense(y)
        if self.kind == kern.FORM_LEFT:
            return self.dense(np.log1p(np.asarray(y)))
        return self.dense(np.log(1.0 - np.asarray(y)))

    def node_points(self):
        """(y, u) at the accepted steps, ascending in y."""
        ts = self.dense.ts
        us = self.dense.ys
        if self.kind == kern.FORM_PLAIN:
            ys = ts
        elif self.kind == kern.FORM_LEFT:
            ys = -1.0 + np.exp(ts)
        else:
            ys = 1.0 - np.exp(ts)
        if ys[0] > ys[-1]:
            return ys[::-1], us[::-1]
        return ys, us


@dataclass
class _SideResult:
    segments: list
    reached: bool
    blowup_y: Optional[float]
    end_value: Optional[float]


def _max_abs_p(p: FlowParams):
    # quadratic on [-1, 1]: extrema at the ends and the vertex
    vals = [abs(p.p(-1.0)), abs(p.p(1.0))]
    if p.c3 != 0.0:
        yv = (p.c2 - p.c1) / (2.0 * p.c3)
        if -1.0 < yv < 1.0:
            vals.append(abs(p.p(yv)))
    return max(vals)


def _certify_blowup(p: FlowParams, u_d, threshold):
    """Threshold crossings escape to infinity when the quadratic term
    dominates; this checks u^2/4 > |P|_inf + 2 nu |u| at detection."""
    m = abs(u_d)
    if 0.25 * m * m <= _max_abs_p(p) + 2.0 * p.nu * m:
        raise ToleranceFailure(
            "blowup_threshold too small to certify escape; raise it"
        )


def _blowup_ordinate(p, ybar, gamma, direction, y_hint, rtol, atol):
    """Zero of the linear-representation w nearest the detection point.

    U blows up exactly where w vanishes; a sign change of w brackets the
    ordinate far more robustly than chasing U itself.
    """
    mu = gamma / (2.0 * p.nu * (1.0 - ybar * ybar))
    if mu != 0.0:
        w0, wp0 = 1.0 / mu, 1.0
    else:
        w0, wp0 = 1.0, 0.0
    cap = direction * (1.0 - 1e-9)
    margin = 1e-3
    while True:
        target = y_hint + direction * margin
        if direction * target > direction * cap:
            target = cap
        status, ts, ws, ks = kern.integrate_linear(
            p.nu, p.c1, p.c2, p.c3, ybar, target, w0, wp0, rtol, atol
        )
        if status != kern.STATUS_DONE or len(ts) < 2:
            raise ToleranceFailure("linear solve for the blow-up ordinate failed")
        dense = DenseSolution(ts, ws, ks)
        z = dense.crossing(0.0, component=0, tol=1e-9)
        if z is not None:
            return float(z)
        if target == cap:
            raise ToleranceFailure(
                "no sign change of w near the detected blow-up"
            )
        margin *= 10.0


def _integrate_side(req: SolveRequest, direction: int, refine=True) -> _SideResult:
    p = req.params
    rtol, atol = req.rel_tol, req.abs_tol
    thr = req.blowup_threshold
    segments = []
    y, u = req.ybar, req.gamma

    if abs(u) >= thr:
        raise ToleranceFailure("initial value exceeds the blow-up threshold")

    def handle_blowup(y_d, u_d):
        if direction * u_d > 0:
            # a profile cannot climb through the region where the
            # quadratic term forces it back; this only occurs when the
            # threshold is far too low
            raise ToleranceFailure(
                "escape with the wrong sign; blowup_threshold too small"
            )
        _certify_blowup(p, u_d, thr)
        if refine:
            ord_y = _blowup_ordinate(
                p, req.ybar, req.gamma, direction, y_d, rtol, atol
            )
        else:
            ord_y = y_d
        return _SideResult(segments, False, ord_y, None)

    # zone 1: stretched layer behind ybar (only if ybar starts inside it)
    if direction > 0 and y < -_YSWITCH:
        t0, t1 = math.log1p(y), math.log1p(-_YSWITCH)
        status, ts, us, ks = kern.integrate_riccati(
            kern.FORM_LEFT, p.nu, p.c1, p.c2, p.c3, t0, t1, u, rtol, atol, thr
        )
        if len(ts) >= 2:
            segments.append(
                _Segment(kern.FORM_LEFT, DenseSolution(ts, us, ks), y, -_YSWITCH)
            )
        if status == kern.STATUS_BLOWUP:
            return handle_blowup(-1.0 + math.exp(ts[-1]), us[-1])
        if status != kern.STATUS_DONE:
            raise ToleranceFailure("step-size underflow without blow-up")
        y, u = -_YSWITCH, float(us[-1])
    elif direction < 0 and y > _YSWITCH:
        t0, t1 = math.log(1.0 - y), math.log(1.0 - _YSWITCH)
        status, ts, us, ks = kern.integrate_riccati(
            kern.FORM_RIGHT, p.nu, p.c1, p.c2, p.c3, t0, t1, u, rtol, atol, thr
        )
        if len(ts) >= 2:
            segments.append(
                _Segment(kern.FORM_RIGHT, DenseSolution(ts, us, ks), _YSWITCH, y)
            )
        if status == kern.STATUS_BLOWUP:
            return handle_blowup(1.0 - math.exp(ts[-1]), us[-1])
        if status != kern.STATUS_DONE:
            raise ToleranceFailure("step-size underflow without blow-up")
        y, u = _YSWITCH, float(us[-1])

    # zone 2: plain variable across the bulk
    target = direction * _YSWITCH
    if direction * y < _YSWITCH:
        status, ts, us, ks = kern.integrate_riccati(
            kern.FORM_PLAIN, p.nu, p.c1, p.c2, p.c3, y, target, u, rtol, atol, thr
        )
        if len(ts) >= 2:
            lo, hi = (y, target) if direction > 0 else (target, y)
            segments.append(
                _Segment(kern.FORM_PLAIN, DenseSolution(ts, us, ks), lo, hi)
            )
        if status == kern.STATUS_BLOWUP:
            return handle_blowup(ts[-1], us[-1])
        if status != kern.STATUS_DONE:
            raise ToleranceFailure("step-size underflow without blow-up")
        y, u = target, float(us[-1])

    # zone 3: stretched layer at the target endpoint
    form = kern.FORM_RIGHT if direction > 0 else kern.FORM_LEFT
    t0 = math.log(1.0 - direction * y)
    t1 = math.log(req.depth)
    status, ts, us, ks = kern.integrate_riccati(
        form, p.nu, p.c1, p.c2, p.c3, t0, t1, u, rtol, atol, thr
    )
    if len(ts) >= 2:
        edge = direction * (1.0 - math.exp(min(ts[0], ts[-1])))
        lo, hi = (y, edge) if direction > 0 else (edge, y)
        segments.append(_Segment(form, DenseSolution(ts, us, ks), lo, hi))
    if status == kern.STATUS_BLOWUP:
        y_d = direction * (1.0 - math.exp(ts[-1]))
        return handle_blowup(y_d, us[-1])
    if status != kern.STATUS_DONE:
        raise ToleranceFailure("step-size underflow without blow-up")
    return _SideResult(segments, True, None, float(us[-1]))


def _composite_profile(req, fwd: Optional[_SideResult], bwd: Optional[_SideResult]):
    p = req.params
    segments = []
    if bwd is not None:
        segments.extend(bwd.segments)
    if fwd is not None:
        segments.extend(fwd.segments)
    segments.sort(key=lambda s: s.y_lo)

    ys_parts, us_parts = [], []
    for s in segments:
        ys, us = s.node_points()
        ys_parts.append(ys)
        us_parts.append(us)
    y_all = np.concatenate(ys_parts)
    u_all = np.concatenate(us_parts)
    order = np.argsort(y_all, kind="stable")
    y_all, u_all = y_all[order], u_all[order]
    keep = np.concatenate(([True], np.diff(y_all) > 0))
    y_all, u_all = y_all[keep], u_all[keep]

    y0 = -1.0
    y1 = 1.0
    blowups = []
    if bwd is not None and bwd.blowup_y is not None:
        y0 = bwd.blowup_y
        blowups.append(y0)
    if fwd is not None and fwd.blowup_y is not None:
        y1 = fwd.blowup_y
        blowups.append(y1)
    mask = (y_all > y0) & (y_all < y1)
    y_all, u_all = y_all[mask], u_all[mask]

    seg_list = list(segments)

    def ev(y):
        y_arr = np.asarray(y, dtype=float)
        scalar = y_arr.ndim == 0
        yf = np.atleast_1d(y_arr).ravel()
        out = np.empty_like(yf)
        for i, yi in enumerate(yf):
            s = None
            for cand in seg_list:
                if cand.y_lo - 1e-12 <= yi <= cand.y_hi + 1e-12:
                    s = cand
                    break
            if s is None:
                # clamp to the covered range
                s = seg_list[0] if yi < seg_list[0].y_lo else seg_list[-1]
            out[i] = s.eval(float(np.clip(yi, s.y_lo, s.y_hi)))
        return float(out[0]) if scalar else out.reshape(y_arr.shape)

    near_edge = {}
    if bwd is not None and bwd.reached and bwd.segments:
        last = bwd.segments[-1]
        if last.kind == kern.FORM_LEFT:
            near_edge["minus1"] = lambda d, s=last: float(s.dense(math.log(d)))
    if fwd is not None and fwd.reached and fwd.segments:
        last = fwd.segments[-1]
        if last.kind == kern.FORM_RIGHT:
            near_edge["plus1"] = lambda d, s=last: float(s.dense(math.log(d)))

    prof = Profile(
        y_grid=y_all,
        u_values=u_all,
        domain=(y0, y1),
        reaches_minus1=bwd is not None and bwd.reached,
        reaches_plus1=fwd is not None and fwd.reached,
        params=p,
        evaluator=ev,
        blowup_points=tuple(sorted(blowups)),
    )
    prof.near_edge = near_edge
    return prof


def _classify(prof: Profile) -> DomainClass:
    has_left = prof.domain[0] > -1.0
    has_right = prof.domain[1] < 1.0
    if has_left and has_right:
        label = ClassLabel.A3
    elif has_left:
        label = ClassLabel.A2
    elif has_right:
        label = ClassLabel.A1
    else:
        label = ClassLabel.GLOBAL
    return DomainClass(label=label, blowup_points=prof.blowup_points)


def endpoint_reachable(req: SolveRequest, direction: int) -> bool:
    """Whether the solution extends to +1 (direction +1) or -1 (-1).

    Cheap shooting predicate: blow-ups are certified but their
    ordinates are not refined.

    At a degenerate endpoint (c = -nu^2 on that side) the two boundary
    values coincide at +-2 nu and escaping solutions cross the depth cut
    before diverging, so reaching the cut is not enough: global
    solutions approach the common value strictly from the bounded side,
    and the sign of U(depth) -+ 2 nu separates them sharply.
    """
    res = _integrate_side(req, direction, refine=False)
    if not res.reached:
        return False
    p = req.params
    nu2 = p.nu * p.nu
    if direction < 0 and abs(p.c1 + nu2) < 1e-9:
        return res.end_value < 2.0 * p.nu
    if direction > 0 and abs(p.c2 + nu2) < 1e-9:
        return res.end_value > -2.0 * p.nu
    return True


def integrate_ivp(req: SolveRequest):
    """Adaptive solve of the initial value problem toward both poles.

    Returns (Profile, DomainClass).  Blow-up ordinates are certified by
    the sign rule plus a quadratic-domination check and refined through
    the linear representation to well below 1e-6.
    """
    fwd = _integrate_side(req, +1) if req.direction in ("forward", "both") else None
    bwd = _integrate_side(req, -1) if req.direction in ("backward", "both") else None
    prof = _composite_profile(req, fwd, bwd)
    return prof, _classify(prof)


def _linear_dense(p, ybar, w0, wp0, target, rtol, atol):
    status, ts, ws, ks = kern.integrate_linear(
        p.nu, p.c1, p.c2, p.c3, ybar, target, w0, wp0, rtol, atol
    )
    if status != kern.STATUS_DONE or len(ts) < 2:
        raise ToleranceFailure("linear fundamental solve failed")
    return DenseSolution(ts, ws, ks)


class _WPair:
    """w and w' on (-ylim, ylim) from two one-sided integrations."""

    def __init__(self, p, ybar, w0, wp0, ylim, rtol, atol):
        self.ybar = ybar
        self.left = _linear_dense(p, ybar, w0, wp0, -ylim, rtol, atol)
        self.right = _linear_dense(p, ybar, w0, wp0, ylim, rtol, atol)

    def __call__(self, y):
        y_arr = np.atleast_1d(np.asarray(y, dtype=float))
        out = np.empty((y_arr.size, 2))
        lo = y_arr <= self.ybar
        if lo.any():
            out[lo] = self.left(y_arr[lo])
        if (~lo).any():
            out[~lo] = self.right(y_arr[~lo])
        if np.ndim(y) == 0:
            return out[0]
        return out


def linear_rep(req: SolveRequest, ylim=_YLIM_LINEAR, n_samples=2001):
    """Solve through the linear second-order equation.

    Integrates the fundamental pair w1 (w=1, w'=0 at ybar) and w2 (w=0,
    w'=1), combines them with the initial-slope constant D, and reads
    U = 2 nu (1-y^2) w'/w.  Zeros of w are the blow-up ordinates.
    """
    p = req.params
    rtol, atol = req.rel_tol, req.abs_tol
    ybar, gamma = req.ybar, req.gamma
    w1 = _WPair(p, ybar, 1.0, 0.0, ylim, rtol, atol)
    w2 = _WPair(p, ybar, 0.0, 1.0, ylim, rtol, atol)

    mu = gamma / (2.0 * p.nu * (1.0 - ybar * ybar))
    # at ybar: w1' - mu w1 = -mu, w2' - mu w2 = 1
    if mu != 0.0:
        D = -1.0 / (0.0 - mu)

        def w_eval(y):
            v1 = w1(y)
            v2 = w2(y)
            return D * v1 + v2

    else:
        D = math.inf

        def w_eval(y):
            return w1(y)

    ys = np.linspace(-ylim, ylim, n_samples)
    wv = w_eval(ys)
    w_s, wp_s = wv[:, 0], wv[:, 1]

    # Wronskian of the fundamental pair is constant for this equation
    v1 = w1(ys)
    v2 = w2(ys)
    wron = v1[:, 0] * v2[:, 1] - v1[:, 1] * v2[:, 0]
    rep = LinearRep(
        y_samples=ys,
        w_samples=w_s,
        wprime_samples=wp_s,
        mu=mu,
        D=D,
        wronskian_range=(float(wron.min()), float(wron.max())),
    )

    # zeros of w bracket the maximal interval around ybar
    zeros = []
    sign = np.sign(w_s)
    for i in np.nonzero(sign[:-1] * sign[1:] < 0)[0]:
        zeros.append(_bisect_scalar(lambda y: float(w_eval(y)[0]), ys[i], ys[i + 1]))
    left = max((z for z in zeros if z < ybar), default=-1.0)
    right = min((z for z in zeros if z > ybar), default=1.0)

    def ev(y):
        y_arr = np.asarray(y, dtype=float)
        yf = np.clip(np.atleast_1d(y_arr).astype(float), -ylim, ylim)
        v = w_eval(yf)
        u = 2.0 * p.nu * (1.0 - yf * yf) * v[:, 1] / v[:, 0]
        return float(u[0]) if y_arr.ndim == 0 else u

    grid_mask = (ys > left) & (ys < right)
    yg = ys[grid_mask]
    prof = Profile(
        y_grid=yg,
        u_values=ev(yg),
        domain=(left, right),
        reaches_minus1=left == -1.0,
        reaches_plus1=right == 1.0,
        params=p,
        evaluator=ev,
        blowup_points=tuple(z for z in (left, right) if -1.0 < z < 1.0),
    )
    return rep, prof


def _bisect_scalar(f, a, b, tol=1e-13):
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    while abs(b - a) > tol * max(1.0, abs(a), abs(b)):
        m = 0.5 * (a + b)
        fm = f(m)
        if fm == 0.0:
            return m
        if fa * fm < 0.0:
            b, fb = m, fm
        else:
            a, fa = m, fm
    return 0.5 * (a + b)


def hypergeom_rep(req: SolveRequest, z_pad=1e-3, n_grid=801):
    """Solve through the hypergeometric fundamental system.

    Valid for c1, c2 >= -nu^2 and non-integer C; raises DegenerateC
    otherwise so callers can fall back to linear_rep.
    """
    p = req.params
    hm = hyp_map(p)
    a, b = hm.a, hm.b
    A, B, C = hm.A, hm.B, hm.C
    if abs(C - round(C)) < 1e-12:
        raise DegenerateC(f"C = {C} is an integer; fundamental pair degenerates")

    def xi1(z):
        return hyp2f1(A, B, C, z)

    def xi1p(z):
        return hyp2f1_deriv(A, B, C, z)

    A2, B2, C2 = 1.0 + A - C, 1.0 + B - C, 2.0 - C

    def xi2(z):
        return z ** (1.0 - C) * hyp2f1(A2, B2, C2, z)

    def xi2p(z):
        f = hyp2f1(A2, B2, C2, z)
        fp = hyp2f1_deriv(A2, B2, C2, z)
        return (1.0 - C) * z ** (-C) * f + z ** (1.0 - C) * fp

    ybar, gamma = req.ybar, req.gamma
    zbar = 0.5 * (1.0 + ybar)
    mu_t = (gamma - a * (1.0 - ybar) - b * (1.0 + ybar)) / (
        p.nu * (1.0 - ybar * ybar)
    )
    den = xi1p(zbar) - mu_t * xi1(zbar)
    num = xi2p(zbar) - mu_t * xi2(zbar)
    scale = abs(xi1p(zbar)) + abs(mu_t * xi1(zbar)) + 1.0
    if abs(den) < 1e-14 * scale:
        D_t = None  # xi = xi1

        def xi(z):
            return xi1(z)

        def xip(z):
            return xi1p(z)

    else:
        D_t = -num / den

        def xi(z):
            return D_t * xi1(z) + xi2(z)

        def xip(z):
            return D_t * xi1p(z) + xi2p(z)

    def ev_one(y):
        z = 0.5 * (1.0 + y)
        val = a * (1.0 - y) + b * (1.0 + y) + p.nu * (1.0 - y * y) * (
            xip(z) / xi(z)
        )
        val = complex(val)
        if abs(val.imag) > 1e-10 * max(1.0, abs(val.real)):
            raise ToleranceFailure(
                f"imaginary residue {val.imag:.3e} in the series evaluation"
            )
        return val.real

    def ev(y):
        y_arr = np.asarray(y, dtype=float)
        if y_arr.ndim == 0:
            return ev_one(float(y_arr))
        return np.array([ev_one(float(v)) for v in y_arr])

    # zeros of xi bound the maximal domain around zbar
    zg = np.linspace(z_pad, 1.0 - z_pad, n_grid)
    xv = np.array([complex(xi(z)).real for z in zg])
    zeros = []
    sign = np.sign(xv)
    for i in np.nonzero(sign[:-1] * sign[1:] < 0)[0]:
        zeros.append(
            _bisect_scalar(lambda z: complex(xi(z)).real, zg[i], zg[i + 1])
        )
    left_z = max((z for z in zeros if z < zbar), default=0.0)
    right_z = min((z for z in zeros if z > zbar), default=1.0)
    y0 = 2.0 * left_z - 1.0
    y1 = 2.0 * right_z - 1.0

    mask = (zg > left_z) & (zg < right_z)
    yg = 2.0 * zg[mask] - 1.0
    return Profile(
        y_grid=yg,
        u_values=ev(yg),
        domain=(y0, y1),
        reaches_minus1=y0 == -1.0,
        reaches_plus1=y1 == 1.0,
        params=p,
        evaluator=ev,
        blowup_points=tuple(v for v in (y0, y1) if -1.0 < v < 1.0),
    )


def blowup_solution(params: FlowParams, y0: float, side: str, rel_tol=1e-10,
                    abs_tol=1e-12, ylim=_YLIM_LINEAR):
    """The unique local solution blowing up at y0.

    side="above" gives the branch on (y0, .) with U -> +inf at y0+;
    side="below" gives the branch on (., y0) with U -> -inf at y0-.
    The profile is scale-free: it depends only on w'/w with w(y0) = 0.
    """
    if side not in ("above", "below"):
        raise ValueError(f"side must be 'above' or 'below', got {side!r}")
    if not (-1.0 < y0 < 1.0):
        raise ValueError("y0 must be interior")
    direction = 1.0 if side == "above" else -1.0
    dense = _linear_dense(params, y0, 0.0, 1.0, direction * ylim, rel_tol, abs_tol)
    # w vanishes at y0 by construction; the next zero, if any, closes the domain
    zero2 = None
    ts, ws = dense.ts, dense.ys
    for i in range(1, len(ts) - 1):
        if ws[i, 0] * ws[i + 1, 0] < 0:
            zero2 = _bisect_scalar(lambda y: float(dense(y)[0]), ts[i], ts[i + 1])
            break

    nu = params.nu

    def ev(y):
        y_arr = np.asarray(y, dtype=float)
        yf = np.atleast_1d(y_arr).astype(float)
        v = dense(yf)
        u = 2.0 * nu * (1.0 - yf * yf) * v[:, 1] / v[:, 0]
        return float(u[0]) if y_arr.ndim == 0 else u

    if side == "above":
        dom = (y0, zero2 if zero2 is not None else 1.0)
    else:
        dom = (zero2 if zero2 is not None else -1.0, y0)
    pad = 1e-9
    yg = np.array([t for t in np.sort(ts) if dom[0] + pad < t < dom[1] - pad])
    return Profile(
        y_grid=yg,
        u_values=ev(yg),
        domain=dom,
        reaches_minus1=dom[0] == -1.0,
        reaches_plus1=dom[1] == 1.0,
        params=params,
        evaluator=ev,
        blowup_points=tuple(v for v in dom if -1.0 < v < 1.0),
    )


@dataclass(frozen=True)
class BoundaryValue:
    value: float
    snapped: bool
    tau_member: Optional[str] = None


def boundary_limit(prof: Profile, endpoint: str, snap_tol=1e-3) -> BoundaryValue:
    """Extrapolated endpoint value, snapped to the admissible pair.

    endpoint is 'minus1' or 'plus1'.  The value is snapped to the
    nearest member of {tau1, tau2} (left) or {tau1', tau2'} (right)
    when within snap_tol; otherwise returned raw with snapped=False.
    """
    if endpoint == "minus1":
        if not prof.reaches_minus1:
            raise EndpointNotReached("profile does not reach y = -1")
    elif endpoint == "plus1":
        if not prof.reaches_plus1:
            raise EndpointNotReached("profile does not reach y = +1")
    else:
        raise ValueError(f"unknown endpoint {endpoint!r}")

    near = getattr(prof, "near_edge", {})
    if endpoint in near:
        # the stretched-layer solution is resolved down to tiny depths;
        # extrapolate in the depth variable
        f1 = near[endpoint](1e-9)
        f2 = near[endpoint](0.5e-9)
        f3 = near[endpoint](0.25e-9)
        if abs(f3 - f2) <= 0.7 * abs(f2 - f1) or f2 == f1:
            raw = (8.0 * f3 - 6.0 * f2 + f1) / 3.0
        else:
            # logarithmic approach: fit f = L + A/(ln d + C) through three
            # depths equally spaced in ln d, where L drops out linearly
            g1, g2, g3 = (near[endpoint](e) for e in (1e-4, 1e-8, 1e-12))
            den = 2.0 * g2 - g1 - g3
            if abs(den) > 1e-14 * (abs(g1) + abs(g3) + 1.0):
                raw = (g1 * g2 - 2.0 * g1 * g3 + g2 * g3) / den
            else:
                raw = g3
    else:
        raw = prof.endpoint_value(endpoint)

    if prof.params is None:
        return BoundaryValue(value=raw, snapped=False)
    taus = tau_values(prof.params)
    pair = taus.members(endpoint)
    names = ("tau1", "tau2") if endpoint == "minus1" else ("tau1p", "tau2p")
    idx = int(np.argmin([abs(raw - t) for t in pair]))
    if abs(raw - pair[idx]) <= snap_tol:
        return BoundaryValue(value=pair[idx], snapped=True, tau_member=names[idx])
    return BoundaryValue(value=raw, snapped=False)
