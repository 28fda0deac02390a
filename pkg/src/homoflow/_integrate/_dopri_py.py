"""Pure-Python Dormand-Prince 5(4) kernels for the reduced equations.

Two hard-coded right-hand sides:

* the nonlinear first-order equation for U_theta(y), in plain y or in a
  stretched variable s = ln(1 -+ y) that regularizes the (1 - y^2)
  degeneracy near the endpoints;
* the equivalent second-order linear equation for w(y).

The compiled twin in _dopri_cy.pyx implements the identical algorithm;
either can back the package (selected at import in __init__).
"""

import math

import numpy as np

STATUS_DONE = 0
STATUS_BLOWUP = 1
STATUS_UNDERFLOW = 2
STATUS_MAXSTEPS = 3

FORM_PLAIN = 0
FORM_LEFT = 1  # t = ln(1 + y), y = -1 + e^t
FORM_RIGHT = 2  # t = ln(1 - y), y = 1 - e^t

# Dormand-Prince tableau.
_C = (0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0)
_A = (
    (),
    (1.0 / 5.0,),
    (3.0 / 40.0, 9.0 / 40.0),
    (44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0),
    (19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0),
    (
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
    ),
    (
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ),
)
_E = (
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
)
# Dense-output polynomial coefficients (quartic interpolant).
DENSE_P = np.array(
    [
        [
            1.0,
            -8048581381.0 / 2820520608.0,
            8663915743.0 / 2820520608.0,
            -12715105075.0 / 11282082432.0,
        ],
        [0.0, 0.0, 0.0, 0.0],
        [
            0.0,
            131558114200.0 / 32700410799.0,
            -68118460800.0 / 10900136933.0,
            87487479700.0 / 32700410799.0,
        ],
        [
            0.0,
            -1754552775.0 / 470086768.0,
            14199869525.0 / 1410260304.0,
            -10690763975.0 / 1880347072.0,
        ],
        [
            0.0,
            127303824393.0 / 49829197408.0,
            -318862633887.0 / 49829197408.0,
            701980252875.0 / 199316789632.0,
        ],
        [
            0.0,
            -282668133.0 / 205662961.0,
            2019193451.0 / 616988883.0,
            -1453857185.0 / 822651844.0,
        ],
        [
            0.0,
            40617522.0 / 29380423.0,
            -110615467.0 / 29380423.0,
            69997945.0 / 29380423.0,
        ],
    ]
)


def _p_c(y, c1, c2, c3):
    return c1 * (1.0 - y) + c2 * (1.0 + y) + c3 * (1.0 - y * y)


def _riccati_rhs(form, t, u, nu, c1, c2, c3):
    if form == FORM_PLAIN:
        y = t
        num = _p_c(y, c1, c2, c3) - 2.0 * nu * y * u - 0.5 * u * u
        return num / (nu * (1.0 - y) * (1.0 + y))
    e = math.exp(t)
    if form == FORM_LEFT:
        y = -1.0 + e
        num = _p_c(y, c1, c2, c3) - 2.0 * nu * y * u - 0.5 * u * u
        return num / (nu * (2.0 - e))
    y = 1.0 - e
    num = _p_c(y, c1, c2, c3) - 2.0 * nu * y * u - 0.5 * u * u
    return -num / (nu * (2.0 - e))


def _initial_step(rhs, t0, u0, f0, direction, t_span, rtol, atol):
    """Standard two-evaluation starting-step estimate."""
    scale = atol + rtol * abs(u0)
    d0 = abs(u0) / scale
    d1 = abs(f0) / scale
    if d0 < 1e-5 or d1 < 1e-5:
        h0 = 1e-6
    else:
        h0 = 0.01 * d0 / d1
    u1 = u0 + h0 * direction * f0
    f1 = rhs(t0 + h0 * direction, u1)
    d2 = abs(f1 - f0) / scale / h0
    if d1 <= 1e-15 and d2 <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** 0.2
    return max(min(100.0 * h0, h1, 0.1 * abs(t_span)), 1e-12)


def integrate_riccati(
    form, nu, c1, c2, c3, t0, t1, u0, rtol, atol, blowup, max_steps=100_000
):
    """Adaptive DP5(4) integration of the U_theta equation.

    Returns (status, ts, us, ks) where ks holds the 7 stage derivatives
    of each accepted step for dense output.
    """
    direction = 1.0 if t1 > t0 else -1.0
    ts = [t0]
    us = [u0]
    ks = []

    t, u = t0, u0
    f = _riccati_rhs(form, t, u, nu, c1, c2, c3)
    if abs(u0) >= blowup:
        return STATUS_BLOWUP, np.array(ts), np.array(us), np.empty((0, 7))
    h = _initial_step(
        lambda tt, uu: _riccati_rhs(form, tt, uu, nu, c1, c2, c3),
        t0, u0, f, direction, t1 - t0, rtol, atol,
    )
    hmin = 1e-14 * max(abs(t0), abs(t1), 1.0)

    k = [0.0] * 7
    for _ in range(max_steps):
        if direction * (t1 - t) <= 0.0:
            return STATUS_DONE, np.array(ts), np.array(us), np.array(ks)
        h = min(h, abs(t1 - t))
        if h < hmin:
            return STATUS_UNDERFLOW, np.array(ts), np.array(us), np.array(ks)
        hs = direction * h

        k[0] = f
        for i in range(1, 7):
            ui = u
            ai = _A[i]
            for j in range(i):
                ui += hs * ai[j] * k[j]
            k[i] = _riccati_rhs(form, t + _C[i] * hs, ui, nu, c1, c2, c3)
        u_new = ui  # stage 7 uses the 5th-order b row
        t_new = t + hs

        err = 0.0
        for i in range(7):
            err += _E[i] * k[i]
        err *= hs
        scale = atol + rtol * max(abs(u), abs(u_new))
        enorm = abs(err) / scale if scale > 0 else abs(err)

        if enorm <= 1.0 or not math.isfinite(enorm):
            if not math.isfinite(enorm) or not math.isfinite(u_new):
                # Escaping solution: shrink and retry; certified blow-up is
                # reported via the threshold branch below.
                h *= 0.2
                if h < hmin:
                    return (
                        STATUS_UNDERFLOW,
                        np.array(ts),
                        np.array(us),
                        np.array(ks),
                    )
                continue
            ts.append(t_new)
            us.append(u_new)
            ks.append(list(k))
            if abs(u_new) >= blowup:
                return STATUS_BLOWUP, np.array(ts), np.array(us), np.array(ks)
            t, u = t_new, u_new
            f = k[6]  # FSAL
            factor = 10.0 if enorm == 0.0 else min(10.0, 0.9 * enorm**-0.2)
            h *= factor
        else:
            h *= max(0.2, 0.9 * enorm**-0.2)
    return STATUS_MAXSTEPS, np.array(ts), np.array(us), np.array(ks)


def _linear_rhs(y, w, wp, nu, c1, c2, c3):
    d = 1.0 - y * y
    return wp, _p_c(y, c1, c2, c3) * w / (2.0 * nu * nu * d * d)


def integrate_linear(
    nu, c1, c2, c3, t0, t1, w0, wp0, rtol, atol, max_steps=100_000
):
    """Adaptive DP5(4) integration of the second-order linear equation.

    State is (w, w'); plain y variable only.  Returns
    (status, ts, ws[n+1, 2], ks[n, 7, 2]).
    """
    direction = 1.0 if t1 > t0 else -1.0
    ts = [t0]
    ws = [(w0, wp0)]
    ks = []

    t, w, wp = t0, w0, wp0
    f0, f1 = _linear_rhs(t, w, wp, nu, c1, c2, c3)
    scale0 = atol + rtol * max(abs(w0), abs(wp0))
    d0 = max(abs(w0), abs(wp0)) / scale0
    d1 = max(abs(f0), abs(f1)) / scale0
    h0 = 1e-6 if (d0 < 1e-5 or d1 < 1e-5) else 0.01 * d0 / d1
    g0, g1 = _linear_rhs(
        t0 + h0 * direction, w0 + h0 * direction * f0, wp0 + h0 * direction * f1,
        nu, c1, c2, c3,
    )
    d2 = max(abs(g0 - f0), abs(g1 - f1)) / scale0 / h0
    if d1 <= 1e-15 and d2 <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** 0.2
    h = max(min(100.0 * h0, h1, 0.1 * abs(t1 - t0)), 1e-12)
    hmin = 1e-14

    ka = [0.0] * 7
    kb = [0.0] * 7
    for _ in range(max_steps):
        if direction * (t1 - t) <= 0.0:
            return STATUS_DONE, np.array(ts), np.array(ws), np.array(ks)
        h = min(h, abs(t1 - t))
        if h < hmin:
            return STATUS_UNDERFLOW, np.array(ts), np.array(ws), np.array(ks)
        hs = direction * h

        ka[0], kb[0] = f0, f1
        for i in range(1, 7):
            wi, wpi = w, wp
            ai = _A[i]
            for j in range(i):
                wi += hs * ai[j] * ka[j]
                wpi += hs * ai[j] * kb[j]
            ka[i], kb[i] = _linear_rhs(
                t + _C[i] * hs, wi, wpi, nu, c1, c2, c3
            )
        w_new, wp_new = wi, wpi
        t_new = t + hs

        erra = errb = 0.0
        for i in range(7):
            erra += _E[i] * ka[i]
            errb += _E[i] * kb[i]
        sa = atol + rtol * max(abs(w), abs(w_new))
        sb = atol + rtol * max(abs(wp), abs(wp_new))
        enorm = math.sqrt(
            0.5 * ((hs * erra / sa) ** 2 + (hs * errb / sb) ** 2)
        )

        if enorm <= 1.0 and math.isfinite(enorm):
            ts.append(t_new)
            ws.append((w_new, wp_new))
            ks.append([(ka[i], kb[i]) for i in range(7)])
            t, w, wp = t_new, w_new, wp_new
            f0, f1 = ka[6], kb[6]  # FSAL
            factor = 10.0 if enorm == 0.0 else min(10.0, 0.9 * enorm**-0.2)
            h *= factor
        else:
            if not math.isfinite(enorm):
                h *= 0.2
            else:
                h *= max(0.2, 0.9 * enorm**-0.2)
    return STATUS_MAXSTEPS, np.array(ts), np.array(ws), np.array(ks)
