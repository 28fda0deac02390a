# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled Dormand-Prince 5(4) kernels; algorithmic twin of _dopri_py."""

import numpy as np

cimport numpy as cnp
from libc.math cimport exp, fabs, isfinite, pow, sqrt

STATUS_DONE = 0
STATUS_BLOWUP = 1
STATUS_UNDERFLOW = 2
STATUS_MAXSTEPS = 3

FORM_PLAIN = 0
FORM_LEFT = 1
FORM_RIGHT = 2

cnp.import_array()

cdef double[7] C_NODES
C_NODES[0] = 0.0
C_NODES[1] = 1.0 / 5.0
C_NODES[2] = 3.0 / 10.0
C_NODES[3] = 4.0 / 5.0
C_NODES[4] = 8.0 / 9.0
C_NODES[5] = 1.0
C_NODES[6] = 1.0

cdef double[7][6] A_TAB
A_TAB[1][0] = 1.0 / 5.0
A_TAB[2][0] = 3.0 / 40.0
A_TAB[2][1] = 9.0 / 40.0
A_TAB[3][0] = 44.0 / 45.0
A_TAB[3][1] = -56.0 / 15.0
A_TAB[3][2] = 32.0 / 9.0
A_TAB[4][0] = 19372.0 / 6561.0
A_TAB[4][1] = -25360.0 / 2187.0
A_TAB[4][2] = 64448.0 / 6561.0
A_TAB[4][3] = -212.0 / 729.0
A_TAB[5][0] = 9017.0 / 3168.0
A_TAB[5][1] = -355.0 / 33.0
A_TAB[5][2] = 46732.0 / 5247.0
A_TAB[5][3] = 49.0 / 176.0
A_TAB[5][4] = -5103.0 / 18656.0
A_TAB[6][0] = 35.0 / 384.0
A_TAB[6][1] = 0.0
A_TAB[6][2] = 500.0 / 1113.0
A_TAB[6][3] = 125.0 / 192.0
A_TAB[6][4] = -2187.0 / 6784.0
A_TAB[6][5] = 11.0 / 84.0

cdef double[7] E_TAB
E_TAB[0] = 71.0 / 57600.0
E_TAB[1] = 0.0
E_TAB[2] = -71.0 / 16695.0
E_TAB[3] = 71.0 / 1920.0
E_TAB[4] = -17253.0 / 339200.0
E_TAB[5] = 22.0 / 525.0
E_TAB[6] = -1.0 / 40.0


cdef inline double p_c(double y, double c1, double c2, double c3) nogil:
    return c1 * (1.0 - y) + c2 * (1.0 + y) + c3 * (1.0 - y * y)


cdef inline double riccati_rhs(
    int form, double t, double u,
    double nu, double c1, double c2, double c3,
) nogil:
    cdef double y, num, e
    if form == 0:
        y = t
        num = p_c(y, c1, c2, c3) - 2.0 * nu * y * u - 0.5 * u * u
        return num / (nu * (1.0 - y) * (1.0 + y))
    e = exp(t)
    if form == 1:
        y = -1.0 + e
        num = p_c(y, c1, c2, c3) - 2.0 * nu * y * u - 0.5 * u * u
        return num / (nu * (2.0 - e))
    y = 1.0 - e
    num = p_c(y, c1, c2, c3) - 2.0 * nu * y * u - 0.5 * u * u
    return -num / (nu * (2.0 - e))


def integrate_riccati(
    int form, double nu, double c1, double c2, double c3,
    double t0, double t1, double u0,
    double rtol, double atol, double blowup, int max_steps=100_000,
):
    cdef double direction = 1.0 if t1 > t0 else -1.0
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ts_buf = np.empty(max_steps + 1)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] us_buf = np.empty(max_steps + 1)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] ks_buf = np.empty((max_steps, 7))
    cdef double[:] ts = ts_buf
    cdef double[:] us = us_buf
    cdef double[:, :] ks = ks_buf
    cdef Py_ssize_t n = 0
    cdef double t = t0, u = u0
    cdef double f, h, hmin, hs, ui, t_new, u_new, err, scale, enorm, d1, span
    cdef double[7] k
    cdef int i, j, status = STATUS_MAXSTEPS
    cdef Py_ssize_t it

    ts[0] = t0
    us[0] = u0
    if fabs(u0) >= blowup:
        return STATUS_BLOWUP, ts_buf[:1].copy(), us_buf[:1].copy(), np.empty((0, 7))

    f = riccati_rhs(form, t, u, nu, c1, c2, c3)
    span = t1 - t0
    cdef double d0, d2, h0, h1, f_b
    scale = atol + rtol * fabs(u0)
    d0 = fabs(u0) / scale
    d1 = fabs(f) / scale
    h0 = 1e-6 if (d0 < 1e-5 or d1 < 1e-5) else 0.01 * d0 / d1
    f_b = riccati_rhs(
        form, t0 + h0 * direction, u0 + h0 * direction * f, nu, c1, c2, c3
    )
    d2 = fabs(f_b - f) / scale / h0
    if d1 <= 1e-15 and d2 <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = pow(0.01 / max(d1, d2), 0.2)
    h = max(min(min(100.0 * h0, h1), 0.1 * fabs(span)), 1e-12)
    hmin = 1e-14 * max(max(fabs(t0), fabs(t1)), 1.0)

    for it in range(max_steps):
        if direction * (t1 - t) <= 0.0:
            status = STATUS_DONE
            break
        h = min(h, fabs(t1 - t))
        if h < hmin:
            status = STATUS_UNDERFLOW
            break
        hs = direction * h

        k[0] = f
        ui = u
        for i in range(1, 7):
            ui = u
            for j in range(i):
                ui += hs * A_TAB[i][j] * k[j]
            k[i] = riccati_rhs(form, t + C_NODES[i] * hs, ui, nu, c1, c2, c3)
        u_new = ui
        t_new = t + hs

        err = 0.0
        for i in range(7):
            err += E_TAB[i] * k[i]
        err *= hs
        scale = atol + rtol * max(fabs(u), fabs(u_new))
        enorm = fabs(err) / scale if scale > 0 else fabs(err)

        if enorm <= 1.0 or not isfinite(enorm):
            if (not isfinite(enorm)) or (not isfinite(u_new)):
                h *= 0.2
                if h < hmin:
                    status = STATUS_UNDERFLOW
                    break
                continue
            n += 1
            ts[n] = t_new
            us[n] = u_new
            for i in range(7):
                ks[n - 1, i] = k[i]
            if fabs(u_new) >= blowup:
                status = STATUS_BLOWUP
                break
            t = t_new
            u = u_new
            f = k[6]
            if enorm == 0.0:
                h *= 10.0
            else:
                h *= min(10.0, 0.9 * pow(enorm, -0.2))
        else:
            h *= max(0.2, 0.9 * pow(enorm, -0.2))

    return (
        status,
        ts_buf[: n + 1].copy(),
        us_buf[: n + 1].copy(),
        ks_buf[:n].copy(),
    )


def integrate_linear(
    double nu, double c1, double c2, double c3,
    double t0, double t1, double w0, double wp0,
    double rtol, double atol, int max_steps=100_000,
):
    cdef double direction = 1.0 if t1 > t0 else -1.0
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ts_buf = np.empty(max_steps + 1)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] ws_buf = np.empty((max_steps + 1, 2))
    cdef cnp.ndarray[cnp.float64_t, ndim=3] ks_buf = np.empty((max_steps, 7, 2))
    cdef double[:] ts = ts_buf
    cdef double[:, :] ws = ws_buf
    cdef double[:, :, :] ks = ks_buf
    cdef Py_ssize_t n = 0
    cdef double t = t0, w = w0, wp = wp0
    cdef double f0, f1, h, hmin, hs, wi, wpi, t_new, w_new, wp_new
    cdef double erra, errb, sa, sb, enorm, scale0, d1, dd
    cdef double[7] ka
    cdef double[7] kb
    cdef int i, j, status = STATUS_MAXSTEPS
    cdef Py_ssize_t it

    ts[0] = t0
    ws[0, 0] = w0
    ws[0, 1] = wp0

    cdef double d0, d2, h0, h1, g0, g1, tb
    dd = 1.0 - t * t
    f0 = wp
    f1 = p_c(t, c1, c2, c3) * w / (2.0 * nu * nu * dd * dd)
    scale0 = atol + rtol * max(fabs(w0), fabs(wp0))
    d0 = max(fabs(w0), fabs(wp0)) / scale0
    d1 = max(fabs(f0), fabs(f1)) / scale0
    h0 = 1e-6 if (d0 < 1e-5 or d1 < 1e-5) else 0.01 * d0 / d1
    tb = t0 + h0 * direction
    dd = 1.0 - tb * tb
    g0 = wp0 + h0 * direction * f1
    g1 = p_c(tb, c1, c2, c3) * (w0 + h0 * direction * f0) / (
        2.0 * nu * nu * dd * dd
    )
    d2 = max(fabs(g0 - f0), fabs(g1 - f1)) / scale0 / h0
    if d1 <= 1e-15 and d2 <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = pow(0.01 / max(d1, d2), 0.2)
    h = max(min(min(100.0 * h0, h1), 0.1 * fabs(t1 - t0)), 1e-12)
    hmin = 1e-14

    for it in range(max_steps):
        if direction * (t1 - t) <= 0.0:
            status = STATUS_DONE
            break
        h = min(h, fabs(t1 - t))
        if h < hmin:
            status = STATUS_UNDERFLOW
            break
        hs = direction * h

        ka[0] = f0
        kb[0] = f1
        wi = w
        wpi = wp
        for i in range(1, 7):
            wi = w
            wpi = wp
            for j in range(i):
                wi += hs * A_TAB[i][j] * ka[j]
                wpi += hs * A_TAB[i][j] * kb[j]
            dd = 1.0 - (t + C_NODES[i] * hs) * (t + C_NODES[i] * hs)
            ka[i] = wpi
            kb[i] = p_c(t + C_NODES[i] * hs, c1, c2, c3) * wi / (
                2.0 * nu * nu * dd * dd
            )
        w_new = wi
        wp_new = wpi
        t_new = t + hs

        erra = 0.0
        errb = 0.0
        for i in range(7):
            erra += E_TAB[i] * ka[i]
            errb += E_TAB[i] * kb[i]
        sa = atol + rtol * max(fabs(w), fabs(w_new))
        sb = atol + rtol * max(fabs(wp), fabs(wp_new))
        enorm = sqrt(
            0.5 * ((hs * erra / sa) ** 2 + (hs * errb / sb) ** 2)
        )

        if enorm <= 1.0 and isfinite(enorm):
            n += 1
            ts[n] = t_new
            ws[n, 0] = w_new
            ws[n, 1] = wp_new
            for i in range(7):
                ks[n - 1, i, 0] = ka[i]
                ks[n - 1, i, 1] = kb[i]
            t = t_new
            w = w_new
            wp = wp_new
            f0 = ka[6]
            f1 = kb[6]
            if enorm == 0.0:
                h *= 10.0
            else:
                h *= min(10.0, 0.9 * pow(enorm, -0.2))
        else:
            if not isfinite(enorm):
                h *= 0.2
            else:
                h *= max(0.2, 0.9 * pow(enorm, -0.2))

    return (
        status,
        ts_buf[: n + 1].copy(),
        ws_buf[: n + 1].copy(),
        ks_buf[:n].copy(),
    )
