"""Continuous extension of the DP5(4) kernels.

Each accepted step keeps its seven stage derivatives; the standard
quartic interpolant reconstructs the solution anywhere inside the step
to the same order as the step values themselves.
"""

import numpy as np

from ._dopri_py import DENSE_P


class DenseSolution:
    """Piecewise-quartic interpolant built from kernel output.

    Accepts the (ts, ys, ks) arrays returned by integrate_riccati
    (scalar state, ks shape (n, 7)) or integrate_linear (state (w, w'),
    ks shape (n, 7, 2)).  Arrays are kept in integration order, which
    may be descending in t.  Callable on scalars or arrays of t.
    """

    def __init__(self, ts, ys, ks):
        self.ts = np.asarray(ts, dtype=float)
        self.ys = np.asarray(ys, dtype=float)
        self.ks = np.asarray(ks, dtype=float)
        if self.ts.size < 2:
            raise ValueError("need at least one accepted step")
        self.ascending = self.ts[-1] >= self.ts[0]
        self.t_min = min(self.ts[0], self.ts[-1])
        self.t_max = max(self.ts[0], self.ts[-1])
        # coeffs[i] are the quartic coefficients of step i (anchored at
        # its start, scaled by the signed step), shape (n, 4) for scalar
        # state or (n, 4, m) for vector state.
        hs = np.diff(self.ts)
        if self.ks.ndim == 2:
            coeffs = np.einsum("nk,kp->np", self.ks, DENSE_P)
            coeffs *= hs[:, None]
        else:
            coeffs = np.einsum("nkm,kp->npm", self.ks, DENSE_P)
            coeffs *= hs[:, None, None]
        self._coeffs = coeffs
        self._hs = hs

    def _interval(self, t):
        if self.ascending:
            idx = np.searchsorted(self.ts, t, side="right") - 1
        else:
            idx = np.searchsorted(-self.ts, -np.asarray(t), side="right") - 1
        return np.clip(idx, 0, len(self.ts) - 2)

    def __call__(self, t):
        t_arr = np.asarray(t, dtype=float)
        scalar = t_arr.ndim == 0
        tf = np.atleast_1d(t_arr)
        idx = self._interval(tf)
        x = (tf - self.ts[idx]) / self._hs[idx]
        vals = self.ys[idx].astype(float)
        xp = x.copy()
        if self._coeffs.ndim == 2:
            for p in range(4):
                vals = vals + self._coeffs[idx, p] * xp
                xp = xp * x
        else:
            for p in range(4):
                vals = vals + self._coeffs[idx, p, :] * xp[:, None]
                xp = xp * x
        return vals[0] if scalar else vals

    def component(self, i):
        """Scalar callable extracting component i of a vector solution."""
        return lambda t: np.asarray(self(t))[..., i]

    def crossing(self, level, component=None, tol=1e-13):
        """First t (in integration order) where the solution crosses level.

        Scans accepted steps for a sign change of (value - level), then
        bisects the dense output.  Returns None if no crossing.
        """
        if component is None:
            node_vals = self.ys
            fn = self
        else:
            node_vals = self.ys[:, component]
            fn = self.component(component)
        g = node_vals - level
        for i in range(len(g) - 1):
            if g[i] == 0.0:
                return self.ts[i]
            if g[i] * g[i + 1] <= 0.0:
                return _bisect(
                    lambda t: fn(t) - level, self.ts[i], self.ts[i + 1], tol
                )
        if g[-1] == 0.0:
            return self.ts[-1]
        return None


def _bisect(f, a, b, tol):
    fa = f(a)
    if fa == 0.0:
        return a
    fb = f(b)
    if fb == 0.0:
        return b
    if fa * fb > 0.0:
        # interpolant disagrees with the nodes; fall back to the node
        return a if abs(fa) < abs(fb) else b
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
