"""Velocity fields on the sphere generated by meromorphic functions.

A locally univalent meromorphic f induces, through the stereographic
chart z = cot(theta/2) e^{i alpha} (projection from the north pole) and

    phi = ln |f'(z)|^2 (1 + |z|^2)^2 / (1 + |f(z)|^2)^2,

a solution of the curvature equation -Lap phi + 2 = 2 e^phi on the
sphere, and from it a (-1)-homogeneous velocity

    u = grad_{S^2} phi - (Lap_{S^2} phi) e_r.

Three families of f are supported: a z, a z^alpha, a e^{b z}.
"""

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SingularPoint


class MeromorphicKind(enum.Enum):
    LINEAR = "linear"  # f = a z
    POWER = "power"  # f = a z^alpha
    EXPONENTIAL = "exponential"  # f = a e^{b z}


@dataclass(frozen=True)
class MeromorphicSpec:
    kind: MeromorphicKind
    a: complex
    alpha: float = 1.0
    b: complex = 1.0

    def __post_init__(self):
        if self.a == 0:
            raise DomainError("coefficient a must be nonzero")
        if self.kind == MeromorphicKind.POWER and self.alpha == 0.0:
            raise DomainError("power exponent must be nonzero")
        if self.kind == MeromorphicKind.EXPONENTIAL and self.b == 0:
            raise DomainError("exponential rate b must be nonzero")

    def f(self, z):
        if self.kind == MeromorphicKind.LINEAR:
            return self.a * z
        if self.kind == MeromorphicKind.POWER:
            return self.a * z**self.alpha
        return self.a * np.exp(self.b * z)

    def f1(self, z):
        """First derivative."""
        if self.kind == MeromorphicKind.LINEAR:
            return self.a * np.ones_like(np.asarray(z))
        if self.kind == MeromorphicKind.POWER:
            return self.a * self.alpha * z ** (self.alpha - 1.0)
        return self.a * self.b * np.exp(self.b * z)

    def f2(self, z):
        """Second derivative."""
        if self.kind == MeromorphicKind.LINEAR:
            return np.zeros_like(np.asarray(z))
        if self.kind == MeromorphicKind.POWER:
            al = self.alpha
            return self.a * al * (al - 1.0) * z ** (al - 2.0)
        return self.a * self.b * self.b * np.exp(self.b * z)


@dataclass(frozen=True)
class SpherePoint:
    """Chart point: polar angle theta in (0, pi), meridian angle
    phi_angle in [0, 2 pi)."""

    theta: float
    phi_angle: float = 0.0

    def __post_init__(self):
        if not 0.0 < self.theta < math.pi:
            raise DomainError(f"theta={self.theta} outside (0, pi)")
        if not 0.0 <= self.phi_angle < 2.0 * math.pi:
            raise DomainError(f"phi={self.phi_angle} outside [0, 2 pi)")

    @property
    def z(self):
        return (
            1.0 / math.tan(0.5 * self.theta)
        ) * cmath.exp(1j * self.phi_angle)


_HUGE = 1e150
_TINY = 1e-150


def _check_regular(spec: MeromorphicSpec, z):
    # overflow here is expected and reported as a singular point below
    with np.errstate(over="ignore", invalid="ignore"):
        fv = np.asarray(spec.f(z))
        fp = np.asarray(spec.f1(z))
    bad = (
        ~np.isfinite(fv.real)
        | ~np.isfinite(fp.real)
        | (np.abs(fv) > _HUGE)
        | (np.abs(fp) > _HUGE)
        | (np.abs(fp) < _TINY)
    )
    if np.any(bad):
        raise SingularPoint("f or f' is singular or critical at the point")
    return fv, fp


def _phi_of_z(spec: MeromorphicSpec, z):
    fv, fp = _check_regular(spec, z)
    z = np.asarray(z)
    return np.log(
        np.abs(fp) ** 2
        * (1.0 + np.abs(z) ** 2) ** 2
        / (1.0 + np.abs(fv) ** 2) ** 2
    )


def _phi_z_of_z(spec: MeromorphicSpec, z):
    """Wirtinger derivative d phi / dz (phi is real; d/dzbar is the
    conjugate)."""
    fv, fp = _check_regular(spec, z)
    z = np.asarray(z)
    fpp = np.asarray(spec.f2(z))
    return (
        fpp / fp
        + 2.0 * np.conj(z) / (1.0 + np.abs(z) ** 2)
        - 2.0 * np.conj(fv) * fp / (1.0 + np.abs(fv) ** 2)
    )


def liouville_phi(spec: MeromorphicSpec, pt: SpherePoint) -> float:
    """The conformal factor phi at a chart point."""
    return float(_phi_of_z(spec, pt.z))


def liouville_velocity(spec: MeromorphicSpec, pt: SpherePoint):
    """Velocity components (u_r, u_theta, u_phi) at a chart point.

    The tangential part is the surface gradient of phi; the radial part
    is -Lap_{S^2} phi = 2 e^phi - 2, using the curvature equation the
    conformal factor satisfies identically.
    """
    z = pt.z
    phi = float(_phi_of_z(spec, z))
    phi_z = complex(_phi_z_of_z(spec, z))
    # chart derivatives of z(theta, alpha)
    cot_half = 1.0 / math.tan(0.5 * pt.theta)
    dz_dtheta = -0.5 * (1.0 + cot_half * cot_half) * cmath.exp(
        1j * pt.phi_angle
    )
    dz_dalpha = 1j * z
    u_theta = 2.0 * (phi_z * dz_dtheta).real
    u_phi = 2.0 * (phi_z * dz_dalpha).real / math.sin(pt.theta)
    u_r = 2.0 * math.exp(phi) - 2.0
    return np.array([u_r, u_theta, u_phi])


def _chart_grid(n, theta_range=(0.35, math.pi - 0.35)):
    """n x n grid of chart points away from both poles."""
    thetas = np.linspace(theta_range[0], theta_range[1], n)
    alphas = np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)
    tt, aa = np.meshgrid(thetas, alphas, indexing="ij")
    return (1.0 / np.tan(0.5 * tt)) * np.exp(1j * aa)


def liouville_residual(
    spec: MeromorphicSpec, n: int = 64, h: float = None, method: str = "gradient"
) -> float:
    """Max residual of -Lap_{S^2} phi + 2 - 2 e^phi over a chart grid.

    method='gradient' differentiates the analytic Wirtinger gradient
    once by central differences (accuracy ~ h^2); method='direct' uses
    a 5-point chart Laplacian of phi itself, a fully independent check
    with looser accuracy (larger h balances roundoff in the second
    difference against truncation).
    """
    if h is None:
        h = 1e-5 if method == "gradient" else 1e-3
    z = _chart_grid(n)
    phi = _phi_of_z(spec, z)
    if method == "gradient":
        # Lap_z phi = 4 d/dzbar (dphi/dz)
        gx = (_phi_z_of_z(spec, z + h) - _phi_z_of_z(spec, z - h)) / (2.0 * h)
        gy = (_phi_z_of_z(spec, z + 1j * h) - _phi_z_of_z(spec, z - 1j * h)) / (
            2.0 * h
        )
        lap_chart = (4.0 * 0.5 * (gx + 1j * gy)).real
    elif method == "direct":
        lap_chart = (
            _phi_of_z(spec, z + h)
            + _phi_of_z(spec, z - h)
            + _phi_of_z(spec, z + 1j * h)
            + _phi_of_z(spec, z - 1j * h)
            - 4.0 * phi
        ) / (h * h)
    else:
        raise ValueError(f"unknown method {method!r}")
    lap_sphere = 0.25 * (1.0 + np.abs(z) ** 2) ** 2 * lap_chart
    return float(np.max(np.abs(-lap_sphere + 2.0 - 2.0 * np.exp(phi))))


def meridian_variance(spec: MeromorphicSpec, theta: float = 1.0, n: int = 16):
    """Spread of the velocity over n meridian samples at fixed theta.

    Vanishes for axisymmetric fields (linear and power kinds); an
    order-one witness of non-axisymmetry for exponential kinds.
    """
    alphas = np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)
    vals = np.array(
        [
            liouville_velocity(spec, SpherePoint(theta=theta, phi_angle=a))
            for a in alphas
        ]
    )
    return float(np.max(vals.max(axis=0) - vals.min(axis=0)))
