"""Figure-grade artifact emission: stream functions, CSV/JSON/SVG.

Streamlines of the axisymmetric meridional flow are level sets of
psi(r, theta) = -r U_theta(cos theta); they are extracted as contour
polylines rather than traced as particle paths, so they are exact level
sets with no integration drift near the axis.
"""

import enum
import json
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from contourpy import contour_generator

from .closedform import Profile
from .errors import GridTouchesAxis, SpecMismatch

_AXIS_MARGIN = 1e-3
_FMT = "%.12g"


class RenderKind(enum.Enum):
    PROFILE_FAMILY = "profile-family"
    STREAMLINES = "streamlines"
    SWEEP = "sweep"
    LIOUVILLE_FIELD = "liouville-field"


class RenderFormat(enum.Enum):
    CSV = "csv"
    JSON = "json"
    SVG = "svg"


@dataclass(frozen=True)
class RenderSpec:
    kind: RenderKind
    target: str
    format: RenderFormat
    view: dict = field(default_factory=dict)

    def __post_init__(self):
        n = self.view.get("samples", 256)
        if n < 16:
            raise SpecMismatch("sample counts must be >= 16")
        levels = self.view.get("levels")
        if levels is not None:
            lv = list(levels)
            if not all(math.isfinite(x) for x in lv) or lv != sorted(lv):
                raise SpecMismatch("contour levels must be finite and sorted")


@dataclass(frozen=True)
class StreamFunctionField:
    x1: np.ndarray  # distance from the axis (> margin)
    x3: np.ndarray  # height along the axis
    psi: np.ndarray  # psi[i, j] at (x1[j], x3[i])
    profile: Profile


def stream_function(prof: Profile, x1, x3) -> StreamFunctionField:
    """psi = -r U_theta(cos theta) on a meridional grid.

    x1 are cylindrical radii, x3 heights; every grid point must keep
    sin theta >= 1e-3 and r >= 1e-3.
    """
    x1 = np.asarray(x1, dtype=float)
    x3 = np.asarray(x3, dtype=float)
    xx, zz = np.meshgrid(x1, x3)
    r = np.hypot(xx, zz)
    if np.min(r) < _AXIS_MARGIN or np.min(np.abs(xx) / np.maximum(r, 1e-300)) < _AXIS_MARGIN:
        raise GridTouchesAxis(
            "grid must keep sin theta and r at least 1e-3 from the axis"
        )
    psi = -r * prof.u(zz / r)
    return StreamFunctionField(x1=x1, x3=x3, psi=psi, profile=prof)


def meridional_velocity(prof: Profile, x1, x3):
    """(u_x1, u_x3) of the (-1)-homogeneous field at meridional points."""
    x1 = np.asarray(x1, dtype=float)
    x3 = np.asarray(x3, dtype=float)
    r = np.hypot(x1, x3)
    y = x3 / r  # cos theta
    s = x1 / r  # sin theta
    u_th = prof.u(y) / s
    # u_r from the profile derivative by central differences
    h = 1e-6
    u_r = (prof.u(np.clip(y + h, -1 + 1e-9, 1 - 1e-9))
           - prof.u(np.clip(y - h, -1 + 1e-9, 1 - 1e-9))) / (2.0 * h)
    # e_r = (s, y), e_theta = (y, -s) in the (x1, x3) plane; overall 1/r
    ux = (u_r * s + u_th * y) / r
    uz = (u_r * y - u_th * s) / r
    return ux, uz


def psi_contours(fld: StreamFunctionField, levels=None, n_levels: int = 16):
    """Contour polylines of psi; default levels at equal psi-quantiles."""
    if levels is None:
        qs = np.linspace(0.0, 1.0, n_levels + 2)[1:-1]
        levels = np.unique(np.quantile(fld.psi, qs))
    gen = contour_generator(x=fld.x1, y=fld.x3, z=fld.psi)
    scale = max(
        float(fld.x1.max() - fld.x1.min()), float(fld.x3.max() - fld.x3.min())
    )
    out = []
    for lv in levels:
        for line in gen.lines(float(lv)):
            line = np.asarray(line)
            if len(line) < 2:
                continue
            # drop duplicate consecutive vertices (degenerate segments)
            step = np.hypot(*np.diff(line, axis=0).T)
            keep = np.concatenate(([True], step > 1e-9 * scale))
            line = line[keep]
            if len(line) >= 2:
                out.append((float(lv), line))
    return out


def psi_gradient(prof: Profile, x1, x3):
    """Meridional gradient of psi = -r U(cos theta).

    Chain rule on (r, y): psi_x1 = s (y U' - U), psi_x3 = -(s^2 U' + y U)
    with s = sin theta; U' by central differences on the profile.
    """
    x1 = np.asarray(x1, dtype=float)
    x3 = np.asarray(x3, dtype=float)
    r = np.hypot(x1, x3)
    y = x3 / r
    s = x1 / r
    u = prof.u(y)
    h = 1e-6
    up = (prof.u(np.clip(y + h, -1 + 1e-9, 1 - 1e-9))
          - prof.u(np.clip(y - h, -1 + 1e-9, 1 - 1e-9))) / (2.0 * h)
    return s * (y * up - u), -(s * s * up + y * u)


def tangency_defect(prof: Profile, polys) -> float:
    """Max |u . n| / |u| over streamline polyline points, with n the
    unit normal from the psi gradient.

    Points within the axis cone, near the origin, or at stagnation
    points (|u| or |grad psi| vanishing) are excluded.
    """
    worst = 0.0
    for cls, pts in polys:
        if cls != "streamline":
            continue
        pts = np.asarray(pts)
        x1, x3 = np.abs(pts[:, 0]), pts[:, 1]
        r = np.hypot(x1, x3)
        mask = (x1 / np.maximum(r, 1e-300) > 2.0 * _AXIS_MARGIN) & (
            r > 2.0 * _AXIS_MARGIN
        )
        if not mask.any():
            continue
        x1, x3 = x1[mask], x3[mask]
        ux, uz = meridional_velocity(prof, x1, x3)
        gx, gz = psi_gradient(prof, x1, x3)
        gn = np.hypot(gx, gz)
        un = np.hypot(ux, uz)
        ok = (gn > 1e-9) & (un > 1e-9)
        if not ok.any():
            continue
        defect = np.abs(ux * gx + uz * gz)[ok] / (un * gn)[ok]
        worst = max(worst, float(np.max(defect)))
    return worst


# ---------------------------------------------------------------- writers


def _fmt(x):
    return _FMT % float(x)


def write_csv(path, header, columns):
    """Comma-separated, LF endings, 12 significant digits."""
    cols = [np.asarray(c) for c in columns]
    rows = len(cols[0])
    with open(path, "w", newline="\n") as f:
        f.write(",".join(header) + "\n")
        for i in range(rows):
            f.write(",".join(_fmt(c[i]) for c in cols) + "\n")


def read_csv(path):
    with open(path) as f:
        header = f.readline().strip().split(",")
        data = np.array(
            [[float(x) for x in line.strip().split(",")] for line in f]
        )
    return header, data


def write_json(path, payload):
    """UTF-8, lexicographic key order, stable float formatting."""

    def enc(o):
        if isinstance(o, dict):
            return {k: enc(o[k]) for k in o}
        if isinstance(o, (list, tuple, np.ndarray)):
            return [enc(v) for v in o]
        if isinstance(o, (float, np.floating)):
            return float(_fmt(o))
        if isinstance(o, (int, np.integer)):
            return int(o)
        return o

    with open(path, "w", encoding="utf-8") as f:
        json.dump(enc(payload), f, sort_keys=True, indent=1)
        f.write("\n")


def _svg_header(width=800, height=800):
    return (
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">\n'
    )


def write_svg(path, polylines, box, width=800, height=800):
    """Polyline-only SVG of meridional curves.

    polylines: iterable of (class_name, ndarray[n, 2]) in meridional
    coordinates; box = (x_min, x_max, z_min, z_max) maps to the full
    canvas (z up).
    """
    x0, x1, z0, z1 = box
    sx = width / (x1 - x0)
    sz = height / (z1 - z0)

    def to_px(pts):
        px = (pts[:, 0] - x0) * sx
        pz = (z1 - pts[:, 1]) * sz
        return px, pz

    with open(path, "w", newline="\n") as f:
        f.write(_svg_header(width, height))
        for cls, pts in polylines:
            px, pz = to_px(np.asarray(pts))
            coords = " ".join(
                f"{_fmt(a)},{_fmt(b)}" for a, b in zip(px, pz)
            )
            f.write(f'<polyline class="{cls}" fill="none" points="{coords}"/>\n')
        f.write("</svg>\n")


def streamline_polylines(
    prof: Profile,
    box=(-2.0, 2.0, -2.0, 2.0),
    samples: int = 256,
    n_levels: int = 16,
    levels=None,
):
    """Streamline, axis, and sphere-trace polylines for one profile.

    The axis strip |x1| < 1e-3 is excluded; both meridional half planes
    are rendered by mirroring the right-half contours.
    """
    x0, x1b, z0, z1 = box
    x_max = max(abs(x0), abs(x1b))
    r_max = math.hypot(x_max, max(abs(z0), abs(z1)))
    x_right = np.linspace(1.001 * _AXIS_MARGIN * r_max, x_max, samples)
    x3 = np.linspace(z0, z1, samples)
    fld = stream_function(prof, x_right, x3)
    polys = []
    for _, line in psi_contours(fld, levels=levels, n_levels=n_levels):
        polys.append(("streamline", line))
        polys.append(("streamline", line * np.array([-1.0, 1.0])))
    polys.append(
        ("axis", np.array([[0.0, z0], [0.0, z1]]))
    )
    th = np.linspace(0.0, 2.0 * math.pi, 181)
    polys.append(
        ("sphere-trace", np.column_stack([np.cos(th), np.sin(th)]))
    )
    return polys


def render(spec: RenderSpec, payload):
    """Dispatch a RenderSpec onto a payload and write the target file."""
    kind, fmt = spec.kind, spec.format
    if kind == RenderKind.PROFILE_FAMILY:
        profiles = payload
        if not isinstance(profiles, (list, tuple)) or not all(
            isinstance(p, Profile) for p in profiles
        ):
            raise SpecMismatch("profile-family payload must be a profile list")
        y = np.linspace(
            spec.view.get("y_min", -0.999),
            spec.view.get("y_max", 0.999),
            spec.view.get("samples", 256),
        )
        cols = [y] + [p.u(y) for p in profiles]
        header = ["y"] + [f"U_{i + 1}" for i in range(len(profiles))]
        if fmt == RenderFormat.CSV:
            write_csv(spec.target, header, cols)
        elif fmt == RenderFormat.JSON:
            write_json(
                spec.target,
                {h: list(c) for h, c in zip(header, cols)},
            )
        else:
            raise SpecMismatch("profile-family renders to CSV or JSON")
    elif kind == RenderKind.STREAMLINES:
        if not isinstance(payload, Profile):
            raise SpecMismatch("streamlines payload must be a profile")
        box = spec.view.get("box", (-2.0, 2.0, -2.0, 2.0))
        polys = streamline_polylines(
            payload,
            box=box,
            samples=spec.view.get("samples", 256),
            n_levels=spec.view.get("n_levels", 16),
            levels=spec.view.get("levels"),
        )
        if fmt == RenderFormat.SVG:
            write_svg(spec.target, polys, box)
        elif fmt == RenderFormat.CSV:
            header = ["curve", "x1", "x3"]
            curve, xs, zs = [], [], []
            idx = 0
            for cls, pts in polys:
                if cls != "streamline":
                    continue
                for a, b in pts:
                    curve.append(idx)
                    xs.append(a)
                    zs.append(b)
                idx += 1
            write_csv(spec.target, header, [curve, xs, zs])
        else:
            raise SpecMismatch("streamlines render to SVG or CSV")
    elif kind == RenderKind.SWEEP:
        if not hasattr(payload, "nu_list"):
            raise SpecMismatch("sweep payload must be a SweepReport")
        if fmt != RenderFormat.JSON:
            raise SpecMismatch("sweep reports render to JSON")
        d = {
            "epsilon": payload.epsilon,
            "errors_minus": list(payload.errors_minus),
            "errors_plus": list(payload.errors_plus),
            "fit_residual": payload.fit_residual,
            "nu_list": list(payload.nu_list),
            "rate_constant": payload.rate_constant,
            "rate_exponent": payload.rate_exponent,
        }
        if payload.layer_centers is not None:
            d["layer_centers"] = list(payload.layer_centers)
            d["layer_widths"] = list(payload.layer_widths)
        write_json(spec.target, d)
    elif kind == RenderKind.LIOUVILLE_FIELD:
        # payload: dict of equal-length sample columns
        if not isinstance(payload, dict):
            raise SpecMismatch("liouville-field payload must be a dict")
        if fmt == RenderFormat.CSV:
            header = sorted(payload)
            write_csv(spec.target, header, [payload[k] for k in header])
        elif fmt == RenderFormat.JSON:
            write_json(spec.target, payload)
        else:
            raise SpecMismatch("liouville fields render to CSV or JSON")
    else:
        raise SpecMismatch(f"unknown render kind {kind}")
