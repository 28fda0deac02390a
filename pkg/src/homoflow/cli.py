"""Command-line front end.

Subcommands: classify, solve, family, critical, limit, liouville,
streamlines, figures.  Every parameter can also come from a config file
of flat `key = value` lines (# comments allowed); explicit flags win.

Exit codes: 0 success, 1 internal error, 2 domain or usage error.
"""

import argparse
import math
import os
import sys

import numpy as np

from .render import (
    RenderFormat,
    RenderKind,
    RenderSpec,
    render,
    streamline_polylines,
    tangency_defect,
    write_csv,
    write_json,
)
from .classify import (
    extremal_profiles,
    foliation,
    gamma_bounds,
    singularity_type,
)
from .closedform import critical_profile, elliptic_profile, landau_profile
from .errors import DomainError, HomoflowError
from .liouville import (
    MeromorphicKind,
    MeromorphicSpec,
    SpherePoint,
    liouville_residual,
    liouville_velocity,
    meridian_variance,
)
from .params import FlowParams, bar_c3, classify_case, tau_values
from .riccati import SolveRequest, boundary_limit, integrate_ivp
from .viscosity import (
    extremal_limit_sweep,
    interior_limit_sweep,
    select_interior_profile,
)

_EXAMPLE_C = (25.0 / 9.0, 1.0 / 9.0, -2.0)  # two-branch inviscid limit


def _parse_c(text):
    parts = [float(x) for x in text.split(",")]
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected c as c1,c2,c3")
    return tuple(parts)


def _parse_nu_list(text):
    vals = [float(x) for x in text.split(",")]
    if not vals or any(v <= 0 for v in vals):
        raise argparse.ArgumentTypeError("nu-list must be positive floats")
    return vals


def _parse_complex(text):
    return complex(text.replace(" ", ""))


def _load_config(path):
    """Flat `key = value` lines; '#' starts a comment."""
    flags = []
    with open(path) as f:
        for raw in f:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise DomainError(f"config line without '=': {raw.rstrip()}")
            key, value = (s.strip() for s in line.split("=", 1))
            flags.extend([f"--{key.replace('_', '-')}", value])
    return flags


def _emit_profile(prof, path, fmt, n=601):
    y0, y1 = prof.domain
    y = np.linspace(max(y0, -1.0) + 1e-3, min(y1, 1.0) - 1e-3, n)
    u = prof.u(y)
    if fmt == "csv":
        write_csv(path, ["y", "U"], [y, u])
    else:
        write_json(path, {"U": list(u), "y": list(y)})


def _print(args, *items):
    print(*items)


# ------------------------------------------------------------ subcommands


def _cmd_classify(args):
    p = FlowParams(args.nu, *args.c)
    case = classify_case(p)
    print(f"case: {case.name}")
    if case.name == "CASE6":
        raise DomainError(
            f"c={args.c} admits no global solution at nu={args.nu}"
        )
    taus = tau_values(p)
    print(
        "tau-set: (%.6g, %.6g, %.6g, %.6g)"
        % (taus.tau1, taus.tau2, taus.tau1p, taus.tau2p)
    )
    print("critical c3: %.6g" % bar_c3(p.c1, p.c2, p.nu))
    iv = gamma_bounds(p, tol=args.tol)
    print("gamma interval: [%.6g, %.6g]" % (iv.gamma_minus, iv.gamma_plus))
    upper, lower = extremal_profiles(p)
    bu = (
        boundary_limit(upper, "minus1").value,
        boundary_limit(upper, "plus1").value,
    )
    bl = (
        boundary_limit(lower, "minus1").value,
        boundary_limit(lower, "plus1").value,
    )
    print("upper boundary values: (%.6g, %.6g)" % bu)
    print("lower boundary values: (%.6g, %.6g)" % bl)
    for name, prof in (("upper", upper), ("lower", lower)):
        for end in ("minus1", "plus1"):
            st = singularity_type(prof, end, p.nu)
            print(f"{name} {end}: {st.kind.name}")
    return 0


def _cmd_solve(args):
    p = FlowParams(args.nu, *args.c)
    prof, dc = integrate_ivp(
        SolveRequest(params=p, ybar=args.ybar, gamma=args.gamma)
    )
    print(f"class: {dc.label.name}")
    if dc.blowup_points:
        print(
            "blow-up ordinates:",
            " ".join("%.9g" % b for b in dc.blowup_points),
        )
    print("domain: (%.9g, %.9g)" % prof.domain)
    if args.out:
        _emit_profile(prof, args.out, args.format)
        print(f"wrote {args.out}")
    return 0


def _cmd_family(args):
    p = FlowParams(args.nu, *args.c)
    leaves = foliation(p, args.n)
    gammas = [float(lv.u(0.0)) for lv in leaves]
    print("gammas:", " ".join("%.6g" % g for g in gammas))
    if args.out:
        spec = RenderSpec(
            kind=RenderKind.PROFILE_FAMILY,
            target=args.out,
            format=RenderFormat(args.format),
            view={"samples": args.samples},
        )
        render(spec, leaves)
        print(f"wrote {args.out}")
    return 0


def _cmd_critical(args):
    prof = critical_profile(args.nu, args.c1, args.c2)
    print("critical c3: %.9g" % bar_c3(args.c1, args.c2, args.nu))
    print("U*(0) = %.9g" % float(prof.u(0.0)))
    if args.out:
        _emit_profile(prof, args.out, args.format)
        print(f"wrote {args.out}")
    return 0


def _cmd_limit(args):
    nus = args.nu_list
    if args.theta0 is None:
        rep = extremal_limit_sweep(args.c, nus, epsilon=args.epsilon)
    else:
        rep = interior_limit_sweep(
            args.c, args.theta0, nus, epsilon=args.epsilon
        )
    print("nu:", " ".join("%.6g" % v for v in rep.nu_list))
    print("errors vs V+:", " ".join("%.6g" % e for e in rep.errors_plus))
    print("errors vs V-:", " ".join("%.6g" % e for e in rep.errors_minus))
    print(
        "rate: %.4g (constant %.4g, fit residual %.2g)"
        % (rep.rate_exponent, rep.rate_constant, rep.fit_residual)
    )
    if rep.layer_centers is not None:
        print("layer centers:", " ".join("%.6g" % x for x in rep.layer_centers))
        print("layer widths:", " ".join("%.6g" % w for w in rep.layer_widths))
    if args.out:
        spec = RenderSpec(
            kind=RenderKind.SWEEP,
            target=args.out,
            format=RenderFormat.JSON,
        )
        render(spec, rep)
        print(f"wrote {args.out}")
    return 0


def _liouville_spec(args):
    kind = MeromorphicKind(args.kind)
    return MeromorphicSpec(
        kind=kind, a=args.a, alpha=args.alpha, b=args.b
    )


def _cmd_liouville(args):
    spec = _liouville_spec(args)
    res = liouville_residual(spec, n=args.samples)
    var = meridian_variance(spec)
    print("equation residual: %.3g" % res)
    print("meridian variance: %.3g" % var)
    if args.out:
        thetas = np.linspace(0.35, math.pi - 0.35, args.samples)
        alphas = np.linspace(0.0, 2.0 * math.pi, args.samples, endpoint=False)
        rows = {"alpha": [], "theta": [], "u_phi": [], "u_r": [], "u_theta": []}
        for th in thetas:
            for al in alphas:
                u = liouville_velocity(
                    spec, SpherePoint(float(th), float(al))
                )
                rows["theta"].append(float(th))
                rows["alpha"].append(float(al))
                rows["u_r"].append(float(u[0]))
                rows["u_theta"].append(float(u[1]))
                rows["u_phi"].append(float(u[2]))
        out_spec = RenderSpec(
            kind=RenderKind.LIOUVILLE_FIELD,
            target=args.out,
            format=RenderFormat(args.format),
        )
        render(out_spec, rows)
        print(f"wrote {args.out}")
    return 0


def _streamline_profile(args):
    if args.landau is not None:
        return landau_profile(args.nu, args.landau)
    if args.elliptic_alpha is not None:
        return elliptic_profile(args.elliptic_alpha)
    if args.c is None:
        raise DomainError("need --landau, --elliptic-alpha, or --c")
    p = FlowParams(args.nu, *args.c)
    if args.theta0 is not None:
        return select_interior_profile(p, math.cos(args.theta0))
    gamma = args.gamma if args.gamma is not None else 0.0
    prof, _ = integrate_ivp(SolveRequest(params=p, ybar=0.0, gamma=gamma))
    return prof


def _cmd_streamlines(args):
    prof = _streamline_profile(args)
    spec = RenderSpec(
        kind=RenderKind.STREAMLINES,
        target=args.out,
        format=RenderFormat(args.format),
        view={"samples": args.samples, "n_levels": args.levels},
    )
    render(spec, prof)
    polys = streamline_polylines(
        prof, samples=args.samples, n_levels=args.levels
    )
    print("tangency defect: %.3g" % tangency_defect(prof, polys))
    print(f"wrote {args.out}")
    return 0


def _cmd_figures(args):
    """Reproduce the data artifacts behind the displayed figures."""
    os.makedirs(args.outdir, exist_ok=True)
    out = lambda name: os.path.join(args.outdir, name)
    ns = args.samples

    # smooth one-point-singularity flow
    landau = landau_profile(1.0, 1.0)
    render(
        RenderSpec(
            RenderKind.STREAMLINES,
            out("fig_landau_streamlines.svg"),
            RenderFormat.SVG,
            view={"samples": ns},
        ),
        landau,
    )

    # global-solution family at c = (0, 0, 0.5)
    p = FlowParams(1.0, 0.0, 0.0, 0.5)
    leaves = foliation(p, 7)
    render(
        RenderSpec(
            RenderKind.PROFILE_FAMILY,
            out("fig_family.csv"),
            RenderFormat.CSV,
        ),
        leaves,
    )
    render(
        RenderSpec(
            RenderKind.STREAMLINES,
            out("fig_extremal_streamlines.svg"),
            RenderFormat.SVG,
            view={"samples": ns},
        ),
        leaves[-1],
    )

    # critical-surface profile
    crit = critical_profile(1.0, 0.0, 0.0)
    _emit_profile(crit, out("fig_critical.csv"), "csv")

    # vanishing-viscosity sweep and near-jump streamlines
    rep = interior_limit_sweep(
        _EXAMPLE_C, math.pi / 2.0, [1.0 / 8, 1.0 / 16, 1.0 / 32, 1.0 / 64]
    )
    render(
        RenderSpec(
            RenderKind.SWEEP, out("fig_sweep.json"), RenderFormat.JSON
        ),
        rep,
    )
    for nu in (1.0, 1.0 / 8, 1.0 / 20, 1.0 / 50):
        p = FlowParams(nu, *_EXAMPLE_C)
        prof = select_interior_profile(p, 0.0)
        render(
            RenderSpec(
                RenderKind.STREAMLINES,
                out("fig_jump_streamlines_nu_%g.svg" % (1.0 / nu)),
                RenderFormat.SVG,
                view={"samples": ns},
            ),
            prof,
        )

    # non-axisymmetric conformal-factor field
    spec = MeromorphicSpec(MeromorphicKind.EXPONENTIAL, 1.0, b=0.3)
    thetas = np.linspace(0.35, math.pi - 0.35, 33)
    alphas = np.linspace(0.0, 2.0 * math.pi, 32, endpoint=False)
    rows = {"alpha": [], "theta": [], "u_phi": [], "u_r": [], "u_theta": []}
    for th in thetas:
        for al in alphas:
            u = liouville_velocity(spec, SpherePoint(float(th), float(al)))
            rows["theta"].append(float(th))
            rows["alpha"].append(float(al))
            rows["u_r"].append(float(u[0]))
            rows["u_theta"].append(float(u[1]))
            rows["u_phi"].append(float(u[2]))
    render(
        RenderSpec(
            RenderKind.LIOUVILLE_FIELD,
            out("fig_liouville.csv"),
            RenderFormat.CSV,
        ),
        rows,
    )
    print(f"wrote figure data to {args.outdir}")
    return 0


# ------------------------------------------------------------------ parser


def build_parser():
    top = argparse.ArgumentParser(
        prog="homoflow",
        description="(-1)-homogeneous axisymmetric flow toolbox",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=fn)
        sp.add_argument("--config", help="key = value parameter file")
        return sp

    sp = add("classify", _cmd_classify, "case, gamma interval, types")
    sp.add_argument("--nu", type=float, required=True)
    sp.add_argument("--c", type=_parse_c, required=True)
    sp.add_argument("--tol", type=float, default=1e-6)

    sp = add("solve", _cmd_solve, "one initial value problem")
    sp.add_argument("--nu", type=float, required=True)
    sp.add_argument("--c", type=_parse_c, required=True)
    sp.add_argument("--gamma", type=float, required=True)
    sp.add_argument("--ybar", type=float, default=0.0)
    sp.add_argument("--out")
    sp.add_argument("--format", choices=["csv", "json"], default="csv")

    sp = add("family", _cmd_family, "foliation of global profiles")
    sp.add_argument("--nu", type=float, required=True)
    sp.add_argument("--c", type=_parse_c, required=True)
    sp.add_argument("--n", type=int, default=7)
    sp.add_argument("--samples", type=int, default=256)
    sp.add_argument("--out")
    sp.add_argument("--format", choices=["csv", "json"], default="csv")

    sp = add("critical", _cmd_critical, "critical-surface profile")
    sp.add_argument("--nu", type=float, required=True)
    sp.add_argument("--c1", type=float, required=True)
    sp.add_argument("--c2", type=float, required=True)
    sp.add_argument("--out")
    sp.add_argument("--format", choices=["csv", "json"], default="csv")

    sp = add("limit", _cmd_limit, "vanishing-viscosity sweep")
    sp.add_argument("--c", type=_parse_c, required=True)
    sp.add_argument(
        "--nu-list", type=_parse_nu_list, default=[1 / 8, 1 / 16, 1 / 32, 1 / 64]
    )
    sp.add_argument("--theta0", type=float, default=None)
    sp.add_argument("--epsilon", type=float, default=0.1)
    sp.add_argument("--out")

    sp = add("liouville", _cmd_liouville, "meromorphic-generated field")
    sp.add_argument(
        "--kind",
        choices=[k.value for k in MeromorphicKind],
        default="linear",
    )
    sp.add_argument("--a", type=_parse_complex, default=1.0 + 0.0j)
    sp.add_argument("--alpha", type=float, default=1.0)
    sp.add_argument("--b", type=_parse_complex, default=1.0 + 0.0j)
    sp.add_argument("--samples", type=int, default=64)
    sp.add_argument("--out")
    sp.add_argument("--format", choices=["csv", "json"], default="csv")

    sp = add("streamlines", _cmd_streamlines, "psi-contour streamlines")
    sp.add_argument("--nu", type=float, default=1.0)
    sp.add_argument("--c", type=_parse_c, default=None)
    sp.add_argument("--gamma", type=float, default=None)
    sp.add_argument("--theta0", type=float, default=None)
    sp.add_argument("--landau", type=float, default=None)
    sp.add_argument("--elliptic-alpha", type=float, default=None)
    sp.add_argument("--samples", type=int, default=256)
    sp.add_argument("--levels", type=int, default=16)
    sp.add_argument("--out", required=True)
    sp.add_argument("--format", choices=["svg", "csv"], default="svg")

    sp = add("figures", _cmd_figures, "batch-reproduce figure data")
    sp.add_argument("--outdir", required=True)
    sp.add_argument("--samples", type=int, default=192)

    return top


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    # config files contribute flags with lower precedence than explicit
    # ones: splice them in right after the subcommand token
    try:
        if "--config" in argv:
            i = argv.index("--config")
            cfg_flags = _load_config(argv[i + 1])
            argv = argv[:i] + argv[i + 2 :]
            argv = argv[:1] + cfg_flags + argv[1:]
        parser = build_parser()
        try:
            args = parser.parse_args(argv)
        except SystemExit as e:
            return 2 if e.code else 0
        return args.func(args)
    except DomainError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except HomoflowError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
