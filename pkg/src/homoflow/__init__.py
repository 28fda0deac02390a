"""Tools for (-1)-homogeneous axisymmetric no-swirl solutions of the
incompressible Navier-Stokes equations.

The reduced unknown is U_theta(y) = u_theta sin(theta), y = cos(theta),
which satisfies a Riccati equation with quadratic right-hand side
P_c(y).  The package provides closed-form families, adaptive solvers in
three equivalent representations, the classification of global
solutions and their pole singularities, vanishing-viscosity sweeps,
sphere solutions generated by meromorphic functions, and figure-grade
artifact export.
"""

from ._integrate import BACKEND
from .params import (
    CaseLabel,
    FlowParams,
    HypMap,
    TauSet,
    bar_c3,
    classify_case,
    hyp_map,
    in_j,
    tau_values,
)
from .closedform import (
    FlowField,
    Profile,
    critical_profile,
    elliptic_profile,
    euler_fields,
    euler_ns_profile,
    landau_profile,
    one_sing_profile,
    recover_field,
)
from .riccati import (
    BoundaryValue,
    ClassLabel,
    DomainClass,
    LinearRep,
    SolveRequest,
    blowup_solution,
    boundary_limit,
    endpoint_reachable,
    hypergeom_rep,
    integrate_ivp,
    linear_rep,
)
from .classify import (
    GammaInterval,
    SingType,
    SingularityType,
    asymptotic_indicators,
    extremal_profiles,
    foliation,
    gamma_bounds,
    singularity_type,
)
from .liouville import (
    MeromorphicKind,
    MeromorphicSpec,
    SpherePoint,
    liouville_phi,
    liouville_residual,
    liouville_velocity,
    meridian_variance,
)
from .viscosity import (
    SweepReport,
    extremal_limit_sweep,
    interior_limit_sweep,
    select_interior_profile,
)
from .render import (
    RenderFormat,
    RenderKind,
    RenderSpec,
    StreamFunctionField,
    render,
    stream_function,
    streamline_polylines,
    tangency_defect,
)
from . import errors

__version__ = "0.1.0"
