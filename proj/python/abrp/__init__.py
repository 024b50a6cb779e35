"""Golden-ratio allocation and geometric routing for staged bus dispatch.

The heavy lifting lives in the compiled ``_abrp`` extension; this package
re-exports its public surface.
"""

from ._abrp import (
    MAX_ROUTES,
    ExactResult,
    GapReport,
    GoldenConstants,
    Instance,
    IntAllocation,
    KKTReport,
    NodeBudgetExceeded,
    Point,
    RatioTable,
    RealAllocation,
    RealizedPlan,
    SatisfactionParams,
    Tour,
    aabrp_cost,
    bhh_estimate,
    brute_force_abrp,
    build_tour,
    completion_times,
    consecutive_ratio_check,
    default_route_count,
    dist,
    eta1,
    eta1_growth_certificate,
    eta1_limit,
    exact_integer,
    export_mip,
    gap_report,
    generate_instance,
    golden_constants,
    gr_heuristic,
    instance_from_json,
    instance_to_json,
    kkt_residual,
    load_instance,
    nu_chain,
    realize,
    satisfaction,
    save_instance,
    save_mip,
    solve_capacitated,
    solve_uncapacitated,
)

__all__ = [
    "MAX_ROUTES",
    "ExactResult",
    "GapReport",
    "GoldenConstants",
    "Instance",
    "IntAllocation",
    "KKTReport",
    "NodeBudgetExceeded",
    "Point",
    "RatioTable",
    "RealAllocation",
    "RealizedPlan",
    "SatisfactionParams",
    "Tour",
    "aabrp_cost",
    "bhh_estimate",
    "brute_force_abrp",
    "build_tour",
    "completion_times",
    "consecutive_ratio_check",
    "default_route_count",
    "dist",
    "eta1",
    "eta1_growth_certificate",
    "eta1_limit",
    "exact_integer",
    "export_mip",
    "gap_report",
    "generate_instance",
    "golden_constants",
    "gr_heuristic",
    "instance_from_json",
    "instance_to_json",
    "kkt_residual",
    "load_instance",
    "nu_chain",
    "realize",
    "satisfaction",
    "save_instance",
    "save_mip",
    "solve_capacitated",
    "solve_uncapacitated",
]

__version__ = "0.1.0"
