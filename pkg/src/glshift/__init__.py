"""Analytical model of emission reductions from geographic load shifting."""

from .model import (
    EmissionsReport,
    ModelError,
    NodePowerModel,
    ShiftPolicy,
    SiteClass,
    baseline_emissions,
    blended_emissions,
    effective_alpha,
    gls_emissions,
    ideal_reduction,
    node_annual_energy,
    op_full_per_node,
    operational_factor,
    shift_overhead,
    shifted_loads,
)
from .scenario import (
    RegionProfile,
    ScenarioConfig,
    ScenarioError,
    format_scenario,
    fossil_ci_backout,
    load_scenario,
    mean_fossil_ci,
    nodes_from_power_budget,
    solar_beta,
    wind_beta,
)
from .sweeps import (
    SweepRow,
    SweepSpec,
    capacity_projection,
    kink_location,
    run_sweep,
    years_compensated,
)
from .trace import TraceSpec, TwoPoint, Uniform, compare_with_means, evaluate_trace

__version__ = "0.1.0"

__all__ = [
    "EmissionsReport",
    "ModelError",
    "NodePowerModel",
    "RegionProfile",
    "ScenarioConfig",
    "ScenarioError",
    "ShiftPolicy",
    "SiteClass",
    "SweepRow",
    "SweepSpec",
    "TraceSpec",
    "TwoPoint",
    "Uniform",
    "baseline_emissions",
    "blended_emissions",
    "capacity_projection",
    "compare_with_means",
    "effective_alpha",
    "evaluate_trace",
    "format_scenario",
    "fossil_ci_backout",
    "gls_emissions",
    "ideal_reduction",
    "kink_location",
    "load_scenario",
    "mean_fossil_ci",
    "node_annual_energy",
    "nodes_from_power_budget",
    "op_full_per_node",
    "operational_factor",
    "run_sweep",
    "shift_overhead",
    "shifted_loads",
    "solar_beta",
    "wind_beta",
    "years_compensated",
]
