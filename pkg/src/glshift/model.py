"""Two-site annual emissions model for geographic load shifting.

All emission quantities are kgCO2e per year unless noted otherwise.
Every function here is pure; the dataclasses are frozen and validated
at construction, so downstream code never re-checks ranges.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

HOURS_PER_YEAR = 24 * 365  # fixed 8,760 h convention, no leap years


class ModelError(ValueError):
    """Invalid parameter value for the emissions model."""


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ModelError(message)


@dataclass(frozen=True)
class NodePowerModel:
    """Electrical and emission characteristics of one compute node.

    active_power: W drawn when the node is busy.
    idle_fraction: idle draw as a fraction of active draw, in [0,1].
    pue: facility power / IT power, >= 1.
    carbon_intensity: gCO2e per kWh of the local grid.
    network_overhead_fraction: extra draw for networking outside the
        node, as a fraction of node energy (default 0).
    """

    active_power: float
    idle_fraction: float
    pue: float
    carbon_intensity: float
    network_overhead_fraction: float = 0.0

    def __post_init__(self) -> None:
        _require(self.active_power > 0, "active_power must be > 0")
        _require(0.0 <= self.idle_fraction <= 1.0, "idle_fraction must be in [0,1]")
        _require(self.pue >= 1.0, "pue must be >= 1")
        _require(self.carbon_intensity >= 0.0, "carbon_intensity must be >= 0")
        _require(
            self.network_overhead_fraction >= 0.0,
            "network_overhead_fraction must be >= 0",
        )


@dataclass(frozen=True)
class SiteClass:
    """One emission class (high or low CI): identical sites grouped together.

    op_full_per_node is the annual operational emissions of one node at
    full load, including PUE and network overhead.
    """

    site_count: int
    nodes_per_site: int
    load: float
    embodied_per_node: float
    op_full_per_node: float

    def __post_init__(self) -> None:
        _require(self.site_count >= 1, "site_count must be >= 1")
        _require(self.nodes_per_site >= 1, "nodes_per_site must be >= 1")
        _require(0.0 <= self.load <= 1.0, "load must be in [0,1]")
        _require(self.embodied_per_node >= 0.0, "embodied_per_node must be >= 0")
        _require(self.op_full_per_node >= 0.0, "op_full_per_node must be >= 0")

    @property
    def embodied_per_site(self) -> float:
        return self.embodied_per_node * self.nodes_per_site

    @property
    def op_full_per_site(self) -> float:
        """Full-load annual operational emissions of one whole site."""
        return self.op_full_per_node * self.nodes_per_site

    def with_load(self, load: float) -> "SiteClass":
        return replace(self, load=load)


@dataclass(frozen=True)
class ShiftPolicy:
    """Shifting knobs: how much work moves, how often, at what cost.

    alpha: fraction of the workload that can be moved.
    beta: fraction of the time during which moving is possible.
    eta: per-node emission overhead factor for moving work.
    """

    alpha: float
    beta: float
    eta: float = 0.0

    def __post_init__(self) -> None:
        _require(0.0 <= self.alpha <= 1.0, "alpha must be in [0,1]")
        _require(0.0 <= self.beta <= 1.0, "beta must be in [0,1]")
        _require(0.0 <= self.eta < 1.0, "eta must be in [0,1)")


@dataclass(frozen=True)
class EmissionsReport:
    """Itemised annual emissions for one evaluated scenario.

    op_hi / op_lo are the operational totals of each class after
    shifting (the load-shifted case).  overhead is the effective annual
    overhead, i.e. already scaled by beta.  reduction is NaN when the
    baseline is zero (undefined, distinct from a genuine 0).
    """

    embodied_total: float
    op_hi: float
    op_lo: float
    overhead: float
    baseline_total: float
    gls_total: float
    blended_total: float
    alpha_eff: float
    reduction: float


def node_annual_energy(model: NodePowerModel) -> float:
    """Year-average energy use of one always-active node, in kWh."""
    return model.active_power * HOURS_PER_YEAR / 1000.0


def op_full_per_node(model: NodePowerModel) -> float:
    """Annual operational emissions of one node at full load, kgCO2e.

    Includes the PUE and the network overhead factor; carbon intensity
    is g/kWh, hence the /1000.
    """
    energy = node_annual_energy(model)
    return (
        energy
        * (1.0 + model.network_overhead_fraction)
        * model.pue
        * model.carbon_intensity
        / 1000.0
    )


def operational_factor(load: float, idle_fraction: float) -> float:
    """Fraction of full-load draw actually consumed at a given load."""
    _require(0.0 <= load <= 1.0, "load must be in [0,1]")
    _require(0.0 <= idle_fraction <= 1.0, "idle_fraction must be in [0,1]")
    return load + idle_fraction * (1.0 - load)


def baseline_emissions(hi: SiteClass, lo: SiteClass, gamma: float) -> float:
    """Total annual emissions with no shifting, kgCO2e."""
    embodied = hi.site_count * hi.embodied_per_site + lo.site_count * lo.embodied_per_site
    op_hi = hi.site_count * operational_factor(hi.load, gamma) * hi.op_full_per_site
    op_lo = lo.site_count * operational_factor(lo.load, gamma) * lo.op_full_per_site
    # summed in the same order as the shifted-load case, so that a no-op
    # shift (alpha_eff = 0) reproduces the baseline bit for bit
    return embodied + op_hi + op_lo


def effective_alpha(alpha: float, hi: SiteClass, lo: SiteClass) -> float:
    """Movable fraction after capping by free capacity at the low sites.

    Equivalent to clamping min(alpha, free/busy) to [0,1], where
    free = n_lo*(1-load_lo) and busy = n_hi*load_hi.  When the high
    sites are idle (busy == 0) there is nothing to move and alpha is
    returned unchanged, avoiding the division.
    """
    _require(0.0 <= alpha <= 1.0, "alpha must be in [0,1]")
    busy = hi.site_count * hi.load
    if busy == 0.0:
        return alpha
    free = lo.site_count * (1.0 - lo.load)
    return min(alpha, free / busy)


def shifted_loads(alpha_eff: float, hi: SiteClass, lo: SiteClass) -> tuple[float, float]:
    """Loads of both classes after moving alpha_eff of the high-side work."""
    new_hi = hi.load * (1.0 - alpha_eff)
    new_lo = lo.load + alpha_eff * hi.load * hi.site_count / lo.site_count
    return new_hi, new_lo


def shift_overhead(eta: float, alpha_eff: float, hi: SiteClass, lo: SiteClass) -> float:
    """Annual emissions cost of moving the work, kgCO2e.

    Proportional to the amount moved and to the full-load operational
    emissions of all sites involved.
    """
    return eta * alpha_eff * (
        hi.site_count * hi.op_full_per_site + lo.site_count * lo.op_full_per_site
    )


def gls_emissions(hi: SiteClass, lo: SiteClass, gamma: float, policy: ShiftPolicy) -> float:
    """Total annual emissions while shifting is active, kgCO2e."""
    alpha_eff = effective_alpha(policy.alpha, hi, lo)
    new_hi, new_lo = shifted_loads(alpha_eff, hi, lo)
    embodied = hi.site_count * hi.embodied_per_site + lo.site_count * lo.embodied_per_site
    op_hi = hi.site_count * operational_factor(new_hi, gamma) * hi.op_full_per_site
    op_lo = lo.site_count * operational_factor(min(new_lo, 1.0), gamma) * lo.op_full_per_site
    return embodied + op_hi + op_lo + shift_overhead(policy.eta, alpha_eff, hi, lo)


def blended_emissions(
    hi: SiteClass, lo: SiteClass, gamma: float, policy: ShiftPolicy
) -> EmissionsReport:
    """Evaluate the full model and return the itemised report.

    The blended total weights the shifting and baseline regimes by the
    fraction of the time shifting is possible (beta).
    """
    alpha_eff = effective_alpha(policy.alpha, hi, lo)
    new_hi, new_lo = shifted_loads(alpha_eff, hi, lo)
    new_lo = min(new_lo, 1.0)
    embodied = hi.site_count * hi.embodied_per_site + lo.site_count * lo.embodied_per_site
    op_hi = hi.site_count * operational_factor(new_hi, gamma) * hi.op_full_per_site
    op_lo = lo.site_count * operational_factor(new_lo, gamma) * lo.op_full_per_site
    overhead_raw = shift_overhead(policy.eta, alpha_eff, hi, lo)

    baseline = baseline_emissions(hi, lo, gamma)
    gls = embodied + op_hi + op_lo + overhead_raw
    if policy.beta == 0.0 or gls == baseline:
        # avoid beta*x + (1-beta)*x rounding away from x
        blended = baseline
    else:
        blended = policy.beta * gls + (1.0 - policy.beta) * baseline
    if baseline > 0.0:
        reduction = (baseline - blended) / baseline
    else:
        reduction = math.nan
    return EmissionsReport(
        embodied_total=embodied,
        op_hi=op_hi,
        op_lo=op_lo,
        overhead=policy.beta * overhead_raw,
        baseline_total=baseline,
        gls_total=gls,
        blended_total=blended,
        alpha_eff=alpha_eff,
        reduction=reduction,
    )


def ideal_reduction(c_hi: float, c_lo: float, load: float) -> float:
    """Upper bound on the reduction under ideal conditions.

    Ideal means: no embodied carbon, zero idle draw, no overhead, all
    work movable all the time, equal loads on both sides.
    """
    _require(0.0 <= load <= 1.0, "load must be in [0,1]")
    total = c_hi + c_lo
    if total <= 0.0:
        raise ModelError("ideal_reduction undefined for c_hi + c_lo = 0")
    if load <= 0.5:
        return (c_hi - c_lo) / total
    return 1.0 - ((2.0 * load - 1.0) * c_hi + c_lo) / (load * total)
