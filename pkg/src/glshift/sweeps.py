"""Parameter sweeps and growth analyses over the emissions model.

Sweeps evaluate reduction-vs-load curves with variant toggles that
isolate the contribution of idle power, embodied carbon and time
constraints.  During a sweep the whole movable fraction is shifted
(alpha forced to 1); single-scenario evaluation keeps the scenario's
own alpha.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .model import ShiftPolicy, SiteClass, blended_emissions
from .scenario import ScenarioConfig

VARIANTS = ("full", "zero_idle", "zero_embodied", "no_time_constraints")
SWEEP_PARAMETERS = ("load_both", "load_hi")


@dataclass(frozen=True)
class SweepSpec:
    """One reduction-vs-load sweep over a base scenario.

    swept_parameter "load_both" moves both loads together;
    "load_hi" sweeps only the high side, keeping the low load fixed.
    """

    base: ScenarioConfig
    swept_parameter: str = "load_both"
    start: float = 0.0
    stop: float = 1.0
    step: float = 0.01
    variants: tuple[str, ...] = VARIANTS

    def __post_init__(self) -> None:
        if self.swept_parameter not in SWEEP_PARAMETERS:
            raise ValueError(f"swept_parameter must be one of {SWEEP_PARAMETERS}")
        if self.step <= 0.0:
            raise ValueError("step must be > 0")
        if not (0.0 <= self.start <= self.stop <= 1.0):
            raise ValueError("need 0 <= start <= stop <= 1")
        unknown = set(self.variants) - set(VARIANTS)
        if unknown:
            raise ValueError(f"unknown variants: {sorted(unknown)}")

    def grid(self) -> list[float]:
        count = int(round((self.stop - self.start) / self.step))
        points = [self.start + i * self.step for i in range(count + 1)]
        return [min(p, self.stop) for p in points]


@dataclass(frozen=True)
class SweepRow:
    """Reductions at one load grid point, keyed by variant name."""

    load: float
    reductions: dict[str, float]


def _zero_embodied(site: SiteClass) -> SiteClass:
    return replace(site, embodied_per_node=0.0)


def _variant_reduction(
    hi: SiteClass, lo: SiteClass, gamma: float, policy: ShiftPolicy, variant: str
) -> float:
    if variant in ("zero_idle", "no_time_constraints"):
        gamma = 0.0
    if variant in ("zero_embodied", "no_time_constraints"):
        hi, lo = _zero_embodied(hi), _zero_embodied(lo)
    if variant == "no_time_constraints":
        policy = replace(policy, beta=1.0)
    return blended_emissions(hi, lo, gamma, policy).reduction


def run_sweep(spec: SweepSpec) -> list[SweepRow]:
    """Evaluate all requested variants across the load grid.

    Where the baseline vanishes (all toggles zero at load 0) the
    reduction is reported as its right-hand limit, which for equal-load
    sweeps equals the constant value on (0, 0.5].
    """
    base = spec.base
    policy = replace(base.policy, alpha=1.0)
    rows = []
    for load in spec.grid():
        reductions: dict[str, float] = {}
        for variant in spec.variants:
            hi = base.hi.with_load(load)
            lo = base.lo if spec.swept_parameter == "load_hi" else base.lo.with_load(load)
            value = _variant_reduction(hi, lo, base.gamma, policy, variant)
            if math.isnan(value) and load == 0.0:
                eps = 1e-9
                hi = base.hi.with_load(eps)
                lo = base.lo if spec.swept_parameter == "load_hi" else base.lo.with_load(eps)
                value = _variant_reduction(hi, lo, base.gamma, policy, variant)
            reductions[variant] = value
        rows.append(SweepRow(load=load, reductions=reductions))
    return rows


def kink_location(rows: list[SweepRow], variant: str, tol: float = 1e-9) -> float | None:
    """Grid load where the curve's slope changes most abruptly.

    Uses the discrete second difference of the variant's reduction; the
    result is reported at grid resolution.  Returns None when the series
    has no kink (all second differences below tol).
    """
    if len(rows) < 3:
        raise ValueError("kink detection needs at least 3 rows")
    values = [row.reductions[variant] for row in rows]
    best_index, best_mag = None, tol
    for i in range(1, len(values) - 1):
        mag = abs(values[i + 1] - 2.0 * values[i] + values[i - 1])
        if mag > best_mag:
            best_index, best_mag = i, mag
    if best_index is None:
        return None
    return rows[best_index].load


def years_compensated(reduction: float, annual_growth: float) -> float:
    """Years of compound growth undone by a one-off relative reduction.

    Solves (1+g)^t * (1-r) = 1 for t.
    """
    if not (0.0 <= reduction < 1.0):
        raise ValueError("reduction must be in [0,1)")
    if annual_growth <= 0.0:
        raise ValueError("annual_growth must be > 0")
    return math.log(1.0 / (1.0 - reduction)) / math.log(1.0 + annual_growth)


def capacity_projection(
    base_power_gw: float, annual_growth: float, years: int
) -> tuple[float, float]:
    """Projected power (GW) and annual energy (TWh) after compound growth.

    Energy assumes continuous draw at the projected power: 1 GW is
    8.76 TWh/y.
    """
    if base_power_gw <= 0.0 or years < 0:
        raise ValueError("need base_power_gw > 0 and years >= 0")
    power = base_power_gw * (1.0 + annual_growth) ** years
    return power, power * 8.76
