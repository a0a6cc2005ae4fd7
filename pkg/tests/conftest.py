from __future__ import annotations

import pytest

from glshift import ScenarioConfig, load_scenario
from glshift.cli import builtin_scenario_path

SCENARIO_NAMES = [
    "table1_solar",
    "table1_wind",
    "table2_s1",
    "table2_s2",
    "table2_s3",
    "table2_s4",
    "table2_s5",
]


def read_bundled(name: str) -> ScenarioConfig:
    path = builtin_scenario_path(name)
    assert path is not None, f"missing bundled scenario {name}"
    return load_scenario(path.read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def scenarios() -> dict[str, ScenarioConfig]:
    return {name: read_bundled(name) for name in SCENARIO_NAMES}
