"""Run configuration shared by the analysis stages."""

from __future__ import annotations

import os
from dataclasses import dataclass


@dataclass(frozen=True)
class ToolkitConfig:
    degree_cap: int = 8
    blowup_budget: int = 64
    n_samples: int = 50
    seed: int = 0
    deg_geo_samples: int = 5
    eq1_samples: int = 10
    # require every checked pencil member to be certified rational before the
    # invertibility equivalence is asserted (polygon-degenerate members block
    # the harness when this is set)
    strict_rationality: bool = True

    @classmethod
    def from_env(cls, **overrides) -> "ToolkitConfig":
        if "seed" not in overrides and "PLANEPENCIL_SEED" in os.environ:
            overrides["seed"] = int(os.environ["PLANEPENCIL_SEED"])
        return cls(**overrides)


DEFAULT_CONFIG = ToolkitConfig()
