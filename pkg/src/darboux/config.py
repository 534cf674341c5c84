"""Run-wide tunables shared by the pipeline stages."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class AnalysisOptions:
    budget_points: int = 500
    cf_depth: int = 12
    precision_max: int = 4096
    seed: int = 0
    jobs: int = 1
