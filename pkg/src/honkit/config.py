"""Run configuration with flag > environment > default precedence."""

from __future__ import annotations

import os
from dataclasses import dataclass, fields


@dataclass
class RunConfig:
    max_order: int = 5
    epsilon: float = 0.05
    damping: float = 0.85
    pagerank_tol: float = 1e-12
    kl_epsilon: float = 1e-10
    kl_direction: str = "out"
    split_fraction: float = 0.2
    seed: int = 42
    exact_sp_threshold: int = 20000
    format: str = "json"

    def validate(self) -> None:
        if self.max_order < 1:
            raise ValueError(f"max_order must be >= 1, got {self.max_order}")
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError(f"epsilon must be in (0, 1), got {self.epsilon}")
        if not 0.0 < self.damping < 1.0:
            raise ValueError(f"damping must be in (0, 1), got {self.damping}")
        if self.pagerank_tol <= 0:
            raise ValueError(f"pagerank_tol must be positive, got {self.pagerank_tol}")
        if self.kl_epsilon <= 0:
            raise ValueError(f"kl_epsilon must be positive, got {self.kl_epsilon}")
        if self.kl_direction not in ("in", "out", "total"):
            raise ValueError(f"kl_direction must be in/out/total, got {self.kl_direction!r}")
        if not 0.0 < self.split_fraction < 1.0:
            raise ValueError(f"split_fraction must be in (0, 1), got {self.split_fraction}")
        if self.exact_sp_threshold < 1:
            raise ValueError(f"exact_sp_threshold must be >= 1, got {self.exact_sp_threshold}")
        if self.format not in ("json", "csv"):
            raise ValueError(f"format must be json or csv, got {self.format!r}")

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(RunConfig)}


_ENV_NAMES = {
    "max_order": "HONKIT_MAX_ORDER",
    "epsilon": "HONKIT_EPSILON",
    "damping": "HONKIT_DAMPING",
    "pagerank_tol": "HONKIT_PAGERANK_TOL",
    "kl_epsilon": "HONKIT_KL_EPSILON",
    "kl_direction": "HONKIT_KL_DIRECTION",
    "split_fraction": "HONKIT_SPLIT",
    "seed": "HONKIT_SEED",
    "exact_sp_threshold": "HONKIT_EXACT_SP_THRESHOLD",
    "format": "HONKIT_FORMAT",
}


def from_environment(environ=None) -> RunConfig:
    """Defaults overridden by any HONKIT_* environment variables present."""
    env = os.environ if environ is None else environ
    config = RunConfig()
    for f in fields(RunConfig):
        raw = env.get(_ENV_NAMES[f.name])
        if raw is None:
            continue
        if f.name in ("max_order", "seed", "exact_sp_threshold"):
            value = int(raw)
        elif f.name in ("format", "kl_direction"):
            value = raw
        else:
            value = float(raw)
        setattr(config, f.name, value)
    return config
