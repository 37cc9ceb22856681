"""Run-time defaults, overridable through the environment."""

from __future__ import annotations

import os
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Settings:
    horizon: int = 64  # window for non-exact relations
    oracle_window: int = 32
    fuse_depth: int = 16
    guard: int = 1 << 20  # largest node set the oracle will materialize

    def __post_init__(self):
        for name in ("horizon", "oracle_window", "fuse_depth", "guard"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

    @classmethod
    def from_env(cls, env=None) -> "Settings":
        env = os.environ if env is None else env
        out = cls()
        for name, var in (("horizon", "TRIMTREES_HORIZON"),
                          ("oracle_window", "TRIMTREES_ORACLE_WINDOW"),
                          ("fuse_depth", "TRIMTREES_FUSE_DEPTH")):
            if var in env:
                out = replace(out, **{name: int(env[var])})
        return out


DEFAULTS = Settings()
