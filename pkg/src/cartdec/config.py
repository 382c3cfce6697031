"""Budgets for the searches that can blow up, overridable through ``CARTDEC_BUDGET``."""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

ENV_VAR = "CARTDEC_BUDGET"


@dataclass(frozen=True)
class Budget:
    materialize: int = 100_000
    blocks: int = 10_000
    orbit: int = 100_000

    @classmethod
    def from_env(cls, environ: dict | None = None) -> "Budget":
        """Read overrides such as ``CARTDEC_BUDGET="blocks=500,orbit=2000"``.

        A bare integer sets the block-system cap, the budget the CLI exposes
        as ``--budget``.
        """
        env = os.environ if environ is None else environ
        raw = env.get(ENV_VAR, "").strip()
        base = cls()
        if not raw:
            return base
        if raw.isdigit():
            return replace(base, blocks=int(raw))
        fields = {}
        for part in raw.split(","):
            key, sep, value = part.partition("=")
            key = key.strip()
            if not sep or key not in ("materialize", "blocks", "orbit") or not value.strip().isdigit():
                raise ValueError(f"bad {ENV_VAR} entry: {part!r}")
            fields[key] = int(value)
        return replace(base, **fields)
