"""Enumeration and search caps.

Library functions take explicit cap arguments whose defaults come from here.
The CLI layers ``SRRLAB_CAPS`` (``key=value`` pairs separated by commas, e.g.
``span=2**26,clique_nodes=50000000``) under its own flags.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace

SPAN_CAP = 1 << 24
CLIQUE_NODE_BUDGET = 10**7
DESIGN_SUBSET_CAP = 10**7
ERROR_PATTERN_CAP = 10**7

ENV_VAR = "SRRLAB_CAPS"


@dataclass(frozen=True)
class Caps:
    span: int = SPAN_CAP
    clique_nodes: int = CLIQUE_NODE_BUDGET
    design_subsets: int = DESIGN_SUBSET_CAP
    error_patterns: int = ERROR_PATTERN_CAP

    def override(self, **values: int | None) -> "Caps":
        return replace(self, **{k: v for k, v in values.items() if v is not None})


def _parse_int(text: str) -> int:
    text = text.strip()
    if "**" in text:
        base, exp = text.split("**", 1)
        return int(base) ** int(exp)
    if "^" in text:
        base, exp = text.split("^", 1)
        return int(base) ** int(exp)
    return int(text.replace("_", ""))


def caps_from_env(environ: dict[str, str] | None = None) -> Caps:
    env = os.environ if environ is None else environ
    raw = env.get(ENV_VAR, "").strip()
    if not raw:
        return Caps()
    known = {f.name for f in fields(Caps)}
    values: dict[str, int] = {}
    for item in raw.split(","):
        if not item.strip():
            continue
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or key not in known:
            raise ValueError(f"{ENV_VAR}: unknown or malformed entry {item!r}")
        values[key] = _parse_int(value)
        if values[key] < 1:
            raise ValueError(f"{ENV_VAR}: cap {key} must be positive")
    return Caps(**values)
