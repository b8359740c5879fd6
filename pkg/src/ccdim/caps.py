"""Enumeration caps, overridable through the ``CCDIM_CAPS`` environment variable.

Format: ``codewords=16777216,subspaces=100000000,subsets=16777216``; any
subset of keys may be given.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace

from .errors import CapExceeded


@dataclass(frozen=True)
class Caps:
    codewords: int = 2**24
    subspaces: int = 10**8
    subsets: int = 2**24


def parse_caps(text: str, base: Caps | None = None) -> Caps:
    base = base or Caps()
    known = {f.name for f in fields(Caps)}
    updates = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        key, _, value = item.partition("=")
        key = key.strip()
        if key not in known:
            raise ValueError(f"unknown cap {key!r} in CCDIM_CAPS")
        updates[key] = int(value)
    return replace(base, **updates)


_override: Caps | None = None


def get_caps() -> Caps:
    if _override is not None:
        return _override
    return parse_caps(os.environ.get("CCDIM_CAPS", ""))


def set_caps(caps: Caps | None) -> None:
    """Install process-wide caps (``None`` restores the environment default)."""
    global _override
    _override = caps
