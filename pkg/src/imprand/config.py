"""Depth caps for exact exhaustive computations.

Exhaustive situation sweeps cost 2^depth work and the backward recursion
over depth-n payoffs touches 2^n leaves, so both are capped. The caps can
be raised or lowered for one run through the ``IMPRAND_DEPTH_CAP``
environment variable, which overrides both; the enumeration oracle's cap
is part of its contract and stays fixed.
"""

from __future__ import annotations

import os

from .errors import DomainError

DEPTH_CAP_ENV = "IMPRAND_DEPTH_CAP"

DEFAULT_VERIFICATION_DEPTH_CAP = 16
DEFAULT_RECURSION_DEPTH_CAP = 20
ORACLE_DEPTH_CAP = 4


def _env_cap() -> int | None:
    raw = os.environ.get(DEPTH_CAP_ENV)
    if raw is None:
        return None
    try:
        cap = int(raw)
    except ValueError:
        raise DomainError(
            f"{DEPTH_CAP_ENV} must be a positive integer, got {raw!r}"
        ) from None
    if cap < 1:
        raise DomainError(f"{DEPTH_CAP_ENV} must be >= 1, got {cap}")
    return cap


def verification_depth_cap() -> int:
    """Cap on exhaustive per-situation sweeps (2^depth situations)."""
    return _env_cap() or DEFAULT_VERIFICATION_DEPTH_CAP


def recursion_depth_cap() -> int:
    """Cap on backward-recursion depth (2^depth leaves)."""
    return _env_cap() or DEFAULT_RECURSION_DEPTH_CAP
