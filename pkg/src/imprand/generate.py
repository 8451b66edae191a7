"""Deterministic reality simulators: seeded sampling and canonical paths.

Sampling draws one 64-bit word per outcome from a named counter-based
generator and compares it against the forecast probability by exact
cross-multiplication — ``draw * den < num << 64`` — so the sampled
distribution is exact to within 2**-64 per step (and exactly right
whenever p has a power-of-two denominator).  Identical (forecast, n,
seed) requests produce identical bits on every platform.

Only precise forecasting systems can be sampled.  An interval forecast
does not determine a sampling distribution, and any silent resolution
(endpoint, midpoint, anything else) would quietly change every
downstream statistic; callers must choose a compatible precise system
themselves.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SemanticsError
from .forecasts import ForecastSpec
from .situations import PathPrefix, Situation

GENERATOR_NAME = "numpy-philox4x64"

_WORD = 1 << 64


@dataclass(frozen=True)
class SeededSampler:
    """A fixed-algorithm source of raw 64-bit words under a 64-bit seed."""

    seed: int

    def __post_init__(self):
        seed = int(self.seed)
        if not 0 <= seed < _WORD:
            raise DomainError(
                f"seed must be an unsigned 64-bit integer, got {self.seed!r}"
            )
        object.__setattr__(self, "seed", seed)

    @property
    def generator(self) -> str:
        return GENERATOR_NAME

    def raw(self, n: int) -> np.ndarray:
        """The first n raw words for this seed (stateless: same every call)."""
        if n < 0:
            raise DomainError(f"word count must be >= 0, got {n}")
        if n == 0:
            return np.empty(0, dtype=np.uint64)
        return np.random.Philox(key=self.seed).random_raw(n)

    def metadata(self) -> dict:
        return {"seed": self.seed, "generator": self.generator}


def _threshold(num: int, den: int) -> int:
    """Smallest draw count c with c/2**64 >= num/den: draws < c hit prob num/den."""
    return -((-num << 64) // den)


def sample_path(phi: ForecastSpec, n: int, seed: int) -> PathPrefix:
    """n outcomes sampled from a precise forecasting system, deterministically.

    Outcome k+1 is 1 with probability phi(w_{1:k}); encountering an
    imprecise interval raises :class:`SemanticsError`.
    """
    n = int(n)
    if n < 0:
        raise DomainError(f"path length must be >= 0, got {n}")
    draws = SeededSampler(seed).raw(n)

    const = phi.constant_interval()
    if const is not None:
        if not const.is_precise:
            raise SemanticsError(
                f"cannot sample an imprecise forecast [{const.lower}, {const.upper}]: "
                "choose a compatible precise system"
            )
        p = const.lower
        cut = _threshold(p.numerator, p.denominator)
        if cut >= _WORD:
            bits = np.ones(n, dtype=np.uint8)
        else:
            bits = (draws < np.uint64(cut)).astype(np.uint8)
        return Situation(tuple(int(b) for b in bits))

    if phi.is_temporal():
        out = []
        for k in range(n):
            interval = phi.level_interval(k)
            if not interval.is_precise:
                raise SemanticsError(
                    f"cannot sample an imprecise forecast "
                    f"[{interval.lower}, {interval.upper}] at level {k}: "
                    "choose a compatible precise system"
                )
            p = interval.lower
            out.append(
                1 if int(draws[k]) * p.denominator < p.numerator << 64 else 0
            )
        return Situation(tuple(out))

    out = []
    for k in range(n):
        interval = phi.at(Situation(tuple(out)))
        if not interval.is_precise:
            raise SemanticsError(
                f"cannot sample an imprecise forecast "
                f"[{interval.lower}, {interval.upper}] after {''.join(map(str, out))!r}: "
                "choose a compatible precise system"
            )
        p = interval.lower
        out.append(1 if int(draws[k]) * p.denominator < p.numerator << 64 else 0)
    return Situation(tuple(out))


def canonical_path(kind: str, n: int) -> PathPrefix:
    """A prefix of one of the named recursive paths.

    ``alternating`` is 0 at even (0-based) positions and 1 at odd ones:
    "0101...".  ``all_zero`` and ``all_one`` are the constant paths.
    """
    n = int(n)
    if n < 0:
        raise DomainError(f"path length must be >= 0, got {n}")
    if kind == "alternating":
        return Situation(tuple(k & 1 for k in range(n)))
    if kind == "all_zero":
        return Situation((0,) * n)
    if kind == "all_one":
        return Situation((1,) * n)
    raise DomainError(
        f"unknown canonical path kind {kind!r}; expected alternating, all_zero, or all_one"
    )
