"""Finite-horizon global upper/lower expectations on the binary tree.

A :class:`DepthGamble` is a payoff determined by the first n outcomes:
one rational per length-n bitstring.  Its upper expectation under a
forecasting system phi is computed by backward recursion,

    V(s) = f(s)                                   at |s| = n,
    V(s) = upper_E_{phi(s)}( x -> V(sx) )         at |s| < n,

and returned as V(root); the lower expectation is its conjugate
-E_upper(-f).  Upper/lower probabilities are the expectations of
{0, 1}-valued indicator payoffs of clopen events.

The recursion optimizes each situation's endpoint choice locally.  An
independent check, :func:`upper_expectation_enum_oracle`, instead
enumerates every joint assignment of interval endpoints to situations,
computes each assignment's precise path-sum expectation, and maximizes
over the lot — exponentially expensive (hence capped at depth 4) but
free of the local-optimization insight, so agreement between the two is
informative.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .config import ORACLE_DEPTH_CAP, recursion_depth_cap
from .errors import DomainError, ResourceError
from .forecasts import ForecastSpec
from .local import Gamble, linear_expectation, upper_expectation
from .rationals import Rational, RationalLike, as_rational
from .situations import Situation, situations_at_level, situations_to_depth

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _leaf_index(bits: tuple[int, ...]) -> int:
    index = 0
    for b in bits:
        index = (index << 1) | b
    return index


def _leaf_string(index: int, depth: int) -> str:
    return format(index, f"0{depth}b") if depth else ""


@dataclass(frozen=True)
class DepthGamble:
    """A payoff on paths that depends only on the first ``depth`` outcomes.

    ``values`` holds one rational per length-``depth`` bitstring in
    lexicographic order (the string read as a binary number, first
    outcome most significant).
    """

    depth: int
    values: tuple[Fraction, ...]

    def __post_init__(self):
        depth = int(self.depth)
        if depth < 0:
            raise DomainError(f"depth must be >= 0, got {depth}")
        object.__setattr__(self, "depth", depth)
        values = tuple(as_rational(v) for v in self.values)
        if len(values) != 1 << depth:
            raise DomainError(
                f"depth-{depth} gamble needs {1 << depth} values, got {len(values)}"
            )
        object.__setattr__(self, "values", values)

    @classmethod
    def from_map(cls, depth: int, payoff: Mapping) -> "DepthGamble":
        """Build from a total map of length-``depth`` bitstrings to rationals."""
        depth = int(depth)
        if depth < 0:
            raise DomainError(f"depth must be >= 0, got {depth}")
        size = 1 << depth
        values: list[Fraction | None] = [None] * size
        for key, value in payoff.items():
            bits = key.bits if isinstance(key, Situation) else Situation.from_string(str(key)).bits
            if len(bits) != depth:
                raise DomainError(
                    f"payoff key {key!r} does not have length {depth}"
                )
            values[_leaf_index(bits)] = as_rational(value)
        missing = [
            _leaf_string(i, depth) for i, v in enumerate(values) if v is None
        ]
        if missing:
            raise DomainError(
                f"payoff map must cover all {size} strings; missing {missing[:4]}..."
                if len(missing) > 4
                else f"payoff map must cover all {size} strings; missing {missing}"
            )
        return cls(depth, tuple(values))  # type: ignore[arg-type]

    @classmethod
    def constant(cls, depth: int, value: RationalLike) -> "DepthGamble":
        v = as_rational(value)
        return cls(depth, (v,) * (1 << int(depth)))

    def value_at(self, leaf: Situation) -> Fraction:
        if len(leaf) != self.depth:
            raise DomainError(
                f"gamble of depth {self.depth} is evaluated on length-{self.depth} "
                f"histories, got |s| = {len(leaf)}"
            )
        return self.values[_leaf_index(leaf.bits)]

    def payoff_map(self) -> dict[str, Fraction]:
        return {
            _leaf_string(i, self.depth): v for i, v in enumerate(self.values)
        }

    def minimum(self) -> Fraction:
        return min(self.values)

    def maximum(self) -> Fraction:
        return max(self.values)

    def dominates(self, other: "DepthGamble") -> bool:
        """Pointwise >= against another gamble of the same depth."""
        self._check_same_depth(other)
        return all(a >= b for a, b in zip(self.values, other.values))

    def _check_same_depth(self, other: "DepthGamble") -> None:
        if self.depth != other.depth:
            raise DomainError(
                f"depth mismatch: {self.depth} vs {other.depth}"
            )

    def __add__(self, other):
        if isinstance(other, DepthGamble):
            self._check_same_depth(other)
            return DepthGamble(
                self.depth, tuple(a + b for a, b in zip(self.values, other.values))
            )
        shift = as_rational(other)
        return DepthGamble(self.depth, tuple(v + shift for v in self.values))

    __radd__ = __add__

    def __neg__(self):
        return DepthGamble(self.depth, tuple(-v for v in self.values))

    def __sub__(self, other):
        return self + (-other if isinstance(other, DepthGamble) else -as_rational(other))

    def __mul__(self, scalar):
        factor = as_rational(scalar)
        return DepthGamble(self.depth, tuple(factor * v for v in self.values))

    __rmul__ = __mul__


@dataclass(frozen=True)
class ClopenEvent:
    """A set of paths determined by the first ``depth`` outcomes."""

    depth: int
    members: frozenset[Situation]

    def __post_init__(self):
        depth = int(self.depth)
        if depth < 0:
            raise DomainError(f"depth must be >= 0, got {depth}")
        object.__setattr__(self, "depth", depth)
        cleaned = []
        for member in self.members:
            s = member if isinstance(member, Situation) else Situation.from_string(str(member))
            if len(s) != depth:
                raise DomainError(
                    f"event member {s} does not have length {depth}"
                )
            cleaned.append(s)
        object.__setattr__(self, "members", frozenset(cleaned))

    @classmethod
    def from_strings(cls, depth: int, members: Iterable[str]) -> "ClopenEvent":
        return cls(depth, frozenset(Situation.from_string(m) for m in members))

    def indicator(self) -> DepthGamble:
        values = [_ZERO] * (1 << self.depth)
        for member in self.members:
            values[_leaf_index(member.bits)] = _ONE
        return DepthGamble(self.depth, tuple(values))

    def complement(self) -> "ClopenEvent":
        present = {_leaf_index(m.bits) for m in self.members}
        others = frozenset(
            Situation(tuple((i >> (self.depth - 1 - k)) & 1 for k in range(self.depth)))
            for i in range(1 << self.depth)
            if i not in present
        )
        return ClopenEvent(self.depth, others)

    def __contains__(self, leaf: Situation) -> bool:
        return leaf in self.members


# ---------------------------------------------------------------------------
# Backward recursion
# ---------------------------------------------------------------------------


def _check_depth(depth: int) -> None:
    cap = recursion_depth_cap()
    if depth > cap:
        raise ResourceError(
            f"global expectation at depth {depth} exceeds the recursion cap {cap}"
        )


def global_upper_expectation(phi: ForecastSpec, f: DepthGamble) -> Fraction:
    """V(root) of the backward recursion V(s) = upper_E_{phi(s)}(V(s.))."""
    _check_depth(f.depth)
    values = list(f.values)
    if phi.is_temporal():
        for level in range(f.depth - 1, -1, -1):
            interval = phi.level_interval(level)
            values = [
                upper_expectation(interval, Gamble(values[2 * i], values[2 * i + 1]))
                for i in range(1 << level)
            ]
    else:
        for level in range(f.depth - 1, -1, -1):
            values = [
                upper_expectation(phi.at(s), Gamble(values[2 * i], values[2 * i + 1]))
                for i, s in enumerate(situations_at_level(level))
            ]
    return values[0]


def global_lower_expectation(phi: ForecastSpec, f: DepthGamble) -> Fraction:
    """The conjugate value -E_upper(-f)."""
    return -global_upper_expectation(phi, -f)


def upper_probability(phi: ForecastSpec, event: ClopenEvent) -> Fraction:
    return global_upper_expectation(phi, event.indicator())


def lower_probability(phi: ForecastSpec, event: ClopenEvent) -> Fraction:
    return global_lower_expectation(phi, event.indicator())


# ---------------------------------------------------------------------------
# Credal enumeration oracle
# ---------------------------------------------------------------------------


def upper_expectation_enum_oracle(phi: ForecastSpec, f: DepthGamble) -> Fraction:
    """Maximum path-sum expectation over all joint endpoint assignments.

    Every situation above the horizon is independently pinned to its
    interval's lower or upper endpoint; each of the 2^(2^depth - 1)
    joint assignments yields a precise tree whose expectation is a sum
    over leaves of products of transition probabilities.  The maximum
    over assignments is returned.  Exponential by design — it exists to
    cross-check the backward recursion — and therefore capped hard at
    depth 4.
    """
    if f.depth > ORACLE_DEPTH_CAP:
        raise ResourceError(
            f"enumeration oracle is capped at depth {ORACLE_DEPTH_CAP}, got {f.depth}"
        )
    interior = list(situations_to_depth(f.depth))
    endpoints = []
    for s in interior:
        interval = phi.at(s)
        endpoints.append((interval.lower, interval.upper))
    index_of = {s.bits: k for k, s in enumerate(interior)}
    leaves = [
        tuple((i >> (f.depth - 1 - k)) & 1 for k in range(f.depth))
        for i in range(1 << f.depth)
    ]
    # For each leaf, the interior situations it passes through, paired
    # with the outcome taken there.
    routes = [
        [(index_of[bits[:k]], bits[k]) for k in range(f.depth)] for bits in leaves
    ]
    best: Fraction | None = None
    for assignment in range(1 << len(interior)):
        chosen = [
            endpoints[k][(assignment >> k) & 1] for k in range(len(interior))
        ]
        total = _ZERO
        for leaf_index, route in enumerate(routes):
            weight = _ONE
            for k, outcome in route:
                p = chosen[k]
                weight *= p if outcome else _ONE - p
                if weight == 0:
                    break
            if weight != 0:
                total += weight * f.values[leaf_index]
        if best is None or total > best:
            best = total
    assert best is not None
    return best
