"""Local uncertainty models on the binary outcome space {0, 1}.

A gamble is an uncertain reward f: {0, 1} -> Q. A precise local model is
a success probability p, with linear expectation

    E_p(f) = p f(1) + (1 - p) f(0).

An imprecise local model is a closed interval I = [lo, hi] of success
probabilities, with upper and lower expectations

    upper_E_I(f) = max(E_lo(f), E_hi(f)),
    lower_E_I(f) = min(E_lo(f), E_hi(f)),

the extrema being attained at the endpoints because E_p(f) is affine
in p. The two are conjugate: upper_E_I(f) = -lower_E_I(-f).

The gambles a sceptic is offered at price zero, { f : upper_E_I(f) <= 0 },
form a convex cone with an explicit description: f is offered iff

    f = alpha (p - X) + beta (X - q)

for some alpha, beta >= 0, p <= lo, hi <= q, where X is the identity
gamble X(x) = x. ``cone_decompose`` produces such a certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .rationals import RationalLike, as_rational

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class Gamble:
    """A reward schedule on {0, 1}: pays at0 on outcome 0, at1 on 1."""

    at0: Fraction
    at1: Fraction

    def __post_init__(self):
        object.__setattr__(self, "at0", as_rational(self.at0))
        object.__setattr__(self, "at1", as_rational(self.at1))

    @classmethod
    def constant(cls, value: RationalLike) -> "Gamble":
        v = as_rational(value)
        return cls(v, v)

    @classmethod
    def identity(cls) -> "Gamble":
        """X(x) = x, the coordinate gamble used by the cone description."""
        return cls(_ZERO, _ONE)

    def __call__(self, outcome: int) -> Fraction:
        if outcome == 0:
            return self.at0
        if outcome == 1:
            return self.at1
        raise DomainError(f"outcome must be 0 or 1, got {outcome!r}")

    def __neg__(self) -> "Gamble":
        return Gamble(-self.at0, -self.at1)

    def __add__(self, other) -> "Gamble":
        if isinstance(other, Gamble):
            return Gamble(self.at0 + other.at0, self.at1 + other.at1)
        shift = as_rational(other)
        return Gamble(self.at0 + shift, self.at1 + shift)

    __radd__ = __add__

    def __sub__(self, other) -> "Gamble":
        return self + (-other if isinstance(other, Gamble) else -as_rational(other))

    def __mul__(self, scalar) -> "Gamble":
        factor = as_rational(scalar)
        return Gamble(factor * self.at0, factor * self.at1)

    __rmul__ = __mul__

    def minimum(self) -> Fraction:
        return min(self.at0, self.at1)

    def maximum(self) -> Fraction:
        return max(self.at0, self.at1)

    def dominates(self, other: "Gamble") -> bool:
        """Pointwise >=."""
        return self.at0 >= other.at0 and self.at1 >= other.at1


@dataclass(frozen=True)
class IntervalForecast:
    """A closed interval of success probabilities inside [0, 1]."""

    lower: Fraction
    upper: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lower", as_rational(self.lower))
        object.__setattr__(self, "upper", as_rational(self.upper))
        if not (_ZERO <= self.lower <= self.upper <= _ONE):
            raise DomainError(
                f"interval forecast needs 0 <= lower <= upper <= 1, got [{self.lower}, {self.upper}]"
            )

    @classmethod
    def precise(cls, p: RationalLike) -> "IntervalForecast":
        p = as_rational(p)
        return cls(p, p)

    @classmethod
    def vacuous(cls) -> "IntervalForecast":
        return cls(_ZERO, _ONE)

    @property
    def is_precise(self) -> bool:
        return self.lower == self.upper

    @property
    def is_vacuous(self) -> bool:
        return self.lower == _ZERO and self.upper == _ONE

    def endpoints(self) -> tuple[Fraction, Fraction]:
        return (self.lower, self.upper)

    def encloses(self, other: "IntervalForecast") -> bool:
        """other is a subset of self."""
        return self.lower <= other.lower and other.upper <= self.upper


def linear_expectation(p: RationalLike, f: Gamble) -> Fraction:
    """E_p(f) = p f(1) + (1 - p) f(0)."""
    p = as_rational(p)
    if not _ZERO <= p <= _ONE:
        raise DomainError(f"probability must lie in [0, 1], got {p}")
    return p * f.at1 + (_ONE - p) * f.at0


def upper_expectation(interval: IntervalForecast, f: Gamble) -> Fraction:
    """max over p in the interval of E_p(f); attained at an endpoint."""
    return max(linear_expectation(interval.lower, f), linear_expectation(interval.upper, f))


def lower_expectation(interval: IntervalForecast, f: Gamble) -> Fraction:
    """min over p in the interval of E_p(f); attained at an endpoint."""
    return min(linear_expectation(interval.lower, f), linear_expectation(interval.upper, f))


def is_offered(interval: IntervalForecast, f: Gamble) -> bool:
    """Whether the sceptic may buy f at price zero: upper_E(f) <= 0."""
    return upper_expectation(interval, f) <= _ZERO


@dataclass(frozen=True)
class ConeDecomposition:
    """Certificate f = alpha (p - X) + beta (X - q) with alpha, beta >= 0.

    The thresholds p and q are unconstrained rationals (a sale below any
    probability or a purchase above any probability is trivially
    favorable, so values outside [0, 1] are meaningful). ``reconstruct``
    rebuilds the gamble exactly; for a decomposition returned by
    ``cone_decompose`` against an interval [lo, hi] the thresholds
    additionally satisfy p <= lo and q >= hi.
    """

    alpha: Fraction
    p: Fraction
    beta: Fraction
    q: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_rational(self.alpha))
        object.__setattr__(self, "p", as_rational(self.p))
        object.__setattr__(self, "beta", as_rational(self.beta))
        object.__setattr__(self, "q", as_rational(self.q))
        if self.alpha < _ZERO or self.beta < _ZERO:
            raise DomainError("cone coefficients must be >= 0")

    def reconstruct(self) -> Gamble:
        x = Gamble.identity()
        return self.alpha * (Gamble.constant(self.p) - x) + self.beta * (x - Gamble.constant(self.q))


def cone_decompose(interval: IntervalForecast, f: Gamble) -> ConeDecomposition | None:
    """Decompose an offered gamble as alpha (p - X) + beta (X - q).

    Returns None exactly when f is not offered (upper_E(f) > 0).
    Otherwise the certificate has alpha, beta >= 0, p <= interval.lower,
    q >= interval.upper, and reconstructs f exactly:

    - increasing f (f(1) > f(0)): pure buy of X at price
      q = f(0) / (f(0) - f(1)) with volume beta = f(1) - f(0);
    - decreasing f: pure sale at p = f(0) / (f(0) - f(1)) with volume
      alpha = f(0) - f(1);
    - constant f (necessarily <= 0): the slack combination
      alpha = beta = -f with p = 0, q = 1.
    """
    if not is_offered(interval, f):
        return None
    rise = f.at1 - f.at0
    if rise > _ZERO:
        q = f.at0 / (f.at0 - f.at1)
        return ConeDecomposition(alpha=_ZERO, p=_ZERO, beta=rise, q=q)
    if rise < _ZERO:
        p = f.at0 / (f.at0 - f.at1)
        return ConeDecomposition(alpha=-rise, p=p, beta=_ZERO, q=_ONE)
    slack = -upper_expectation(interval, f)
    return ConeDecomposition(alpha=slack, p=_ZERO, beta=slack, q=_ONE)
