"""Exact rational scalars and their canonical text form.

Every scalar in this package is an exact ``fractions.Fraction``; floats
are rejected at the boundary so binary rounding can never leak into a
result. The canonical text form is ``"num/den"`` in lowest terms with a
positive denominator (``"3/4"``, ``"-1/2"``, ``"0/1"``); bare integers
are accepted on input as shorthand.
"""

from __future__ import annotations

import sys
from fractions import Fraction

from .errors import DomainError, SpecFormatError

Rational = Fraction

RationalLike = Fraction | int | str


def as_rational(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction, or "num/den" string to a Fraction.

    Floats are refused: they carry binary rounding and would silently
    break the exactness contract.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise DomainError(f"expected a rational number, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise DomainError(
            f"floats are not exact; pass a Fraction, int, or 'num/den' string, got {value!r}"
        )
    if isinstance(value, str):
        try:
            return _parse_fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise SpecFormatError(f"not a rational literal: {value!r}") from exc
    raise DomainError(f"expected a rational number, got {type(value).__name__}")


def _without_digit_guard(convert, argument):
    # int/str conversions beyond the interpreter's digit guard are fine
    # here: values are exact capitals and spec-file literals, not hostile
    # network input, and the quadratic cost is the user's own to spend.
    if not hasattr(sys, "set_int_max_str_digits"):
        return convert(argument)
    limit = sys.get_int_max_str_digits()
    sys.set_int_max_str_digits(0)
    try:
        return convert(argument)
    finally:
        sys.set_int_max_str_digits(limit)


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except ValueError:
        if len(text) < 4000:
            raise
        return _without_digit_guard(Fraction, text)


def _int_str(n: int) -> str:
    # Exact capital on long paths easily exceeds the interpreter's
    # int-to-str digit guard.
    try:
        return str(n)
    except ValueError:
        return _without_digit_guard(str, n)


def format_rational(value: RationalLike) -> str:
    """Canonical "num/den" form (denominator always written)."""
    f = as_rational(value)
    return f"{_int_str(f.numerator)}/{_int_str(f.denominator)}"
