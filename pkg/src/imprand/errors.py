"""Semantic exception hierarchy.

Public operations never raise bare ValueError/KeyError for contract
violations; they raise one of these so callers (and the CLI exit-code
mapping) can tell input mistakes, declared-data overruns, resource caps,
and semantic impossibilities apart.
"""

from __future__ import annotations


class ImprandError(Exception):
    """Base class for every error raised by this package."""


class DomainError(ImprandError, ValueError):
    """An argument lies outside its mathematical domain.

    Examples: a probability outside [0, 1], an interval with
    lower > upper, a negative multiplier value, a stake outside [0, 1].
    """


class SpecFormatError(ImprandError, ValueError):
    """A serialized spec (JSON document, path file) is malformed."""


class DepthError(ImprandError):
    """An evaluation reached beyond the data a spec declares.

    Examples: a witness forecast asked past the end of its witness
    sequence, an explicit table asked outside its declared depth.
    """


class ResourceError(ImprandError):
    """An exact computation would exceed a configured cap.

    Examples: exhaustive verification deeper than the depth cap for a
    non-temporal strategy, a backward recursion deeper than the
    recursion cap, the enumeration oracle beyond depth 4.
    """


class SemanticsError(ImprandError):
    """The operation is meaningless for the given inputs.

    Example: sampling a path from a forecast that is imprecise at some
    realized situation — there is no single distribution to draw from.
    """


class StrategyRejectedError(ImprandError):
    """A betting strategy failed a battery's admission check.

    Carries the first violating situation (when the failure is a
    supermartingale violation) so reports can name it.
    """

    def __init__(self, message: str, situation=None):
        super().__init__(message)
        self.situation = situation
