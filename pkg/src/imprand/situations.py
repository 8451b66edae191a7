"""Finite binary histories: situations and observed path prefixes.

A situation is a finite string of outcomes in {0, 1}; the empty situation
is the root of the event tree. ``PathPrefix`` is the same value type used
in its other role: the first n outcomes of a path actually observed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import DomainError, SpecFormatError


@dataclass(frozen=True, order=True)
class Situation:
    """An element of the event tree: a finite tuple of outcomes in {0, 1}.

    Ordering is lexicographic on the bit tuple, which combined with an
    explicit length sort gives the deterministic (level, bits) order used
    in reports.
    """

    bits: tuple[int, ...] = ()

    def __post_init__(self):
        bits = self.bits
        if not isinstance(bits, tuple):
            bits = tuple(bits)
            object.__setattr__(self, "bits", bits)
        if bits and not frozenset(bits).issubset(_VALID_BITS):
            raise DomainError(f"situation bits must be 0 or 1: {bits!r}")

    @classmethod
    def root(cls) -> "Situation":
        return cls(())

    @classmethod
    def from_string(cls, text: str) -> "Situation":
        try:
            return cls(tuple(_BIT_OF[ch] for ch in text))
        except KeyError as exc:
            raise SpecFormatError(f"situation string may contain only '0'/'1': {text!r}") from exc

    @classmethod
    def zeros(cls, level: int) -> "Situation":
        """The all-zeros history of a given length."""
        if level < 0:
            raise DomainError(f"level must be >= 0, got {level}")
        return _unchecked((0,) * level)

    @property
    def depth(self) -> int:
        return len(self.bits)

    def __len__(self) -> int:
        return len(self.bits)

    def __iter__(self) -> Iterator[int]:
        return iter(self.bits)

    def __str__(self) -> str:
        return "".join("01"[b] for b in self.bits) if self.bits else "(root)"

    def to_string(self) -> str:
        return "".join("01"[b] for b in self.bits)

    def child(self, outcome: int) -> "Situation":
        if outcome not in (0, 1):
            raise DomainError(f"outcome must be 0 or 1, got {outcome!r}")
        return _unchecked(self.bits + (outcome,))

    def prefix(self, n: int) -> "Situation":
        if not 0 <= n <= len(self.bits):
            raise DomainError(f"prefix length {n} outside [0, {len(self.bits)}]")
        return _unchecked(self.bits[:n])

    def last(self) -> int | None:
        return self.bits[-1] if self.bits else None

    def iter_prefixes(self) -> Iterator["Situation"]:
        """All situations along this history, root first, self last."""
        for n in range(len(self.bits) + 1):
            yield _unchecked(self.bits[:n])


# PathPrefix is the same value in its observational role: omega_{1:n}.
PathPrefix = Situation

_BIT_OF = {"0": 0, "1": 1}
_VALID_BITS = frozenset((0, 1))


def _unchecked(bits: tuple[int, ...]) -> Situation:
    """Wrap an already-validated bit tuple without re-checking it."""
    s = object.__new__(Situation)
    object.__setattr__(s, "bits", bits)
    return s


def situations_at_level(level: int) -> Iterator[Situation]:
    """All 2^level situations of a given length, lexicographically."""
    if level < 0:
        raise DomainError(f"level must be >= 0, got {level}")
    for index in range(1 << level):
        yield _unchecked(tuple((index >> (level - 1 - k)) & 1 for k in range(level)))


def situations_to_depth(depth: int) -> Iterator[Situation]:
    """All situations with |s| < depth, by level then lexicographically."""
    for level in range(depth):
        yield from situations_at_level(level)


def read_path_file(path) -> PathPrefix:
    """Read a path prefix from an ASCII file of '0'/'1' characters.

    Whitespace (including newlines) is ignored; any other character is a
    format error.
    """
    with open(path, "r", encoding="ascii") as fh:
        text = fh.read()
    bits = []
    for ch in text:
        if ch in "01":
            bits.append(_BIT_OF[ch])
        elif not ch.isspace():
            raise SpecFormatError(f"path file {path}: invalid character {ch!r}")
    return Situation(tuple(bits))


def write_path_file(path, prefix: PathPrefix, line_width: int = 64) -> None:
    """Write a path prefix as ASCII '0'/'1', 64 characters per line."""
    if line_width < 1:
        raise DomainError(f"line width must be >= 1, got {line_width}")
    text = prefix.to_string()
    with open(path, "w", encoding="ascii") as fh:
        for start in range(0, len(text), line_width):
            fh.write(text[start : start + line_width])
            fh.write("\n")
