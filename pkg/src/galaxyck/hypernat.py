"""Exact arithmetic over a two-tier number line: finite and huge naturals.

A value is ``c*w + k`` where ``w`` is a symbolic anchor sitting above every
ordinary natural.  ``c == 0`` gives the finite tier (``k >= 0``); ``c >= 1``
gives the huge tier, where ``k`` may be negative because a huge value minus
any finite amount is still huge.  The huge tier deliberately has no least
element.  Ordering is lexicographic on ``(c, k)``, hence total and decidable,
and all arithmetic is exact over Python's big integers.

Multiplication is only by nonnegative integer scalars; nothing in this
library ever needs the product of two huge values.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import total_ordering
from typing import Optional, Union

__all__ = ["HyperNat", "finite", "huge", "parse_hypernat", "gap"]

_GRAMMAR = re.compile(
    r"""^\s*(?:
        (?P<fin>\d+)
        |
        (?:(?P<coeff>\d+)\s*\*\s*)?w\s*(?:(?P<sign>[+-])\s*(?P<off>\d+))?
    )\s*$""",
    re.VERBOSE,
)


def _coerce(value: Union["HyperNat", int]) -> Optional["HyperNat"]:
    if isinstance(value, HyperNat):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return finite(value)
    return None


@total_ordering
@dataclass(frozen=True, eq=False)
class HyperNat:
    """A natural number that is either finite or huge.

    ``omega_coeff`` counts multiples of the anchor, ``offset`` is the finite
    displacement.  Instances are immutable and hashable.  Plain nonnegative
    ints mix freely on either side of arithmetic and comparisons and are
    treated as finite values.
    """

    omega_coeff: int
    offset: int

    def __post_init__(self) -> None:
        if not isinstance(self.omega_coeff, int) or not isinstance(self.offset, int):
            raise TypeError("HyperNat components must be plain ints")
        if self.omega_coeff < 0:
            raise ValueError("anchor coefficient must be nonnegative")
        if self.omega_coeff == 0 and self.offset < 0:
            raise ValueError("finite values must be nonnegative")

    @property
    def is_finite(self) -> bool:
        return self.omega_coeff == 0

    @property
    def is_huge(self) -> bool:
        return self.omega_coeff > 0

    def _key(self) -> tuple:
        return (self.omega_coeff, self.offset)

    def compare(self, other: Union["HyperNat", int]) -> int:
        """Three-way comparison: -1, 0 or 1."""
        o = _coerce(other)
        if o is None:
            raise TypeError(f"cannot compare HyperNat with {type(other).__name__}")
        if self._key() == o._key():
            return 0
        return -1 if self._key() < o._key() else 1

    def __eq__(self, other: object) -> bool:
        o = _coerce(other)  # type: ignore[arg-type]
        if o is None:
            return NotImplemented
        return self._key() == o._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __lt__(self, other: Union["HyperNat", int]) -> bool:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self._key() < o._key()

    def __add__(self, other: Union["HyperNat", int]) -> "HyperNat":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return HyperNat(self.omega_coeff + o.omega_coeff, self.offset + o.offset)

    __radd__ = __add__

    def __sub__(self, other: Union["HyperNat", int]) -> "HyperNat":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        coeff = self.omega_coeff - o.omega_coeff
        off = self.offset - o.offset
        if coeff < 0 or (coeff == 0 and off < 0):
            raise ValueError(f"subtraction underflow: {self} - {o}")
        return HyperNat(coeff, off)

    def __mul__(self, other: int) -> "HyperNat":
        if not isinstance(other, int) or isinstance(other, bool):
            return NotImplemented
        if other < 0:
            raise ValueError("scale factor must be nonnegative")
        return HyperNat(self.omega_coeff * other, self.offset * other)

    __rmul__ = __mul__

    def __int__(self) -> int:
        if self.is_huge:
            raise ValueError(f"{self} is huge and has no integer value")
        return self.offset

    def __str__(self) -> str:
        if self.is_finite:
            return str(self.offset)
        head = "w" if self.omega_coeff == 1 else f"{self.omega_coeff}*w"
        return f"{head}{self.offset:+d}"

    def __repr__(self) -> str:
        return f"HyperNat({str(self)!r})"


def finite(k: int) -> HyperNat:
    """The ordinary natural ``k``."""
    if k < 0:
        raise ValueError("finite naturals are nonnegative")
    return HyperNat(0, k)


def huge(coeff: int, offset: int = 0) -> HyperNat:
    """The huge value ``coeff*w + offset``; ``coeff`` must be positive."""
    if coeff < 1:
        raise ValueError("huge values need a positive anchor coefficient")
    return HyperNat(coeff, offset)


def parse_hypernat(text: str) -> HyperNat:
    """Parse ``k``, ``w+k``, ``w-k``, ``c*w+k`` or ``c*w-k`` (bare ``w`` allowed)."""
    if not isinstance(text, str):
        raise TypeError("expected a string")
    m = _GRAMMAR.match(text)
    if m is None:
        raise ValueError(f"cannot parse {text!r} as a hyper-natural (try 7, w+0, w-5 or 2*w+0)")
    if m.group("fin") is not None:
        return finite(int(m.group("fin")))
    coeff = int(m.group("coeff")) if m.group("coeff") else 1
    off = int(m.group("off")) if m.group("off") else 0
    if m.group("sign") == "-":
        off = -off
    return huge(coeff, off)


def gap(x: Union[HyperNat, int], y: Union[HyperNat, int]) -> HyperNat:
    """Absolute difference, the standard chain distance."""
    a, b = _coerce(x), _coerce(y)
    if a is None or b is None:
        raise TypeError("gap expects HyperNat or int endpoints")
    return a - b if a >= b else b - a
