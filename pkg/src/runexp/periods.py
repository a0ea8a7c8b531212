"""Period and cyclic-rotation primitives.

Pure functions on immutable words; lexicographic order is the byte
order of the ASCII encoding.
"""

from __future__ import annotations

from dataclasses import dataclass

from .words import Word

__all__ = [
    "RotationExtremes",
    "border_table",
    "shortest_period",
    "rotation_extremes",
]

# translate() table flipping byte order, used to get maximal rotations
# out of a least-rotation routine
_FLIP = bytes(255 - b for b in range(256))


def _prefix_function(data: bytes) -> list[int]:
    # entry k = longest proper border of data[:k+1]
    n = len(data)
    table = [0] * n
    k = 0
    for q in range(1, n):
        c = data[q]
        while k > 0 and data[k] != c:
            k = table[k - 1]
        if data[k] == c:
            k += 1
        table[q] = k
    return table


def _least_rotation(data: bytes) -> int:
    """Offset of the lexicographically least rotation (Booth's algorithm)."""
    n = len(data)
    doubled = data + data
    fail = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        c = doubled[j]
        i = fail[j - k - 1]
        while i != -1 and c != doubled[k + i + 1]:
            if c < doubled[k + i + 1]:
                k = j - i - 1
            i = fail[i]
        if c != doubled[k + i + 1]:
            if c < doubled[k]:
                k = j
            fail[j - k] = -1
        else:
            fail[j - k] = i + 1
    return k


def _extreme_offsets(data: bytes) -> tuple[int, int]:
    """0-based offsets of the minimal and maximal rotations of ``data``.

    Ties (possible only for non-primitive inputs, whose rotations repeat
    with the length of the primitive root) resolve to the smallest offset.
    """
    lo = _least_rotation(data)
    hi = _least_rotation(data.translate(_FLIP))
    p = len(data) - _prefix_function(data)[-1]
    if len(data) % p == 0:
        lo %= p
        hi %= p
    return lo, hi


@dataclass(frozen=True)
class RotationExtremes:
    """Lexicographically minimal and maximal rotations of a word."""

    minimal: Word
    maximal: Word
    min_offset: int
    max_offset: int


def border_table(w: Word) -> list[int]:
    """Longest proper border of every prefix; entry ``i`` covers ``w[1..i+1]``.

    >>> border_table(Word("aaaa", {"a"}))
    [0, 1, 2, 3]
    """
    if len(w) == 0:
        raise ValueError("border table of the empty word is undefined")
    return _prefix_function(w.data)


def shortest_period(w: Word) -> int:
    """The smallest ``p`` with ``w[i] == w[i+p]`` for all valid ``i``."""
    if len(w) == 0:
        raise ValueError("the empty word has no period")
    return len(w) - _prefix_function(w.data)[-1]


def rotation_extremes(w: Word) -> RotationExtremes:
    """Minimal and maximal rotations of ``w``, computed in linear time."""
    if len(w) == 0:
        raise ValueError("the empty word has no rotations")
    lo, hi = _extreme_offsets(w.data)
    data = w.data
    return RotationExtremes(
        minimal=Word(data[lo:] + data[:lo], w.alphabet),
        maximal=Word(data[hi:] + data[:hi], w.alphabet),
        min_offset=lo,
        max_offset=hi,
    )
