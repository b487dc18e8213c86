"""Subsets of a ground set {0..d-1} as plain int bitmasks.

Python ints are arbitrary width, so the same fast path covers any ground
size; popcounts use ``int.bit_count``.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator


def mask_of(elems: Iterable[int]) -> int:
    m = 0
    for e in elems:
        m |= 1 << e
    return m


def as_mask(s: int | Iterable[int]) -> int:
    return s if isinstance(s, int) else mask_of(s)


def bits(mask: int) -> Iterator[int]:
    """Set bit positions, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_tuple(mask: int) -> tuple[int, ...]:
    return tuple(bits(mask))


def sort_key(mask: int) -> tuple[int, tuple[int, ...]]:
    """Canonical (size, lexicographic-member) ordering key."""
    return (mask.bit_count(), bits_tuple(mask))


def canonical_masks(masks: Iterable[int]) -> tuple[int, ...]:
    """Deduplicate and sort into canonical order."""
    return tuple(sorted(set(masks), key=sort_key))


def subsets_of_size(mask: int, r: int) -> Iterator[int]:
    for combo in combinations(bits_tuple(mask), r):
        m = 0
        for e in combo:
            m |= 1 << e
        yield m
