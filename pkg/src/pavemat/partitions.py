"""Set partitions as restricted growth strings (RGS).

A code a[0..m-1] with a[0] = 0 and a[i] <= 1 + max(a[:i]) names the partition
whose blocks are the level sets of a; codes are enumerated in lexicographic
order, from the one-block partition to the discrete one.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence


def iter_rgs(m: int) -> Iterator[list[int]]:
    """All restricted growth strings of length m, lex order.

    The yielded list is a reused buffer; copy it if you keep it.
    """
    a = [0] * m
    if m <= 1:
        yield a
        return
    b = [1] * m
    while True:
        yield a
        j = m - 1
        while j > 0 and a[j] == b[j]:
            j -= 1
        if j == 0:
            return
        a[j] += 1
        nb = b[j] + 1 if a[j] == b[j] else b[j]
        for t in range(j + 1, m):
            a[t] = 0
            b[t] = nb


def rgs_to_blocks(code: Sequence[int]) -> list[list[int]]:
    blocks: list[list[int]] = []
    for i, c in enumerate(code):
        if c == len(blocks):
            blocks.append([])
        blocks[c].append(i)
    return blocks


def blocks_to_rgs(m: int, blocks: Iterable[Iterable[int]]) -> tuple[int, ...]:
    """Canonical RGS of a partition given as blocks; validates disjoint cover."""
    owner = [-1] * m
    for bid, block in enumerate(blocks):
        empty = True
        for e in block:
            empty = False
            if e < 0 or e >= m:
                raise ValueError(f"item {e} outside range({m})")
            if owner[e] != -1:
                raise ValueError(f"item {e} appears in two blocks")
            owner[e] = bid
        if empty:
            raise ValueError("empty block")
    if any(o == -1 for o in owner):
        raise ValueError("blocks do not cover all items")
    relabel: dict[int, int] = {}
    code = []
    for e in range(m):
        bid = owner[e]
        if bid not in relabel:
            relabel[bid] = len(relabel)
        code.append(relabel[bid])
    return tuple(code)


def iter_set_partitions(m: int) -> Iterator[list[list[int]]]:
    """All partitions of range(m) as block lists, RGS-lex order."""
    for code in iter_rgs(m):
        yield rgs_to_blocks(code)


def bell_number(m: int) -> int:
    row = [1]
    for _ in range(m):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]
