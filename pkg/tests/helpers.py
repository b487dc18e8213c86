"""Independent oracles and random-structure generators for the tests.

These deliberately avoid the library's own enumeration code paths: set
partitions come from a plain insertion recursion, independence from a direct
subset scan, rank and closure from exhaustive search.
"""

from __future__ import annotations

import random
from itertools import combinations
from typing import Iterator

from pavemat import QuasiRep, quasi_rep
from pavemat.bitset import mask_of
from pavemat.paving import PavingMatroid, paving_from_hyperplanes


def m1(*elems: int) -> int:
    """Mask from 1-based element labels, as printed in worked examples."""
    return mask_of(e - 1 for e in elems)


def set_partitions(items: list) -> Iterator[list[list]]:
    """All partitions of items, by inserting the first item everywhere."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for p in set_partitions(rest):
        for i in range(len(p)):
            yield p[:i] + [[first] + p[i]] + p[i + 1 :]
        yield [[first]] + p


def brute_independent(circuits: tuple[int, ...], s: int) -> bool:
    return not any(c & s == c for c in circuits)


def brute_rank(circuits: tuple[int, ...], s: int) -> int:
    elems = [e for e in range(s.bit_length()) if (s >> e) & 1]
    for size in range(len(elems), -1, -1):
        for combo in combinations(elems, size):
            if brute_independent(circuits, mask_of(combo)):
                return size
    return 0


def brute_closure(circuits: tuple[int, ...], s: int, d: int) -> int:
    r = brute_rank(circuits, s)
    out = s
    for e in range(d):
        if not (s >> e) & 1 and brute_rank(circuits, s | (1 << e)) == r:
            out |= 1 << e
    return out


def random_quasi_rep(rng: random.Random, max_d: int = 12) -> QuasiRep:
    """A valid representation built constructively: each element is dealt into
    at most two member slots, so no triple intersection can appear."""
    d = rng.randint(4, max_d)
    n = rng.randint(2, min(4, d - 1))
    k = rng.randint(1, 4)
    members = [0] * k
    for e in range(d):
        picks = rng.sample(range(k), min(k, rng.choice((0, 1, 1, 2, 2))))
        for i in picks:
            members[i] |= 1 << e
    return quasi_rep(d, n, [m for m in members if m])


def random_full_rank_rep(rng: random.Random, max_d: int = 10) -> QuasiRep:
    from pavemat import quasi_matroid

    while True:
        rep = random_quasi_rep(rng, max_d)
        if rep.n >= 3 and quasi_matroid(rep).rank_value == rep.n:
            return rep


def random_paving(rng: random.Random, max_d: int = 12) -> PavingMatroid:
    """Random rank-3 hyperplane system kept greedily under the pairwise bound."""
    d = rng.randint(5, max_d)
    hyps: list[int] = []
    for _ in range(rng.randint(0, 6)):
        size = rng.randint(3, min(5, d))
        cand = mask_of(rng.sample(range(d), size))
        if all((cand & h).bit_count() <= 1 for h in hyps) and cand not in hyps:
            hyps.append(cand)
    return paving_from_hyperplanes(d, 3, hyps)
