"""Matroids from hypergraphs with empty triple intersections.

Given subsets H_1..H_k of a ground set with any three of them meeting emptily
and a level n >= 2, the circuits are

* type 1: (n-1)-subsets of a pairwise intersection H_i & H_j,
* type 2: n-subsets of some H_i containing no type-1 set,
* type 3: (n+1)-subsets containing neither.

Every tame paving matroid arises this way from its hyperplane system, and
every level-n instance of full rank n is a chain of principal extensions over
rank-(n-2) flats of a tame paving core; this module implements the
construction, the reduction to that core, and its replay.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Callable, Iterable, Optional

from .bitset import as_mask, bits_tuple, sort_key
from .core import CIRCUIT_BUDGET, Matroid
from .errors import (
    LevelTooSmall,
    NotAFlat,
    OutOfRange,
    RankDeficient,
    TooLarge,
    TripleIntersection,
)
from .paving import PavingMatroid, _paving_relaxed, paving_to_matroid

# Principal extensions enumerate explicit bases; keep the ground small.
EXTENSION_GROUND_LIMIT = 20


@dataclass(frozen=True)
class QuasiRep:
    """Hypergraph representation: ground size d, level n, members in canonical
    order (equal members are kept, their multiplicity matters)."""

    d: int
    n: int
    members: tuple[int, ...]

    @property
    def inert_member_indices(self) -> tuple[int, ...]:
        """Members too small to generate any circuit."""
        return tuple(i for i, h in enumerate(self.members) if h.bit_count() < self.n - 1)


def quasi_rep(d: int, n: int, members: Iterable[int | Iterable[int]]) -> QuasiRep:
    """Validated constructor. Levels above the ground size are permitted (the
    construction then has no circuits of the small types)."""
    if n < 2:
        raise LevelTooSmall(f"level must be >= 2, got {n}")
    mem = tuple(sorted((as_mask(h) for h in members), key=sort_key))
    seen = 0
    twice = 0
    for idx, h in enumerate(mem):
        if h >> d:
            raise OutOfRange(f"member {bits_tuple(h)} leaves the ground set [{d}]")
        tri = twice & h
        if tri:
            e = (tri & -tri).bit_length() - 1
            owners = [i for i, m in enumerate(mem) if (m >> e) & 1]
            raise TripleIntersection(owners[0], owners[1], owners[2], e)
        twice |= seen & h
        seen |= h
    return QuasiRep(d, n, mem)


def _qualifying_pairs(members: tuple[int, ...], n: int) -> tuple[int, ...]:
    """Pairwise intersections large enough to hold a type-1 circuit."""
    out = []
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            inter = members[i] & members[j]
            if inter.bit_count() >= n - 1:
                out.append(inter)
    return tuple(out)


def _independence_oracle(members: tuple[int, ...], n: int) -> Callable[[int], bool]:
    pairs = _qualifying_pairs(members, n)
    big = tuple(h for h in members if h.bit_count() >= n)

    def oracle(s: int) -> bool:
        size = s.bit_count()
        if size <= n - 2:
            return True
        if size >= n + 1:
            return False
        if size == n - 1:
            return not any(s & pm == s for pm in pairs)
        for pm in pairs:
            if (s & pm).bit_count() >= n - 1:
                return False
        return not any(s & h == s for h in big)

    return oracle


def small_circuits(rep: QuasiRep) -> frozenset[int]:
    """The circuits of size <= n (types 1 and 2). Together with the level these
    determine the whole dependence predicate, since type 3 is definitionally
    the complement closure; two representations give the same labeled matroid
    exactly when these sets (and d, n) agree."""
    n = rep.n
    pairs = _qualifying_pairs(rep.members, n)
    out: set[int] = set()
    for pm in pairs:
        for combo in combinations(bits_tuple(pm), n - 1):
            m = 0
            for e in combo:
                m |= 1 << e
            out.add(m)
    for h in rep.members:
        if h.bit_count() < n:
            continue
        for combo in combinations(bits_tuple(h), n):
            m = 0
            for e in combo:
                m |= 1 << e
            if not any((m & pm).bit_count() >= n - 1 for pm in pairs):
                out.add(m)
    return frozenset(out)


def type3_count(rep: QuasiRep) -> int:
    """Number of (n+1)-circuits, counted without materializing them all."""
    n = rep.n
    pairs = _qualifying_pairs(rep.members, n)
    big = tuple(h for h in rep.members if h.bit_count() >= n)
    count = 0
    for combo in combinations(range(rep.d), n + 1):
        mask = 0
        for e in combo:
            mask |= 1 << e
        if any((mask & pm).bit_count() >= n - 1 for pm in pairs):
            continue
        if any((mask & h).bit_count() >= n for h in big):
            continue
        count += 1
    return count


def quasi_matroid(rep: QuasiRep, *, budget: int = CIRCUIT_BUDGET) -> Matroid:
    """The matroid of the three-type construction, in oracle mode with lazy
    circuit materialization under the budget."""
    n = rep.n
    oracle = _independence_oracle(rep.members, n)

    def materialize() -> tuple[int, ...]:
        pairs = _qualifying_pairs(rep.members, n)
        estimate = (
            sum(comb(pm.bit_count(), n - 1) for pm in pairs)
            + sum(comb(h.bit_count(), n) for h in rep.members)
            + comb(rep.d, n + 1)
        )
        if estimate > budget:
            raise TooLarge("circuit materialization", f"about {estimate} candidates")
        small = sorted(small_circuits(rep), key=sort_key)
        big_members = tuple(h for h in rep.members if h.bit_count() >= n)
        big = []
        for combo in combinations(range(rep.d), n + 1):
            mask = 0
            for e in combo:
                mask |= 1 << e
            if any((mask & pm).bit_count() >= n - 1 for pm in pairs):
                continue
            if any((mask & h).bit_count() >= n for h in big_members):
                continue
            big.append(mask)
        return tuple(small + big)

    m = Matroid(rep.d, 0, oracle=oracle, circuit_fn=materialize, origin="quasi-rep")
    m.rank_value = m.rank()
    return m


def quasi_deletion(rep: QuasiRep, z: int | Iterable[int]) -> tuple[QuasiRep, tuple[int, ...]]:
    """Delete z from the ground set: each member just loses those elements.
    Returns the re-indexed representation plus kept[new_index] = old_index."""
    z = as_mask(z)
    if z >> rep.d:
        raise OutOfRange(f"subset leaves the ground set [{rep.d}]")
    kept = tuple(e for e in range(rep.d) if not (z >> e) & 1)
    pos = {old: new for new, old in enumerate(kept)}

    def compress(mask: int) -> int:
        out = 0
        m = mask
        while m:
            low = m & -m
            m ^= low
            out |= 1 << pos[low.bit_length() - 1]
        return out

    new_members = tuple(sorted((compress(h & ~z) for h in rep.members), key=sort_key))
    return QuasiRep(len(kept), rep.n, new_members), kept


def pairwise_intersection_flats(rep: QuasiRep) -> list[tuple[int, int, int]]:
    """(i, j, intersection) for every nonempty pairwise intersection of size at
    least n-2; each such set is a flat of the matroid, uniform of rank n-2."""
    n = rep.n
    threshold = max(n - 2, 1)
    out = []
    for i in range(len(rep.members)):
        for j in range(i + 1, len(rep.members)):
            inter = rep.members[i] & rep.members[j]
            if inter.bit_count() >= threshold:
                out.append((i, j, inter))
    return out


def principal_extension(m: Matroid, flat: int | Iterable[int]) -> Matroid:
    """Add a new element (index d) freely inside the given flat: the bases are
    those of m plus every (basis - b) + new for b ranging over basis & flat."""
    flat = as_mask(flat)
    if m.closure(flat) != flat:
        raise NotAFlat(flat)
    if m.d + 1 > EXTENSION_GROUND_LIMIT:
        raise TooLarge("principal extension ground", f"d={m.d + 1} > {EXTENSION_GROUND_LIMIT}")
    bases = m.bases()
    new_bit = 1 << m.d
    out = set(bases)
    for lam in bases:
        inter = lam & flat
        while inter:
            low = inter & -inter
            inter ^= low
            out.add((lam ^ low) | new_bit)
    return Matroid(
        m.d + 1,
        m.rank_value,
        bases=tuple(sorted(out, key=sort_key)),
        origin="extension",
    )


@dataclass(frozen=True)
class ExtensionStep:
    """One deleted element, the flat it extends (a mask in original labels,
    the closure of the pairwise intersection minus the element), and the pair
    of member indices whose intersection contained it."""

    element: int
    flat: int
    source_pair: tuple[int, int]


@dataclass(frozen=True)
class TameDecomposition:
    core: PavingMatroid
    core_elements: tuple[int, ...]
    steps: tuple[ExtensionStep, ...]


def decompose_to_tame(
    rep: QuasiRep,
    *,
    pick: Optional[Callable[[tuple[int, ...]], int]] = None,
) -> TameDecomposition:
    """Peel elements out of oversized pairwise intersections until the residual
    hypergraph is a tame paving system; each peel records a principal-extension
    step whose replay rebuilds the original matroid.

    Requires the matroid to have full rank n. An element inside a qualifying
    intersection lies in exactly that pair of members, so the recorded pair is
    unambiguous. By default the largest eligible element is peeled first; the
    surviving core is the same for any order, so pick only affects labels of
    the recorded steps.
    """
    n = rep.n
    if quasi_matroid(rep).rank_value != n:
        raise RankDeficient(f"construction at level {n} does not have rank {n}")
    members = list(rep.members)
    steps: list[ExtensionStep] = []
    while True:
        eligible: dict[int, tuple[int, int]] = {}
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                inter = members[i] & members[j]
                if inter.bit_count() >= n - 1:
                    m = inter
                    while m:
                        low = m & -m
                        m ^= low
                        eligible[low.bit_length() - 1] = (i, j)
        if not eligible:
            break
        candidates = tuple(sorted(eligible))
        a = max(candidates) if pick is None else pick(candidates)
        i, j = eligible[a]
        bit = 1 << a
        raw_flat = (members[i] & members[j]) ^ bit
        members = [h & ~bit for h in members]
        # The raw set is already a flat when n >= 3; taking the closure also
        # covers level 2, where rank-0 flats must absorb every loop.
        oracle = _independence_oracle(tuple(members), n)
        helper = Matroid(rep.d, 0, oracle=oracle, origin="quasi-rep")
        flat = helper.closure(raw_flat)
        steps.append(ExtensionStep(a, flat, (i, j)))
    deleted = 0
    for s in steps:
        deleted |= 1 << s.element
    alive = ((1 << rep.d) - 1) ^ deleted
    elements = bits_tuple(alive)
    pos = {old: new for new, old in enumerate(elements)}

    def compress(mask: int) -> int:
        out = 0
        m = mask
        while m:
            low = m & -m
            m ^= low
            out |= 1 << pos[low.bit_length() - 1]
        return out

    hyps = tuple(compress(h) for h in members if h.bit_count() >= n)
    core = _paving_relaxed(len(elements), n, hyps)
    return TameDecomposition(core, elements, tuple(steps))


def replay_extensions(dec: TameDecomposition, d: int) -> Matroid:
    """Rebuild the represented matroid on the original ground set [d] by
    re-adding the peeled elements in reverse order via principal extensions."""
    base = paving_to_matroid(dec.core)
    current = Matroid(base.d, base.rank_value, bases=base.bases(), origin="extension")
    labels = list(dec.core_elements)
    for step in reversed(dec.steps):
        pos = {old: new for new, old in enumerate(labels)}
        local_flat = 0
        m = step.flat
        while m:
            low = m & -m
            m ^= low
            local_flat |= 1 << pos[low.bit_length() - 1]
        current = principal_extension(current, local_flat)
        labels.append(step.element)
    if len(labels) != d:
        raise OutOfRange("replay did not restore the full ground set")
    return current.relabel(tuple(labels))
