"""Concrete families: the k x l grid matroids, the n-line arrangement matroids,
and the determinantal hypergraph they specialize.

Grid cells are numbered column-major: cell(i, j) = j*k + i internally
(0-based), matching the usual 1-based matrix numbering (j-1)*k + i externally.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .bitset import canonical_masks, sort_key
from .core import CIRCUIT_BUDGET, Matroid
from .errors import BadParams, DegenerateGround, HypothesisViolated, TooFewLines
from .paving import PavingMatroid, paving_from_hyperplanes


@dataclass(frozen=True)
class GridLayout:
    """Index bookkeeping for a k x l grid of cells."""

    k: int
    l: int

    def cell(self, i: int, j: int) -> int:
        return j * self.k + i

    def row_mask(self, i: int) -> int:
        m = 0
        for j in range(self.l):
            m |= 1 << self.cell(i, j)
        return m

    def col_mask(self, j: int) -> int:
        m = 0
        for i in range(self.k):
            m |= 1 << self.cell(i, j)
        return m

    def row_masks(self) -> tuple[int, ...]:
        return tuple(self.row_mask(i) for i in range(self.k))

    def col_masks(self) -> tuple[int, ...]:
        return tuple(self.col_mask(j) for j in range(self.l))


def ci_hypergraph(k: int, l: int, s: int, t: int) -> tuple[int, ...]:
    """All t-subsets of each row and s-subsets of each column, deduplicated and
    in canonical order."""
    if not (1 <= s <= k) or not (1 <= t <= l):
        raise BadParams(f"need 1 <= s <= k and 1 <= t <= l, got s={s}, k={k}, t={t}, l={l}")
    grid = GridLayout(k, l)
    out: set[int] = set()
    for i in range(k):
        for combo in combinations(range(l), t):
            m = 0
            for j in combo:
                m |= 1 << grid.cell(i, j)
            out.add(m)
    for j in range(l):
        for combo in combinations(range(k), s):
            m = 0
            for i in combo:
                m |= 1 << grid.cell(i, j)
            out.add(m)
    return canonical_masks(out)


def ci_matroid(k: int, l: int, s: int, t: int, n: int) -> Matroid:
    """Matroid whose circuits are the inclusion-minimal members of the
    hypergraph together with all (n+1)-subsets; realizable within the stated
    parameter window."""
    for name, ok in (
        ("3 <= s", 3 <= s),
        ("s <= t", s <= t),
        ("t <= l", t <= l),
        ("s <= k", s <= k),
        ("t <= n", t <= n),
        ("n <= s+t-3", n <= s + t - 3),
    ):
        if not ok:
            raise HypothesisViolated(name)
    edges = ci_hypergraph(k, l, s, t)
    minimal = tuple(
        e for e in edges if not any(o != e and o & e == o for o in edges)
    )
    buckets: dict[int, set[int]] = {}
    for e in minimal:
        buckets.setdefault(e.bit_count(), set()).add(e)
    by_size = {size: frozenset(masks) for size, masks in buckets.items()}
    sizes = sorted(by_size)

    def contains_edge(mask: int) -> bool:
        size = mask.bit_count()
        for b in sizes:
            if b > size:
                return False
            members = by_size[b]
            if comb(size, b) <= len(members):
                elems = []
                m = mask
                while m:
                    low = m & -m
                    m ^= low
                    elems.append(low.bit_length() - 1)
                for combo in combinations(elems, b):
                    sub = 0
                    for e in combo:
                        sub |= 1 << e
                    if sub in members:
                        return True
            else:
                if any(e & mask == e for e in members):
                    return True
        return False

    d = k * l

    def oracle(mask: int) -> bool:
        if mask.bit_count() >= n + 1:
            return False
        return not contains_edge(mask)

    def materialize() -> tuple[int, ...]:
        if comb(d, n + 1) > CIRCUIT_BUDGET:
            raise BadParams(f"too many circuits to materialize for d={d}, n={n}")
        big = []
        for combo in combinations(range(d), n + 1):
            mask = 0
            for e in combo:
                mask |= 1 << e
            if not contains_edge(mask):
                big.append(mask)
        return tuple(sorted(minimal, key=sort_key) + sorted(big, key=sort_key))

    m = Matroid(d, 0, oracle=oracle, circuit_fn=materialize, origin="explicit")
    m.rank_value = m.rank()
    return m


def grid_matroid(k: int, l: int) -> PavingMatroid:
    """Rank-3 paving matroid on the k x l grid whose hyperplanes are the rows
    and columns with at least 3 cells. Tame by construction: a cell lies in
    one row and one column only."""
    if k < 1 or l < 1:
        raise BadParams(f"grid needs k, l >= 1, got {k}, {l}")
    if k * l < 4:
        raise DegenerateGround(
            f"{k}x{l} grid has only {k * l} cells; rank-3 structure needs at least 4"
        )
    grid = GridLayout(k, l)
    hyps = []
    if l >= 3:
        hyps.extend(grid.row_masks())
    if k >= 3:
        hyps.extend(grid.col_masks())
    return paving_from_hyperplanes(k * l, 3, hyps)


@dataclass(frozen=True)
class LineArrangement:
    """n lines in general position with their pairwise meeting points; the
    points are the unordered index pairs, ranked lexicographically."""

    n: int

    def point_index(self, i: int, j: int) -> int:
        if i > j:
            i, j = j, i
        if i == j or j >= self.n:
            raise BadParams(f"need two distinct line indices below {self.n}")
        # points (0,1), (0,2), ..., (0,n-1), (1,2), ... in lex order
        return i * self.n - i * (i + 1) // 2 + (j - i - 1)

    def point_pair(self, idx: int) -> tuple[int, int]:
        for i in range(self.n):
            row = self.n - 1 - i
            if idx < row:
                return (i, i + 1 + idx)
            idx -= row
        raise BadParams("point index out of range")

    def line_mask(self, i: int) -> int:
        m = 0
        for j in range(self.n):
            if j != i:
                m |= 1 << self.point_index(i, j)
        return m

    def line_masks(self) -> tuple[int, ...]:
        return tuple(self.line_mask(i) for i in range(self.n))

    @property
    def point_count(self) -> int:
        return self.n * (self.n - 1) // 2


def line_matroid(n: int) -> PavingMatroid:
    """Rank-3 paving matroid of n general-position lines on their C(n,2)
    meeting points; every point lies on exactly two lines."""
    if n < 4:
        raise TooFewLines(f"need at least 4 lines, got {n}")
    arr = LineArrangement(n)
    return paving_from_hyperplanes(arr.point_count, 3, arr.line_masks())


@dataclass(frozen=True)
class MinorGenerator:
    """Row set A and column set B (0-based) of one determinantal generator."""

    rows: tuple[int, ...]
    cols: tuple[int, ...]


def ci_ideal_generators(k: int, l: int, s: int, t: int, n: int) -> list[MinorGenerator]:
    """All (A, B) index pairs with B ranging over the hypergraph and A over the
    equal-sized subsets of [n]."""
    if n < max(s, t):
        raise BadParams(f"need n >= max(s, t) to form square minors, got n={n}")
    edges = ci_hypergraph(k, l, s, t)
    out: list[MinorGenerator] = []
    for b in edges:
        cols = []
        m = b
        while m:
            low = m & -m
            m ^= low
            cols.append(low.bit_length() - 1)
        for rows in combinations(range(n), len(cols)):
            out.append(MinorGenerator(tuple(rows), tuple(cols)))
    return out
