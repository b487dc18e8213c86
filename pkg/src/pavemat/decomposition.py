"""Partitions of the dependent hyperplanes and the matroids they merge into.

Merging each block of a hyperplane partition into one hypergraph member and
applying the three-type construction yields a matroid above the base in the
dependency order. The partitions whose merged matroids appear as components
of the grid and line families admit closed-form tests; a structural
liftability oracle covers the generic case and says so when it cannot decide.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import comb
from typing import Callable, Iterable, Iterator, Optional

from .bitset import sort_key
from .core import Matroid
from .errors import BadParams, EnumerationBudgetExceeded, NotTame, TooFewLines
from .families import GridLayout, LineArrangement, grid_matroid, line_matroid
from .partitions import blocks_to_rgs, iter_rgs, rgs_to_blocks
from .paving import (
    PavingMatroid,
    degree_one_core,
    degrees,
    hyperplane_submatroid,
    is_nilpotent,
    is_tame,
)
from .quasi import QuasiRep, quasi_matroid, small_circuits, type3_count

GRID_ENUM_BUDGET = 14  # max k+l for full component listings
LINE_ENUM_BUDGET = 12  # max n for full component listings


class Liftability(Enum):
    LIFTABLE = "liftable"
    NOT_LIFTABLE = "not-liftable"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class LiftabilityVerdict:
    status: Liftability
    reason: str


def _grid_core_shape(p: PavingMatroid) -> Optional[tuple[int, int]]:
    """(a, b) when p is exactly an a x b grid matroid up to labels: the
    hyperplanes split into two pairwise-disjoint families, cross pairs meet in
    exactly one element, and every element has degree two."""
    hyps = p.hyperplanes
    m = len(hyps)
    if m < 2:
        return None
    if any(deg != 2 for deg in degrees(p).values()):
        return None
    parent = list(range(m))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(m):
        for j in range(i + 1, m):
            if not hyps[i] & hyps[j]:
                parent[find(i)] = find(j)
    comps: dict[int, list[int]] = {}
    for i in range(m):
        comps.setdefault(find(i), []).append(i)
    if len(comps) != 2:
        return None
    side_a, side_b = comps.values()
    for side in (side_a, side_b):
        for x in range(len(side)):
            for y in range(x + 1, len(side)):
                if hyps[side[x]] & hyps[side[y]]:
                    return None
    for i in side_a:
        for j in side_b:
            if (hyps[i] & hyps[j]).bit_count() != 1:
                return None
    return (len(side_a), len(side_b))


def _line_core_shape(p: PavingMatroid) -> Optional[int]:
    """m when p is the m-line arrangement matroid up to labels: every element
    has degree two and any two hyperplanes meet in exactly one element."""
    hyps = p.hyperplanes
    m = len(hyps)
    if m < 4:
        return None
    if any(deg != 2 for deg in degrees(p).values()):
        return None
    for i in range(m):
        for j in range(i + 1, m):
            if (hyps[i] & hyps[j]).bit_count() != 1:
                return None
    return m


def liftability_oracle(p: PavingMatroid) -> LiftabilityVerdict:
    """Liftability by the proven closed-form verdicts only.

    Nilpotent systems are liftable. Otherwise the degree-<=1 reduction core is
    examined: grid cores are liftable exactly for the 3 x 3 shape, line cores
    of at least four lines are not liftable. Degree-1 removals transport the
    verdict both ways; degree-0 removals transport only the liftable
    direction, so a negative core verdict behind one is reported as unknown.
    """
    if is_nilpotent(p):
        return LiftabilityVerdict(Liftability.LIFTABLE, "nilpotent")
    red = degree_one_core(p)
    if red.core is None:
        return LiftabilityVerdict(Liftability.LIFTABLE, "degree-one-collapse")
    if red.core.n != 3:
        # the grid and line verdicts are rank-3 facts
        return LiftabilityVerdict(Liftability.UNKNOWN, "none")
    shape = _grid_core_shape(red.core)
    if shape is not None:
        a, b = shape
        if a == 3 and b == 3:
            return LiftabilityVerdict(Liftability.LIFTABLE, "grid-core(3,3)")
        if min(a, b) >= 3:
            if red.removed_degree0:
                return LiftabilityVerdict(Liftability.UNKNOWN, "none")
            return LiftabilityVerdict(Liftability.NOT_LIFTABLE, f"grid-core({a},{b})")
        return LiftabilityVerdict(Liftability.UNKNOWN, "none")
    lines = _line_core_shape(red.core)
    if lines is not None:
        if red.removed_degree0:
            return LiftabilityVerdict(Liftability.UNKNOWN, "none")
        return LiftabilityVerdict(Liftability.NOT_LIFTABLE, f"line-core({lines})")
    return LiftabilityVerdict(Liftability.UNKNOWN, "none")


@dataclass(frozen=True)
class HyperplanePartition:
    """A partition of hyperplane indices 0..size-1 in canonical RGS encoding."""

    size: int
    rgs: tuple[int, ...]

    @staticmethod
    def from_blocks(size: int, blocks: Iterable[Iterable[int]]) -> "HyperplanePartition":
        return HyperplanePartition(size, blocks_to_rgs(size, blocks))

    def blocks(self) -> list[list[int]]:
        return rgs_to_blocks(self.rgs)


def merged_rep(p: PavingMatroid, partition: HyperplanePartition) -> QuasiRep:
    """Hypergraph whose members are the unions of the hyperplanes in each
    block; tameness of p makes it automatically valid (no element can reach
    three members)."""
    if not is_tame(p):
        raise NotTame("merged matroids are defined for tame bases only")
    if partition.size != len(p.hyperplanes):
        raise BadParams("partition size does not match the hyperplane count")
    members = []
    for block in partition.blocks():
        union = 0
        for i in block:
            union |= p.hyperplanes[i]
        members.append(union)
    return QuasiRep(p.d, p.n, tuple(sorted(members, key=sort_key)))


def merged_matroid(p: PavingMatroid, partition: HyperplanePartition) -> Matroid:
    return quasi_matroid(merged_rep(p, partition))


def is_grid_component_partition(k: int, l: int, blocks: Iterable[Iterable[int]]) -> bool:
    """Closed-form test over the k+l grid hyperplanes (rows 0..k-1, then
    columns k..k+l-1): every block of size >= 2 needs at least 3 rows, at
    least 3 columns and a side of at least 4; and unless the partition is
    trivial, no block may swallow all rows or all columns."""
    blocks = [list(b) for b in blocks]
    many = len(blocks) > 1
    for block in blocks:
        if len(block) < 2:
            continue
        r = sum(1 for h in block if h < k)
        c = len(block) - r
        if r < 3 or c < 3 or max(r, c) < 4:
            return False
        if many and (r == k or c == l):
            return False
    return True


def is_line_component_partition(n: int, blocks: Iterable[Iterable[int]]) -> bool:
    """Closed-form test over the n line hyperplanes: no block may have size 2,
    3, or n-1."""
    return all(len(list(b)) not in (2, 3, n - 1) for b in blocks)


def is_component_partition(
    p: PavingMatroid, partition: HyperplanePartition
) -> Optional[bool]:
    """Generic test: no outside hyperplane may fall inside a block's union, and
    every block of two or more hyperplanes must be non-liftable. None when the
    liftability oracle cannot decide some block."""
    if not is_tame(p):
        raise NotTame("component partitions are defined for tame bases only")
    blocks = partition.blocks()
    for block in blocks:
        union = 0
        for i in block:
            union |= p.hyperplanes[i]
        in_block = set(block)
        for idx, l in enumerate(p.hyperplanes):
            if idx not in in_block and l & union == l:
                return False
    unknown = False
    for block in blocks:
        if len(block) < 2:
            continue
        sub, _ = hyperplane_submatroid(p, block)
        verdict = liftability_oracle(sub)
        if verdict.status is Liftability.LIFTABLE:
            return False
        if verdict.status is Liftability.UNKNOWN:
            unknown = True
    return None if unknown else True


@dataclass(frozen=True)
class Classification:
    """How a component compares to known shapes: uniform(r, d), equal to the
    base matroid, or other (with its circuit-size histogram when computed)."""

    kind: str
    uniform_params: Optional[tuple[int, int]] = None
    histogram: Optional[dict[int, int]] = None


@dataclass(frozen=True)
class ComponentReport:
    partition: HyperplanePartition
    block_masks: tuple[tuple[int, ...], ...]
    matroid: Matroid
    classification: Classification
    signature: frozenset[int]


@dataclass(frozen=True)
class DecompositionResult:
    family: str
    params: dict
    hyperplane_labels: tuple[str, ...]
    hyperplane_masks: tuple[int, ...]
    components: tuple[ComponentReport, ...]


def _uniform_from_signature(d: int, rank: int, level: int, sig: frozenset[int]) -> Optional[tuple[int, int]]:
    if rank == level:
        return (rank, d) if not sig else None
    if all(c.bit_count() == rank + 1 for c in sig) and len(sig) == comb(d, rank + 1):
        return (rank, d)
    return None


def _classify(
    rep: QuasiRep,
    matroid: Matroid,
    sig: frozenset[int],
    base_sig: frozenset[int],
    with_histogram: bool,
) -> Classification:
    uni = _uniform_from_signature(matroid.d, matroid.rank_value, rep.n, sig)
    if uni is not None:
        return Classification("uniform", uniform_params=uni)
    if sig == base_sig:
        return Classification("equals-base")
    hist = None
    if with_histogram:
        hist = {}
        for c in sig:
            hist[c.bit_count()] = hist.get(c.bit_count(), 0) + 1
        hist[rep.n + 1] = type3_count(rep)
    return Classification("other", histogram=hist)


def _decompose(
    family: str,
    params: dict,
    labels: tuple[str, ...],
    hyp_masks: tuple[int, ...],
    d: int,
    level: int,
    keep: Callable[[list[list[int]]], bool],
    classify: bool,
) -> DecompositionResult:
    base_sig = small_circuits(QuasiRep(d, level, tuple(sorted(hyp_masks, key=sort_key))))
    m = len(hyp_masks)
    reports: list[ComponentReport] = []
    seen_signatures: set[frozenset[int]] = set()
    for code in iter_rgs(m):
        blocks = rgs_to_blocks(code)
        if not keep(blocks):
            continue
        block_masks = tuple(tuple(hyp_masks[i] for i in block) for block in blocks)
        members = []
        for bm in block_masks:
            union = 0
            for mask in bm:
                union |= mask
            members.append(union)
        rep = QuasiRep(d, level, tuple(sorted(members, key=sort_key)))
        matroid = quasi_matroid(rep)
        sig = small_circuits(rep)
        assert sig not in seen_signatures, "distinct partitions merged to the same matroid"
        seen_signatures.add(sig)
        reports.append(
            ComponentReport(
                partition=HyperplanePartition(m, tuple(code)),
                block_masks=block_masks,
                matroid=matroid,
                classification=_classify(rep, matroid, sig, base_sig, classify),
                signature=sig,
            )
        )
    return DecompositionResult(family, params, labels, hyp_masks, tuple(reports))


def decompose_grid(
    k: int, l: int, *, budget: int = GRID_ENUM_BUDGET, classify: bool = True
) -> DecompositionResult:
    """Components of the k x l grid: one merged matroid per partition passing
    the closed-form test, in RGS-lex order."""
    if k < 3 or l < 3:
        raise BadParams(f"grid decomposition needs k, l >= 3, got {k}, {l}")
    if k + l > budget:
        raise EnumerationBudgetExceeded("grid hyperplane count", k + l, budget)
    grid_matroid(k, l)  # validates the base exists
    layout = GridLayout(k, l)
    labels = tuple(f"R{i + 1}" for i in range(k)) + tuple(f"C{j + 1}" for j in range(l))
    hyp_masks = layout.row_masks() + layout.col_masks()
    return _decompose(
        "grid",
        {"k": k, "l": l},
        labels,
        hyp_masks,
        k * l,
        3,
        lambda blocks: is_grid_component_partition(k, l, blocks),
        classify,
    )


def decompose_lines(
    n: int, *, budget: int = LINE_ENUM_BUDGET, classify: bool = True
) -> DecompositionResult:
    """Components of the n-line arrangement, in RGS-lex order."""
    if n < 4:
        raise TooFewLines(f"need at least 4 lines, got {n}")
    if n > budget:
        raise EnumerationBudgetExceeded("line count", n, budget)
    line_matroid(n)  # validates the base exists
    arr = LineArrangement(n)
    labels = tuple(f"L{i + 1}" for i in range(n))
    hyp_masks = arr.line_masks()
    return _decompose(
        "lines",
        {"n": n},
        labels,
        hyp_masks,
        arr.point_count,
        3,
        lambda blocks: is_line_component_partition(n, blocks),
        classify,
    )


def grid_component_partitions(k: int, l: int) -> Iterator[list[list[int]]]:
    """Plain filter over all partitions of the k+l hyperplanes; used as an
    unpruned cross-check of the counting routes."""
    for code in iter_rgs(k + l):
        blocks = rgs_to_blocks(code)
        if is_grid_component_partition(k, l, blocks):
            yield blocks


def line_component_partitions(n: int) -> Iterator[list[list[int]]]:
    for code in iter_rgs(n):
        blocks = rgs_to_blocks(code)
        if is_line_component_partition(n, blocks):
            yield blocks
