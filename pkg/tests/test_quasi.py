import random
from itertools import combinations

import pytest

from pavemat import (
    check_circuit_axioms,
    decompose_to_tame,
    is_uniform,
    mask_of,
    matroid_from_circuits,
    pairwise_intersection_flats,
    principal_extension,
    quasi_deletion,
    quasi_matroid,
    quasi_rep,
    replay_extensions,
    small_circuits,
)
from pavemat.bitset import bits_tuple
from pavemat.errors import LevelTooSmall, NotAFlat, RankDeficient, TripleIntersection

from helpers import m1, random_full_rank_rep, random_quasi_rep

# the two worked examples: hypergraphs on [9] and [7] at level 3
REP_A = lambda: quasi_rep(9, 3, [m1(1, 2, 3, 7, 8), m1(1, 5, 6, 7, 9), m1(2, 4, 6, 9), m1(3, 4, 5, 8)])
REP_B = lambda: quasi_rep(7, 3, [m1(1, 4, 5, 6, 7), m1(1, 2, 3, 6, 7)])


def test_rep_validation():
    with pytest.raises(LevelTooSmall):
        quasi_rep(5, 1, [m1(1, 2)])
    with pytest.raises(TripleIntersection) as err:
        quasi_rep(5, 3, [m1(1, 2), m1(1, 3), m1(1, 4)])
    assert err.value.element == 0


def test_double_point_circuits():
    rep = REP_B()
    pairs = sorted(bits_tuple(c) for c in small_circuits(rep) if c.bit_count() == 2)
    assert pairs == [(0, 5), (0, 6), (5, 6)]  # elements 1, 6, 7 pairwise parallel


def test_single_full_member_gives_rank_two_uniform():
    for d in (5, 7):
        rep = quasi_rep(d, 3, [(1 << d) - 1])
        m = quasi_matroid(rep)
        assert is_uniform(m) == (2, d)


def test_small_disjoint_members_give_uniform():
    rep = quasi_rep(8, 3, [m1(1, 2), m1(3, 4)])
    m = quasi_matroid(rep)
    assert is_uniform(m) == (3, 8)


def test_inert_members_flagged():
    rep = quasi_rep(8, 3, [m1(1), m1(2, 3, 4)])
    assert rep.inert_member_indices == (0,)


def test_axiom_property_random_reps():
    rng = random.Random(43)
    for _ in range(60):
        rep = random_quasi_rep(rng, max_d=10)
        m = quasi_matroid(rep)
        check_circuit_axioms(rep.d, m.circuits())


def test_member_rank_is_level_minus_one():
    # holds for levels >= 3; at level 2 every element of a member can be a
    # loop via intersections with other members, dropping the rank to 0
    rng = random.Random(47)
    checked = 0
    for _ in range(80):
        rep = random_quasi_rep(rng, max_d=10)
        if rep.n < 3:
            continue
        m = quasi_matroid(rep)
        for i, h in enumerate(rep.members):
            if h.bit_count() < rep.n - 1:
                continue
            if any(j != i and h & other == h for j, other in enumerate(rep.members)):
                continue
            assert m.rank(h) == rep.n - 1
            checked += 1
    assert checked > 50


def test_pairwise_intersection_flats_example():
    rep = REP_B()
    flats = pairwise_intersection_flats(rep)
    assert flats == [(0, 1, m1(1, 6, 7))]
    m = quasi_matroid(rep)
    assert m.rank(m1(1, 6, 7)) == 1
    assert m.closure(m1(1, 6, 7)) == m1(1, 6, 7)


def test_pairwise_intersection_flats_disjoint():
    rep = quasi_rep(8, 3, [m1(1, 2, 3), m1(4, 5, 6)])
    assert pairwise_intersection_flats(rep) == []


def test_grid_cells_are_flats_of_merged_rows_cols():
    # rows and columns of the 3x3 grid as six members: each cell meets one row
    # and one column, so it is a rank-1 flat
    from pavemat.families import GridLayout

    layout = GridLayout(3, 3)
    rep = quasi_rep(9, 3, layout.row_masks() + layout.col_masks())
    m = quasi_matroid(rep)
    flats = pairwise_intersection_flats(rep)
    cells = [f for (_, _, f) in flats if f.bit_count() == 1]
    assert len(cells) == 9
    for f in cells:
        assert m.closure(f) == f
        assert m.rank(f) == 1


def test_flats_verified_on_random_reps():
    rng = random.Random(53)
    for _ in range(40):
        rep = random_quasi_rep(rng, max_d=9)
        if rep.n < 3:
            continue
        m = quasi_matroid(rep)
        for (_, _, f) in pairwise_intersection_flats(rep):
            assert m.closure(f) == f
            assert m.rank(f) == min(rep.n - 2, f.bit_count())


def test_principal_extension_parallel_point():
    # two lines {1,2,3}, {1,4,5}; extending into the flat {1} makes {1,6} a circuit
    base = matroid_from_circuits(
        5, 3, [m1(1, 2, 3), m1(1, 4, 5)] + [mask_of(c) for c in combinations(range(5), 4)
                                            if not (set(c) >= {0, 1, 2} or set(c) >= {0, 3, 4})]
    )
    ext = principal_extension(base, m1(1))
    assert ext.d == 6 and ext.rank_value == 3
    assert not ext.is_independent(m1(1, 6))
    assert ext.is_independent(m1(2, 6))


def test_principal_extension_spanning_flat_is_free():
    base = matroid_from_circuits(4, 2, [mask_of(c) for c in combinations(range(4), 3)])
    ext = principal_extension(base, (1 << 4) - 1)
    assert ext.rank_value == 2
    assert ext.is_independent(m1(1, 5))
    assert not ext.is_independent(m1(1, 2, 5))


def test_principal_extension_empty_flat_is_loop():
    base = matroid_from_circuits(3, 3, [])
    ext = principal_extension(base, 0)
    assert not ext.is_independent(m1(4))


def test_principal_extension_rejects_non_flat():
    base = matroid_from_circuits(3, 2, [m1(1, 2, 3)])
    with pytest.raises(NotAFlat):
        principal_extension(base, m1(1, 2))


def test_decompose_to_tame_example_b():
    rep = REP_B()
    dec = decompose_to_tame(rep)
    assert [s.element for s in dec.steps] == [6, 5]  # peel 7 then 6 (1-based)
    assert dec.core_elements == (0, 1, 2, 3, 4)
    assert set(dec.core.hyperplanes) == {0b00111, 0b11001}  # lines {1,2,3}, {1,4,5}


def test_decompose_to_tame_example_a():
    rep = REP_A()
    dec = decompose_to_tame(rep)
    assert [s.element for s in dec.steps] == [8, 7, 6]
    assert [bits_tuple(s.flat) for s in dec.steps] == [(5,), (2,), (0,)]
    assert dec.core_elements == (0, 1, 2, 3, 4, 5)
    assert set(dec.core.hyperplanes) == {m1(1, 2, 3), m1(1, 5, 6), m1(2, 4, 6), m1(3, 4, 5)}


def test_decompose_already_tame():
    rep = quasi_rep(6, 3, [m1(1, 2, 3), m1(1, 4, 5)])
    dec = decompose_to_tame(rep)
    assert dec.steps == ()
    assert dec.core_elements == tuple(range(6))


def test_decompose_rejects_rank_deficient():
    rep = quasi_rep(5, 3, [(1 << 5) - 1])  # rank 2
    with pytest.raises(RankDeficient):
        decompose_to_tame(rep)


def test_replay_examples_exactly():
    for make in (REP_A, REP_B):
        rep = make()
        m = quasi_matroid(rep)
        replayed = replay_extensions(decompose_to_tame(rep), rep.d)
        for s in range(1 << rep.d):
            assert replayed.is_independent(s) == m.is_independent(s)


def test_replay_random_orders_confluent():
    rng = random.Random(59)
    for _ in range(15):
        rep = random_full_rank_rep(rng, max_d=9)
        m = quasi_matroid(rep)
        reference = decompose_to_tame(rep)
        shuffled = decompose_to_tame(rep, pick=rng.choice)
        # cores agree structurally whatever the peeling order
        assert shuffled.core.d == reference.core.d
        assert sorted(l.bit_count() for l in shuffled.core.hyperplanes) == sorted(
            l.bit_count() for l in reference.core.hyperplanes
        )
        for dec in (reference, shuffled):
            replayed = replay_extensions(dec, rep.d)
            for s in range(1 << rep.d):
                assert replayed.is_independent(s) == m.is_independent(s)


def test_quasi_deletion_example():
    rep = REP_B()
    smaller, kept = quasi_deletion(rep, m1(6, 7))
    assert kept == (0, 1, 2, 3, 4)
    assert set(smaller.members) == {0b00111, 0b11001}


def test_quasi_deletion_identity_and_everything():
    rep = REP_B()
    same, kept = quasi_deletion(rep, 0)
    assert same.members == rep.members and kept == tuple(range(7))
    empty, kept = quasi_deletion(rep, (1 << 7) - 1)
    assert empty.d == 0 and kept == ()
    assert quasi_matroid(empty).rank_value == 0


def test_quasi_deletion_commutes_with_construction():
    rng = random.Random(61)
    for _ in range(25):
        rep = random_quasi_rep(rng, max_d=8)
        z = rng.randrange(1 << rep.d)
        m = quasi_matroid(rep)
        deleted_matroid, kept1 = m.delete(z)
        smaller, kept2 = quasi_deletion(rep, z)
        assert kept1 == kept2
        constructed = quasi_matroid(smaller)
        for s in range(1 << smaller.d):
            assert constructed.is_independent(s) == deleted_matroid.is_independent(s)


def test_matroid_deletion_matches_golden_two_lines():
    from pavemat import paving_from_hyperplanes, paving_to_matroid

    rep = REP_B()
    m = quasi_matroid(rep)
    deleted, kept = m.delete(m1(6, 7))
    assert kept == (0, 1, 2, 3, 4)
    two_lines = paving_to_matroid(paving_from_hyperplanes(5, 3, [m1(1, 2, 3), m1(1, 4, 5)]))
    assert sorted(deleted.circuits()) == sorted(two_lines.circuits())


def test_principal_extension_preserves_rank_and_basis_count():
    base = matroid_from_circuits(
        5, 3, [m1(1, 2, 3)] + [mask_of(c) for c in combinations(range(5), 4)
                               if not set(c) >= {0, 1, 2}]
    )
    flat = base.closure(m1(1, 2))
    ext = principal_extension(base, flat)
    assert ext.rank_value == base.rank_value == 3
    old = set(base.bases())
    new = set(ext.bases())
    assert old <= new
    swaps = {(lam ^ (1 << e)) | (1 << 5) for lam in old for e in bits_tuple(lam & flat)}
    assert new == old | swaps
