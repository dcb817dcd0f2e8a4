import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from onesided.exceptions import DimensionMismatch
from onesided.geometry import (HullOracle, PointSequence, common_point, hulls_intersect,
                               in_convex_hull, is_general_position, orient)

import oracles

SQUARE = [(0, 0), (2, 0), (0, 2), (2, 2)]


def test_orient_counterclockwise_triangle_is_positive():
    assert orient([(0, 0), (1, 0), (0, 1)]) == 1


def test_orient_collinear_is_zero():
    assert orient([(0, 0), (1, 1), (2, 2)]) == 0


def test_orient_swapped_order_is_negative():
    assert orient([(0, 0), (0, 1), (1, 0)]) == -1


def test_orient_rejects_wrong_arity():
    with pytest.raises(DimensionMismatch):
        orient([(0, 0), (1, 0)])


def test_orient_accepts_rational_strings():
    assert orient([("1/3", 0), ("2/3", 0), (0, "1/7")]) == 1


def test_general_position_square():
    assert is_general_position(PointSequence.from_coords(SQUARE))


def test_general_position_detects_collinear_triple():
    assert not is_general_position(PointSequence.from_coords([(0, 0), (1, 0), (2, 0), (0, 1)]))


def test_general_position_vacuous_for_few_points():
    assert is_general_position(PointSequence.from_coords([(0, 0), (0, 0)]))


def test_general_position_detects_duplicates():
    assert not is_general_position(PointSequence.from_coords([(0, 0), (1, 5), (0, 0), (3, 1)]))


def test_general_position_matches_bruteforce_on_small_grids():
    rng = random.Random(7)
    for trial in range(150):
        d = rng.choice([2, 3])
        n = rng.randint(d + 1, 7)
        pts = [tuple(rng.randint(-2, 2) for _ in range(d)) for _ in range(n)]
        expected = len(set(pts)) == n and all(
            oracles.orient(list(c)) != 0 for c in itertools.combinations(pts, d + 1))
        assert is_general_position(PointSequence.from_coords(pts)) == expected, pts


def test_hull_contains_square_center():
    assert in_convex_hull((1, 1), SQUARE)


def test_hull_excludes_far_point():
    assert not in_convex_hull((3, 3), SQUARE)


def test_hull_contains_segment_midpoint_in_degenerate_hull():
    assert in_convex_hull((1, 0), [(0, 0), (2, 0)])


def test_hull_boundary_is_closed():
    assert in_convex_hull((2, 1), SQUARE)
    assert in_convex_hull((0, 0), SQUARE)


def test_hull_membership_matches_caratheodory_oracle():
    rng = random.Random(11)
    for _ in range(120):
        d = rng.choice([1, 2, 3])
        S = [tuple(rng.randint(-3, 3) for _ in range(d)) for _ in range(rng.randint(1, 6))]
        q = tuple(Fraction(rng.randint(-6, 6), 2) for _ in range(d))
        assert in_convex_hull(q, S) == oracles.in_hull(q, S), (q, S)


def test_crossing_diagonals_intersect():
    assert hulls_intersect([(0, 0), (2, 2)], [(0, 2), (2, 0)])


def test_parallel_segments_do_not_intersect():
    assert not hulls_intersect([(0, 0), (1, 0)], [(0, 1), (1, 1)])


def test_common_point_lies_in_every_hull():
    parts = [[(0, 0), (4, 0), (0, 4)], [(1, 1), (5, 1), (1, 5)], [(0, 2), (3, 2)]]
    x = common_point(parts)
    assert x is not None
    assert all(in_convex_hull(x, part) for part in parts)


def test_hulls_intersect_matches_planar_oracle():
    rng = random.Random(3)
    for _ in range(150):
        S1 = [(rng.randint(0, 6), rng.randint(0, 6)) for _ in range(rng.randint(1, 4))]
        S2 = [(rng.randint(0, 6), rng.randint(0, 6)) for _ in range(rng.randint(1, 4))]
        assert hulls_intersect(S1, S2) == oracles.hulls_intersect_2d(S1, S2), (S1, S2)


def test_hull_oracle_masks_match_direct_membership():
    rng = random.Random(5)
    ground = [(rng.randint(-5, 5), rng.randint(-5, 5)) for _ in range(9)]
    H = HullOracle(ground)
    for r in range(1, 6):
        for idx in itertools.combinations(range(9), r):
            mask = H.hull_mask(idx)
            gens = [ground[i] for i in idx]
            direct = sum(1 << j for j, q in enumerate(ground) if in_convex_hull(q, gens))
            assert mask == direct


def test_closure_table_matches_hull_mask():
    rng = random.Random(8)
    ground = [(rng.randint(-9, 9), rng.randint(-9, 9), rng.randint(-9, 9)) for _ in range(8)]
    H = HullOracle(ground)
    members = [0, 2, 3, 5, 6, 7]
    table = H.closure_table(members)
    for S in range(1 << len(members)):
        idx = [members[i] for i in range(len(members)) if S >> i & 1]
        assert table[S] == H.hull_mask(idx)


small = st.integers(-20, 20)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(small, small), min_size=3, max_size=3),
       st.permutations(range(3)))
def test_orient_flips_with_permutation_parity(pts, perm):
    inversions = sum(1 for i in range(3) for j in range(i + 1, 3) if perm[i] > perm[j])
    assert orient([pts[i] for i in perm]) == orient(pts) * (-1) ** inversions


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(small, small, small), min_size=4, max_size=4),
       st.tuples(small, small, small), st.integers(1, 9))
def test_orient_invariant_under_translation_and_positive_scaling(pts, shift, scale):
    moved = [tuple(scale * c + s for c, s in zip(p, shift)) for p in pts]
    assert orient(moved) == orient(pts) == oracles.orient(pts)
