import random
from fractions import Fraction

import pytest

from onesided.exceptions import GeneralPositionViolation, NotHomogeneous, SizeMismatch
from onesided.generators import GeneratorSpec, generate, random_homogeneous_sequence
from onesided.geometry import PointSequence
from onesided.tverberg import (point_selection_check, radon_point, set_partitions,
                               tverberg_params, tverberg_point)

import oracles

HEXAGON = [(2, 0), (1, 2), (-1, 2), (-2, 0), (-1, -2), (1, -2), (0, 0)]


def as_sets(partition):
    return {frozenset(p) for p in partition}


def test_radon_of_square_pairs_the_diagonals():
    res = radon_point([(0, 0), (2, 0), (0, 2), (2, 2)])
    assert as_sets(res.partition) == {frozenset({0, 3}), frozenset({1, 2})}
    assert res.point == (1, 1)


def test_radon_with_interior_point_isolates_it():
    res = radon_point([(0, 0), (3, 0), (0, 3), (1, 1)])
    assert as_sets(res.partition) == {frozenset({0, 1, 2}), frozenset({3})}
    assert res.point == (1, 1)


def test_radon_rejects_collinear_triples():
    with pytest.raises(GeneralPositionViolation):
        radon_point([(0, 0), (1, 0), (2, 0), (0, 1)])


def test_radon_partition_is_permutation_invariant():
    rng = random.Random(1)
    for _ in range(30):
        Q = [(rng.randint(-50, 50), rng.randint(-50, 50), rng.randint(-50, 50)) for _ in range(5)]
        base = radon_point(Q)
        perm = list(range(5))
        rng.shuffle(perm)
        moved = radon_point([Q[i] for i in perm])
        mapped = {frozenset(perm[i] for i in part) for part in moved.partition}
        assert mapped == as_sets(base.partition)
        assert moved.point == base.point


def test_tverberg_with_two_parts_agrees_with_radon():
    Q = [(0, 0), (2, 0), (0, 2), (2, 2)]
    a, b = tverberg_point(Q, 2), radon_point(Q)
    assert as_sets(a.partition) == as_sets(b.partition)
    assert a.point == b.point


def test_tverberg_hexagon_with_center_is_valid():
    res = tverberg_point(HEXAGON, 3)
    assert len(res.partition) == 3
    assert sorted(i for p in res.partition for i in p) == list(range(7))
    for part in res.partition:
        assert oracles.in_hull(res.point, [HEXAGON[i] for i in part])


def test_tverberg_on_the_line():
    res = tverberg_point([(0,), (2,), (1,)], 2)
    assert as_sets(res.partition) == {frozenset({0, 1}), frozenset({2})}
    assert res.point == (1,)


def test_tverberg_size_mismatch():
    with pytest.raises(SizeMismatch):
        tverberg_point(HEXAGON[:6], 3)


def test_tverberg_common_point_checked_against_oracle():
    rng = random.Random(9)
    for _ in range(10):
        Q = [(rng.randint(-20, 20), rng.randint(-20, 20)) for _ in range(7)]
        res = tverberg_point(Q, 3)
        for part in res.partition:
            assert oracles.in_hull(res.point, [Q[i] for i in part])


def test_set_partitions_count_matches_stirling_numbers():
    assert sum(1 for _ in set_partitions(7, 3)) == 301
    assert sum(1 for _ in set_partitions(5, 2)) == 15


def test_tverberg_params_by_dimension():
    assert tverberg_params(2) == (2, 4)
    assert tverberg_params(3) == (2, 5)
    assert tverberg_params(4) == (3, 11)


def test_point_selection_on_parabola():
    P = PointSequence.from_coords([(i, i * i) for i in range(1, 10)])
    assert point_selection_check(P) is True


def test_point_selection_on_circle():
    P = generate(GeneratorSpec("circle", 9))
    assert point_selection_check(P) is True


def test_point_selection_rejects_dimension_one():
    with pytest.raises(SizeMismatch):
        point_selection_check(PointSequence.from_coords([(i,) for i in range(3)]))


def test_point_selection_rejects_inhomogeneous_input():
    P = PointSequence.from_coords([(0, 0), (2, 0), (1, 3), (1, 1), (5, 7), (9, 2), (3, 8), (4, 4), (7, 1)])
    with pytest.raises(NotHomogeneous):
        point_selection_check(P)


def test_point_selection_on_random_homogeneous_sequences():
    for seed in range(40):
        assert point_selection_check(random_homogeneous_sequence(9, 2, seed))
    for seed in range(10):
        assert point_selection_check(random_homogeneous_sequence(11, 3, seed))


def test_radon_point_has_rational_coordinates():
    res = radon_point([(0, 0), (3, 0), (0, 3), (2, 2)])
    assert all(isinstance(c, Fraction) for c in res.point)
