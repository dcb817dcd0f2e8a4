from fractions import Fraction

import pytest

from onesided.exceptions import InvalidSpec
from onesided.generators import GeneratorSpec, generate, random_homogeneous_sequence
from onesided.geometry import is_general_position
from onesided.homogeneous import is_orientation_homogeneous, sequence_sign


def test_moment_curve_points():
    P = generate(GeneratorSpec("moment", 5, 2))
    assert list(P) == [(1, 1), (2, 4), (3, 9), (4, 16), (5, 25)]
    assert is_orientation_homogeneous(P)


def test_circle_points_at_given_parameters():
    P = generate(GeneratorSpec("circle", 3, params={"parameters": [0, 1, 2]}))
    assert list(P) == [(1, 0), (0, 1), (Fraction(-3, 5), Fraction(4, 5))]
    assert all(x * x + y * y == 1 for x, y in P)
    assert is_orientation_homogeneous(P)


def test_random_points_are_in_general_position():
    P = generate(GeneratorSpec("random", 50, 3, seed=7))
    assert len(P) == 50 and is_general_position(P)


def test_random_generation_is_reproducible():
    a = generate(GeneratorSpec("random", 10, 2, seed=3))
    b = generate(GeneratorSpec("random", 10, 2, seed=3))
    assert a == b


@pytest.mark.parametrize("kind", ["moment", "stretched_diagonal"])
@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_curves_are_homogeneous(kind, d):
    assert is_orientation_homogeneous(generate(GeneratorSpec(kind, 30, d)))


def test_circle_points_are_in_convex_position_in_angular_order():
    for n in (5, 12, 30):
        P = generate(GeneratorSpec("circle", n))
        assert sequence_sign(P) == 1


def test_grid_is_lexicographic():
    P = generate(GeneratorSpec("grid", 4, 2))
    assert list(P) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_random_homogeneous_sequences_mix_orientations():
    signs = {sequence_sign(random_homogeneous_sequence(9, 2, seed)) for seed in range(20)}
    assert signs == {1, -1}


@pytest.mark.parametrize("spec", [
    GeneratorSpec("spiral", 5),
    GeneratorSpec("moment", 0),
    GeneratorSpec("circle", 4, 3),
    GeneratorSpec("stretched_diagonal", 4, params={"base": 1}),
    GeneratorSpec("circle", 2, params={"parameters": [1, 0]}),
])
def test_invalid_specs_are_rejected(spec):
    with pytest.raises(InvalidSpec):
        generate(spec)
