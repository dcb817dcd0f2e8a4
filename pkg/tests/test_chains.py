import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from onesided.chains import (ChainFamily, FamilyMember, IntervalChain, build_family,
                             chain_margin, claim_occupancy_check, complete_family,
                             dual_chain_to_tuple, dumps_family, family_stab_fraction,
                             layer_count, loads_family, stabs, tuple_to_dual_chain,
                             verify_family)
from onesided.exceptions import AmbientMismatch, ArityTooSmall, CapExceeded, EpsilonOutOfRange

import oracles


def chain(*intervals, t):
    return IntervalChain.from_intervals(list(intervals), t)


def test_one_value_per_interval_stabs():
    assert stabs((2, 5, 9), chain((1, 3), (4, 6), (7, 10), t=10))


def test_two_values_in_one_interval_do_not_stab():
    assert not stabs((2, 3, 9), chain((1, 3), (4, 6), (7, 10), t=10))


def test_value_outside_every_interval_does_not_stab():
    assert not stabs((2, 5, 9), chain((3, 4), (5, 6), t=10))


def test_stabs_checks_the_ambient_range():
    with pytest.raises(AmbientMismatch):
        stabs((2, 5, 11), chain((1, 10), t=10))


def test_stabs_matches_direct_interval_scan():
    rng = random.Random(4)
    for _ in range(500):
        t = rng.randint(3, 15)
        b = sorted(rng.sample(range(1, t + 2), rng.randint(2, t + 1)))
        I = IntervalChain(tuple(b), t)
        x = sorted(rng.sample(range(1, t + 1), rng.randint(1, min(4, t))))
        assert stabs(x, I) == oracles.stabs(x, I.intervals())


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 40).flatmap(
    lambda t: st.tuples(st.just(t), st.sets(st.integers(0, t), min_size=2))))
def test_tuple_chain_duality_round_trip(args):
    t, vals = args
    x = tuple(sorted(vals))
    assert dual_chain_to_tuple(tuple_to_dual_chain(x, t)) == x


def test_layered_family_for_arity_three_half():
    F = build_family(3, Fraction(1, 2))
    assert (F.K, F.m, F.t) == (5, 8, 256)
    assert F.layer_sizes() == [128, 64, 32, 16, 8]
    assert {mb.weight for mb in F.members} == {1}
    assert len(F) == 248
    assert F.t / 2 <= len(F) < F.t


@pytest.mark.parametrize("D,eps", [(3, Fraction(1, 2)), (4, Fraction(1, 2)), (3, Fraction(1, 4)),
                                   (5, Fraction(9, 10))])
def test_layered_family_total_weight_formula(D, eps):
    F = build_family(D, eps)
    E = Fraction(D - 2, D - 1)
    assert len(F) == F.t * (1 - E ** F.K)
    assert F.t / 2 <= len(F) < F.t
    assert F.K == math.ceil((D - 1) * math.log(4 / eps))
    assert F.m >= 4 / eps
    assert all(mb.weight == (D - 2) ** mb.layer for mb in F.members)


def test_layer_count_rounds_outward():
    # (D-1) ln(4/eps) = 2 ln 4 = 2.77..., so 3
    assert layer_count(3, 1) == 3
    assert layer_count(3, Fraction(1, 2)) == 5


def test_family_rejects_small_arity_and_bad_epsilon():
    with pytest.raises(ArityTooSmall):
        build_family(2, Fraction(1, 2))
    with pytest.raises(EpsilonOutOfRange):
        build_family(4, 1)


def test_single_interval_is_never_stabbed():
    F = build_family(3, Fraction(1, 2))
    assert family_stab_fraction(F, IntervalChain((1, F.t + 1), F.t)) == 0


def test_singleton_chain_is_mostly_stabbed():
    F = build_family(3, Fraction(1, 2))
    frac = family_stab_fraction(F, IntervalChain(tuple(range(1, F.t + 2)), F.t))
    assert frac >= 1 - F.epsilon
    # only the members starting at the inert value 0 miss
    assert frac == Fraction(248 - 5, 248)


def test_single_member_family_that_stabs():
    F = ChainFamily(3, 6, Fraction(1, 2), 1, 1, (FamilyMember(0, 1, (1, 3, 5)),))
    assert family_stab_fraction(F, chain((1, 2), (3, 4), (5, 6), t=6)) == 1


def test_stab_fraction_matches_direct_count():
    F = build_family(4, Fraction(1, 2), m_override=1)
    rng = random.Random(2)
    for _ in range(50):
        b = sorted(rng.sample(range(1, F.t + 2), rng.randint(2, 12)))
        I = IntervalChain(tuple(b), F.t)
        hit = sum(mb.weight for mb in F.members if oracles.stabs(mb.values, I.intervals()))
        assert family_stab_fraction(F, I) == Fraction(hit, len(F))


def test_stab_fraction_requires_matching_range():
    F = build_family(3, Fraction(1, 2))
    with pytest.raises(AmbientMismatch):
        family_stab_fraction(F, IntervalChain((1, 5), 4))


def test_sampled_verification_of_built_family():
    F = build_family(3, Fraction(1, 2))
    rep = verify_family(F, "sampled", sample_count=10_000, seed=0)
    assert rep.verified and rep.worst_margin >= 0


def test_empty_family_fails_on_singletons():
    F = ChainFamily(3, 4, Fraction(1, 2), 1, 1, ())
    I = IntervalChain((1, 2, 3, 4, 5), 4)
    assert chain_margin(F, I) == -(1 - Fraction(1, 2))
    rep = verify_family(F, "exhaustive")
    assert rep.worst_margin == Fraction(-1, 2) and not rep.verified


def test_exhaustive_verification_is_capped():
    F = build_family(3, Fraction(1, 2), t_override=30)
    with pytest.raises(CapExceeded):
        verify_family(F, "exhaustive")


def test_exhaustive_verification_small_family():
    F = build_family(3, Fraction(9, 10), m_override=2)
    assert F.t == 16
    rep = verify_family(F, "exhaustive")
    assert rep.verified
    assert rep.chains_checked == 2 ** 17 - 1 - 17


def test_occupancy_claim_for_full_and_empty_sets():
    F = build_family(3, Fraction(1, 2))
    full = claim_occupancy_check(range(1, F.t + 1), F)
    assert full.holds and set(full.beta) == {1} and set(full.gamma) == {0}
    empty = claim_occupancy_check([], F)
    assert empty.holds and empty.alpha == 0 and set(empty.beta) == {0}


def test_occupancy_claim_for_random_third_density_sets():
    F = build_family(3, Fraction(1, 2))
    rng = random.Random(0)
    for _ in range(200):
        J = rng.sample(range(1, F.t + 1), F.t // 3)
        rep = claim_occupancy_check(J, F)
        assert rep.holds
        assert max(rep.full_nonstabbing) <= 2


def test_occupancy_claim_exhaustive_on_eight():
    F = build_family(3, Fraction(9, 10), m_override=1)
    assert F.t == 8
    for r in range(F.t + 1):
        for J in itertools.combinations(range(1, F.t + 1), r):
            assert claim_occupancy_check(J, F).holds


def test_complete_family_contains_every_tuple_once():
    F = complete_family(3, 6, Fraction(1, 2))
    assert len(F) == 20
    assert len({mb.values for mb in F.members}) == 20


def test_family_text_round_trip():
    F = build_family(4, Fraction(1, 2), m_override=1)
    G = loads_family(dumps_family(F))
    assert (G.D, G.t, G.epsilon, G.K, G.m) == (F.D, F.t, F.epsilon, F.K, F.m)
    assert G.members == F.members


def test_family_text_rejects_malformed_lines():
    with pytest.raises(ValueError):
        loads_family("3 8 1/2 5\n")
    with pytest.raises(ValueError):
        loads_family("3 8 1/2 5 1\n0 1 1 2\n")
