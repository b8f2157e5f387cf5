import random
from fractions import Fraction

import pytest

from covert_setcover.errors import (
    BruteForceCapExceededError,
    InvalidCoverError,
    UncoverableInstanceError,
)
from covert_setcover.setsystem import (
    Cover,
    apportioned_weights,
    brute_force_min_cover,
    build_set_system,
    coverage_order,
    from_json_dict,
    greedy_cover,
    harmonic,
    threshold_pass,
    to_json_dict,
    verify_cover,
)

from oracles import exhaustive_min_cover


def random_system(rng, max_n=16, max_m=12, coverable=True):
    n = rng.randint(2, max_n)
    m = rng.randint(2, max_m)
    sets = [
        [e for e in range(1, n + 1) if rng.random() < rng.uniform(0.1, 0.6)]
        for _ in range(m)
    ]
    if coverable:
        missing = set(range(1, n + 1)) - set().union(*map(set, sets))
        for e in sorted(missing):
            sets[rng.randrange(m)].append(e)
    return build_set_system(sets, n), sets


class TestBuild:
    def test_inverse_index(self):
        system = build_set_system([[1, 2], [2, 3]], 3)
        assert system.sets_containing(2) == {1, 2}
        assert system.sets_containing(1) == {1}
        assert system.sets_containing(3) == {2}

    def test_singleton(self):
        system = build_set_system([[1]], 1)
        assert system.universe_size == 1
        assert system.n_sets == 1

    def test_element_out_of_range(self):
        with pytest.raises(ValueError, match="outside"):
            build_set_system([[1, 4]], 3)

    def test_empty_family_rejected(self):
        with pytest.raises(ValueError, match="empty"):
            build_set_system([], 3)

    def test_bad_universe_size(self):
        with pytest.raises(ValueError):
            build_set_system([[1]], 0)

    def test_inverse_is_exact(self):
        rng = random.Random(7)
        for _ in range(20):
            system, _ = random_system(rng)
            for e in range(1, system.universe_size + 1):
                for s in range(1, system.n_sets + 1):
                    assert (s in system.sets_containing(e)) == (e in system.members(s))

    def test_json_round_trip(self):
        system, _ = random_system(random.Random(3))
        assert from_json_dict(to_json_dict(system)) == system


class TestGreedy:
    def test_three_set_example(self):
        system = build_set_system([[1, 2, 3], [3, 4], [4]], 4)
        assert greedy_cover(system).set_indices == (1, 2)

    def test_single_universe_set(self):
        system = build_set_system([[1, 2, 3]], 3)
        assert greedy_cover(system).set_indices == (1,)

    def test_lowest_index_tie_break(self):
        system = build_set_system([[1, 2], [3, 4]], 4)
        assert greedy_cover(system).set_indices[0] == 1

    def test_uncoverable_names_element(self):
        system = build_set_system([[1, 2]], 3)
        with pytest.raises(UncoverableInstanceError) as err:
            greedy_cover(system)
        assert err.value.element == 3

    def test_theta_out_of_range(self):
        system = build_set_system([[1]], 1)
        for theta in (0.0, -1.0, 1.5):
            with pytest.raises(ValueError):
                greedy_cover(system, theta=theta)

    def test_relaxed_theta_accepts_earlier_sets(self):
        # Set 1 holds 2 of the max 3 uncovered; theta .5 takes it first.
        system = build_set_system([[1, 2], [2, 3, 4]], 4)
        assert greedy_cover(system, theta=0.5).set_indices == (1, 2)
        assert greedy_cover(system, theta=1.0).set_indices == (2, 1)

    @pytest.mark.parametrize("theta", [1.0, 0.5, 0.25])
    def test_harmonic_bound_sweep(self, theta):
        rng = random.Random(11)
        for _ in range(60):
            system, sets = random_system(rng)
            cover = greedy_cover(system, theta=theta)
            assert verify_cover(system, cover)
            opt = exhaustive_min_cover(sets, system.universe_size)
            bound = harmonic(system.universe_size) * len(opt) / Fraction(theta)
            assert Fraction(len(cover)) <= bound

    def test_deterministic(self):
        system, _ = random_system(random.Random(5))
        assert greedy_cover(system) == greedy_cover(system)


class TestThresholdPass:
    def test_accepts_in_index_order_and_shrinks(self):
        system = build_set_system([[1, 2, 3], [1, 2, 3], [4, 5]], 5)
        accepted, remaining = threshold_pass(system, range(1, 6), 2)
        assert accepted == [1, 3]  # set 2's holdings vanish once set 1 is taken
        assert remaining == set()

    def test_below_threshold_left_alone(self):
        system = build_set_system([[1], [2, 3]], 3)
        accepted, remaining = threshold_pass(system, range(1, 4), 2)
        assert accepted == [2]
        assert remaining == {1}


class TestBruteForce:
    def test_example_size_two(self):
        system = build_set_system([[1, 2, 3], [3, 4], [4]], 4)
        assert len(brute_force_min_cover(system)) == 2

    def test_single_set(self):
        system = build_set_system([[1, 2]], 2)
        assert brute_force_min_cover(system).set_indices == (1,)

    def test_disjoint_singletons(self):
        system = build_set_system([[1], [2], [3]], 3)
        assert len(brute_force_min_cover(system)) == 3

    def test_lexicographically_smallest(self):
        system = build_set_system([[1, 2], [3, 4], [1, 3], [2, 4]], 4)
        assert brute_force_min_cover(system).set_indices == (1, 2)

    def test_cap(self):
        system = build_set_system([[1]] * 21, 1)
        with pytest.raises(BruteForceCapExceededError):
            brute_force_min_cover(system)

    def test_uncoverable(self):
        system = build_set_system([[2]], 2)
        with pytest.raises(UncoverableInstanceError) as err:
            brute_force_min_cover(system)
        assert err.value.element == 1

    def test_matches_independent_enumeration(self):
        rng = random.Random(23)
        for _ in range(30):
            system, sets = random_system(rng, max_n=10, max_m=8)
            expected = exhaustive_min_cover(sets, system.universe_size)
            assert brute_force_min_cover(system).set_indices == expected


class TestVerify:
    def test_true_and_false(self):
        system = build_set_system([[1, 2, 3], [3, 4], [4]], 4)
        assert verify_cover(system, Cover.from_indices(system, [1, 2]))
        assert not verify_cover(system, Cover.from_indices(system, [3]))
        assert not verify_cover(system, [])

    def test_accepts_raw_indices(self):
        system = build_set_system([[1, 2], [2, 3]], 3)
        assert verify_cover(system, [1, 2])

    def test_from_indices_rejects_duplicates(self):
        system = build_set_system([[1, 2], [2, 3]], 3)
        with pytest.raises(InvalidCoverError):
            Cover.from_indices(system, [1, 1])


class TestApportionment:
    def test_example_thirds(self):
        system = build_set_system([[1, 2, 3], [3, 4]], 4)
        weights = apportioned_weights(system, Cover.from_indices(system, [1, 2]))
        assert weights == {
            1: Fraction(1, 3),
            2: Fraction(1, 3),
            3: Fraction(1, 3),
            4: Fraction(1),
        }

    def test_sum_equals_cover_size(self):
        rng = random.Random(31)
        for _ in range(40):
            system, _ = random_system(rng)
            cover = greedy_cover(system)
            weights = apportioned_weights(system, cover)
            assert sum(weights.values()) == len(cover)

    def test_rejects_dead_pick(self):
        system = build_set_system([[1, 2], [1], [2]], 2)
        with pytest.raises(InvalidCoverError, match="no new element"):
            apportioned_weights(system, Cover.from_indices(system, [1, 2]))

    def test_rejects_partial_cover(self):
        system = build_set_system([[1], [2]], 2)
        with pytest.raises(InvalidCoverError, match="misses"):
            apportioned_weights(system, Cover.from_indices(system, [1]))

    @pytest.mark.parametrize("theta", [1.0, 0.5])
    def test_position_bound_against_optimum(self, theta):
        # w(x_i) <= (opt / theta) / (n - i + 1) with elements numbered in
        # the order the cover reaches them.
        rng = random.Random(43)
        for _ in range(40):
            system, sets = random_system(rng, max_n=12, max_m=8)
            cover = greedy_cover(system, theta=theta)
            weights = apportioned_weights(system, cover)
            opt = len(exhaustive_min_cover(sets, system.universe_size))
            order = coverage_order(system, cover)
            n = system.universe_size
            for pos, element in enumerate(order, start=1):
                bound = Fraction(opt) / Fraction(theta) / (n - pos + 1)
                assert weights[element] <= bound


class TestHarmonic:
    def test_small_values(self):
        assert harmonic(1) == 1
        assert harmonic(3) == Fraction(11, 6)
