from fractions import Fraction
from math import comb
from unittest import TestCase, mock

from hypothesis import given, settings, strategies as st

from cmlnkit.common.errors import DegenerateModelError, ImproperModelError, NotRationalError, UnreachableCountError
from cmlnkit.expressivity.delta import DeltaSpec, TargetDistribution, compile_delta, compile_distribution, \
    with_top_coordinate
from cmlnkit.fourier.oracle_dft import count_distribution_via_wfomc
from cmlnkit.logic.syntax import Predicate, Variable, And, Implies, TOP
from cmlnkit.logic.world import Domain, enumerate_worlds
from cmlnkit.mln.distribution import count_distribution_bruteforce, support_bruteforce
from cmlnkit.mln.inference import partition_function, world_probability, world_counts
from cmlnkit.wfomc.oracle import WfomcOracle

X, Y = Variable('x'), Variable('y')
HEADS = Predicate('heads', 1)
SMOKES, FRIENDS = Predicate('sm', 1), Predicate('fr', 2)
FRIENDS_SMOKERS = [SMOKES(X), Implies(And(SMOKES(X), FRIENDS(X, Y)), SMOKES(Y))]


def assert_indicator(distribution, target):
    for point, p in distribution.items():
        assert p == (1 if point == target else 0)


class DeltaTest(TestCase):
    def test_with_top_coordinate(self):
        assert with_top_coordinate((2,), 1) == (2, 1)
        assert with_top_coordinate((2, 1), 1) == (2, 1)
        with self.assertRaises(ValueError):
            with_top_coordinate((1, 2, 3), 1)

    def test_spec_validation(self):
        domain = Domain.of_size(4)
        with self.assertRaises(ValueError):
            DeltaSpec([HEADS(X)], domain, (5,))
        with self.assertRaises(ValueError):
            DeltaSpec([HEADS(X)], domain, (2, 0))

    def test_model_shape(self):
        mln = compile_delta(DeltaSpec([HEADS(X)], Domain.of_size(4), (2,)))
        assert mln.num_components == 5
        assert mln.formulas == [HEADS(X), TOP]
        assert mln.backend.key == 'exact'

    def test_heads_delta_at_every_count(self):
        domain = Domain.of_size(4)
        for n0 in range(5):
            mln = compile_delta(DeltaSpec([HEADS(X)], domain, (n0,)))
            distribution = count_distribution_bruteforce(mln, domain)
            assert_indicator(distribution, (n0, 1))
            assert distribution.fiber_sizes[(n0, 1)] == comb(4, n0)
            assert partition_function(mln, domain) == 5 * comb(4, n0)

    def test_worlds_in_fiber_are_equiprobable(self):
        domain = Domain.of_size(4)
        mln = compile_delta(DeltaSpec([HEADS(X)], domain, (2,)))
        z = partition_function(mln, domain)
        for world in enumerate_worlds(mln.signature, domain):
            expected = Fraction(1, comb(4, 2)) if world_counts(mln, world)[0] == 2 else 0
            assert world_probability(mln, world, z) == expected

    def test_friends_smokers_delta_at_every_support_point(self):
        domain = Domain.of_size(2)
        for point in support_bruteforce(FRIENDS_SMOKERS, domain):
            mln = compile_delta(DeltaSpec(FRIENDS_SMOKERS, domain, point))
            assert mln.num_components == 3 * 5
            assert_indicator(count_distribution_bruteforce(mln, domain), point + (1,))

    def test_unreachable_point_is_degenerate(self):
        domain = Domain.of_size(2)
        mln = compile_delta(DeltaSpec(FRIENDS_SMOKERS, domain, (0, 0)))
        with self.assertRaises(DegenerateModelError):
            count_distribution_bruteforce(mln, domain)


class DistributionCompilerTest(TestCase):
    def test_target_validation(self):
        domain = Domain.of_size(2)
        with self.assertRaises(ValueError):
            TargetDistribution([HEADS(X)], domain, {(0,): Fraction(1, 2)})
        with self.assertRaises(ValueError):
            TargetDistribution([HEADS(X)], domain, {(0,): Fraction(3, 2), (1,): Fraction(-1, 2)})
        with self.assertRaises(ValueError):
            TargetDistribution([HEADS(X)], domain, {(3,): 1})

    def test_even_heads(self):
        domain = Domain.of_size(4)
        target = {(0,): Fraction(1, 8), (2,): Fraction(3, 4), (4,): Fraction(1, 8)}
        mln = compile_distribution([HEADS(X)], domain, target)
        assert mln.num_components == 3 * 5
        distribution = count_distribution_bruteforce(mln, domain)
        assert distribution.to_list() == [0, Fraction(1, 8), 0, 0, 0, Fraction(3, 4), 0, 0, 0, Fraction(1, 8)]

    def test_unreachable_target(self):
        domain = Domain.of_size(2)
        target = {(0, 0): Fraction(1, 2), (2, 4): Fraction(1, 2)}
        with self.assertRaises(UnreachableCountError):
            compile_distribution(FRIENDS_SMOKERS, domain, target)

    @given(st.integers(2, 4), st.data())
    @settings(max_examples=8, deadline=None)
    def test_round_trip(self, size, data):
        domain = Domain.of_size(size)
        masses = data.draw(st.lists(st.integers(0, 5), min_size=size + 1, max_size=size + 1).filter(any))
        total = sum(masses)
        target = {(n,): Fraction(mass, total) for n, mass in enumerate(masses)}
        mln = compile_distribution([HEADS(X)], domain, target)
        distribution = count_distribution_bruteforce(mln, domain)
        for n, mass in enumerate(masses):
            assert distribution[(n, 1)] == Fraction(mass, total)
            assert distribution[(n, 0)] == 0

    @given(st.integers(2, 3), st.data())
    @settings(max_examples=5, deadline=None)
    def test_round_trip_through_wfomc(self, size, data):
        domain = Domain.of_size(size)
        masses = data.draw(st.lists(st.integers(0, 3), min_size=size + 1, max_size=size + 1).filter(any))
        total = sum(masses)
        target = {(n,): Fraction(mass, total) for n, mass in enumerate(masses) if mass > 0}
        mln = compile_distribution([HEADS(X)], domain, target)
        wfomc_oracle = WfomcOracle('auto')
        distribution, stats = count_distribution_via_wfomc(mln, domain, oracle=wfomc_oracle)
        for n, mass in enumerate(masses):
            assert distribution[(n, 1)] == Fraction(mass, total)
            assert distribution[(n, 0)] == 0
        # grid (|D| + 1) x 1 + 1 points, one call per point and component
        assert stats.calls == (size + 1) * 2 * mln.num_components

    def test_round_trip_through_wfomc_small(self):
        domain = Domain.of_size(2)
        mln = compile_distribution([HEADS(X)], domain, {(0,): Fraction(1, 3), (2,): Fraction(2, 3)})
        distribution, stats = count_distribution_via_wfomc(mln, domain)
        assert distribution.to_list() == [0, Fraction(1, 3), 0, 0, 0, Fraction(2, 3)]
        assert stats.calls == 36

    def test_mixture_linearity(self):
        domain = Domain.of_size(3)
        ratio = Fraction(1, 3)
        first = {(0,): Fraction(1, 2), (2,): Fraction(1, 2)}
        second = {(1,): Fraction(1, 4), (3,): Fraction(3, 4)}
        mixture = {point: ratio * first.get(point, 0) + (1 - ratio) * second.get(point, 0)
                   for point in set(first) | set(second)}
        assert mixture == {(0,): Fraction(1, 6), (1,): Fraction(1, 6), (2,): Fraction(1, 6), (3,): Fraction(1, 2)}

        first_distribution = count_distribution_bruteforce(compile_distribution([HEADS(X)], domain, first), domain)
        second_distribution = count_distribution_bruteforce(compile_distribution([HEADS(X)], domain, second), domain)
        mixture_distribution = count_distribution_bruteforce(compile_distribution([HEADS(X)], domain, mixture),
                                                             domain)
        for point, p in mixture_distribution.items():
            assert p == ratio * first_distribution[point] + (1 - ratio) * second_distribution[point]

    @given(st.data())
    @settings(max_examples=5, deadline=None)
    def test_random_mixture_linearity(self, data):
        domain = Domain.of_size(2)
        ratio = Fraction(1, 3)
        targets = list()
        for _ in range(2):
            masses = data.draw(st.lists(st.integers(0, 3), min_size=3, max_size=3).filter(any))
            targets.append({(n,): Fraction(mass, sum(masses)) for n, mass in enumerate(masses)})
        mixture = {point: ratio * targets[0][point] + (1 - ratio) * targets[1][point] for point in targets[0]}
        distributions = [count_distribution_bruteforce(compile_distribution([HEADS(X)], domain, target), domain)
                         for target in targets + [mixture]]
        for point, p in distributions[2].items():
            assert p == ratio * distributions[0][point] + (1 - ratio) * distributions[1][point]

    def test_component_count(self):
        heads_domain = Domain.of_size(3)
        targets = [
            {(1,): 1},
            {(0,): Fraction(1, 2), (3,): Fraction(1, 2)},
            {(0,): Fraction(1, 4), (1,): Fraction(1, 4), (2,): Fraction(1, 4), (3,): Fraction(1, 4)},
            {(0,): Fraction(1, 2), (1,): Fraction(1, 2), (2,): 0},
        ]
        for target in targets:
            num_positive = sum(1 for p in target.values() if p > 0)
            mln = compile_distribution([HEADS(X)], heads_domain, target)
            assert mln.num_components == num_positive * 4

        fs_domain = Domain.of_size(2)
        mln = compile_distribution(FRIENDS_SMOKERS, fs_domain, {(0, 4): Fraction(1, 3), (2, 4): Fraction(2, 3)})
        assert mln.num_components == 2 * 3 * 5
        distribution = count_distribution_bruteforce(mln, fs_domain)
        assert distribution[(0, 4, 1)] == Fraction(1, 3)
        assert distribution[(2, 4, 1)] == Fraction(2, 3)

    def test_irrational_partition_function(self):
        def raise_irrational(*args, **kwargs):
            try:
                raise NotRationalError('`1@1/5` is not rational')
            except NotRationalError as e:
                raise ImproperModelError('partition function is not a positive rational') from e

        target = {(0,): Fraction(1, 2), (2,): Fraction(1, 2)}
        with mock.patch('cmlnkit.expressivity.delta.partition_function', side_effect=raise_irrational):
            with self.assertRaises(NotRationalError):
                compile_distribution([HEADS(X)], Domain.of_size(2), target)

        with mock.patch('cmlnkit.expressivity.delta.partition_function',
                        side_effect=ImproperModelError('partition function is negative')):
            with self.assertRaises(ImproperModelError) as cm:
                compile_distribution([HEADS(X)], Domain.of_size(2), target)
            assert not isinstance(cm.exception, NotRationalError)
