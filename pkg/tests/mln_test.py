from fractions import Fraction
from unittest import TestCase

from hypothesis import given, settings, strategies as st

from cmlnkit.common.errors import BackendMismatchError, DegenerateModelError, ImproperModelError
from cmlnkit.logic.syntax import Predicate, Variable, Constant, Atom, Not, And, Or, Implies, Iff
from cmlnkit.logic.world import Domain, GroundWorld, ground_atom_index, enumerate_worlds
from cmlnkit.mln.distribution import count_distribution_bruteforce, is_proper_bruteforce, probability_of_counts, \
    weight_of_counts, histogram_counts
from cmlnkit.mln.inference import partition_function, marginal, world_probability, unnormalized_weight, world_counts, \
    summed_wfomc
from cmlnkit.mln.model import CMln
from cmlnkit.numerics.backend import get_backend
from cmlnkit.wfomc.oracle import WfomcOracle
from cmlnkit.wfomc.reduction import mln_to_wfomc

EXACT = get_backend('exact')
X, Y = Variable('x'), Variable('y')
HEADS = Predicate('heads', 1)
SMOKES, FRIENDS = Predicate('sm', 1), Predicate('fr', 2)
FRIENDS_SMOKERS = [SMOKES(X), Implies(And(SMOKES(X), FRIENDS(X, Y)), SMOKES(Y))]
FS_INDEX = ground_atom_index([SMOKES, FRIENDS], Domain.of_size(2))


def parity_mln():
    return CMln([(HEADS(X), [EXACT.one(), EXACT.from_polar(1, Fraction(1, 2))])], EXACT)


class CMlnTest(TestCase):
    def test_construction(self):
        mln = parity_mln()
        assert mln.num_components == 2
        assert len(mln) == 1
        assert mln.signature == (HEADS,)
        assert mln.component(1) == [-1]
        assert mln.count_axes(Domain.of_size(4)) == [4]

    def test_invalid_models(self):
        with self.assertRaises(ValueError):
            CMln([])
        with self.assertRaises(ValueError):
            CMln([(HEADS(X), [1]), (SMOKES(X), [1, 1])])
        with self.assertRaises(BackendMismatchError):
            CMln([(HEADS(X), [EXACT.one()]), (SMOKES(X), [0.5])])

    def test_classical(self):
        mln = CMln.classical(FRIENDS_SMOKERS, [0, 0])
        assert mln.backend.key == 'float'
        assert mln.num_components == 1
        assert mln.count_axes(Domain.of_size(3)) == [3, 9]

    def test_with_top_and_map_weights(self):
        mln = parity_mln().with_top()
        assert len(mln) == 2
        assert mln.component(1) == [-1, 1]
        doubled = mln.map_weights(lambda j, i, w: w * 2)
        assert doubled.component(0) == [2, 2]


class PartitionFunctionTest(TestCase):
    def test_uniform_heads(self):
        mln = CMln([(HEADS(X), [EXACT.one()])], EXACT)
        for engine in ('brute', 'lifted', 'auto'):
            assert partition_function(mln, Domain.of_size(4), engine) == 16

    def test_parity(self):
        assert partition_function(parity_mln(), Domain.of_size(4)) == 16

    def test_cache(self):
        mln = parity_mln()
        wfomc_oracle = WfomcOracle('lifted')
        domain = Domain.of_size(3)
        partition_function(mln, domain, 'lifted', oracle=wfomc_oracle)
        partition_function(mln, domain, 'lifted', oracle=wfomc_oracle)
        assert wfomc_oracle.stats.calls == 2
        partition_function(mln, domain, 'lifted', oracle=wfomc_oracle, use_cache=False)
        assert wfomc_oracle.stats.calls == 4

    def test_friends_smokers(self):
        mln = CMln([(formula, [EXACT.one()]) for formula in FRIENDS_SMOKERS], EXACT)
        assert partition_function(mln, Domain.of_size(3), 'brute') == 2 ** 12
        assert partition_function(mln, Domain.of_size(10), 'lifted') == 2 ** 110

    def test_classical_friends_smokers(self):
        mln = CMln.classical(FRIENDS_SMOKERS, [0, 0])
        assert abs(partition_function(mln, Domain.of_size(3)) - 2 ** 12) < 1e-6

    def test_degenerate(self):
        mln = CMln([(HEADS(X), [EXACT.from_rational(-1)])], EXACT)
        with self.assertRaises(DegenerateModelError):
            partition_function(mln, Domain.of_size(1))

    def test_not_real(self):
        mln = CMln([(HEADS(X), [EXACT.from_polar(1, Fraction(1, 4))])], EXACT)
        with self.assertRaises(ImproperModelError):
            partition_function(mln, Domain.of_size(1))


class CountDistributionTest(TestCase):
    def test_parity(self):
        distribution = count_distribution_bruteforce(parity_mln(), Domain.of_size(4))
        assert distribution.to_list() == [Fraction(1, 8), 0, Fraction(3, 4), 0, Fraction(1, 8)]
        assert distribution.fiber_sizes == {(0,): 1, (1,): 4, (2,): 6, (3,): 4, (4,): 1}
        assert distribution.support() == [(0,), (2,), (4,)]
        assert distribution.total() == 1

    def test_weight_of_counts(self):
        assert weight_of_counts(parity_mln(), (2,)) == 2
        assert weight_of_counts(parity_mln(), (3,)) == 0

    def test_histogram(self):
        histogram = histogram_counts(FRIENDS_SMOKERS, Domain.of_size(2))
        assert sum(histogram.values()) == 2 ** 6
        assert histogram[(0, 4)] == 2 ** 4

    def test_probability_of_counts(self):
        assert probability_of_counts(parity_mln(), Domain.of_size(4), (2,)) == Fraction(3, 4)
        with self.assertRaises(KeyError):
            probability_of_counts(parity_mln(), Domain.of_size(4), (5,))

    def test_improper(self):
        # Z = (1 - 1/2)^2 > 0, but each one-head world weighs -1/2
        mln = CMln([(HEADS(X), [EXACT.from_rational(Fraction(-1, 2))])], EXACT)
        assert not is_proper_bruteforce(mln, Domain.of_size(2))
        with self.assertRaises(ImproperModelError):
            count_distribution_bruteforce(mln, Domain.of_size(2))
        assert is_proper_bruteforce(parity_mln(), Domain.of_size(4))

    def test_float_equals_exact(self):
        exact = count_distribution_bruteforce(CMln([(f, [EXACT.one()]) for f in FRIENDS_SMOKERS], EXACT),
                                              Domain.of_size(2))
        approx = count_distribution_bruteforce(CMln.classical(FRIENDS_SMOKERS, [0, 0]), Domain.of_size(2))
        assert approx.equals(exact, tolerance=1e-12)
        assert not exact.equals(count_distribution_bruteforce(parity_mln(), Domain.of_size(4)))


class WorldQueryTest(TestCase):
    def test_world_probability(self):
        mln = parity_mln()
        domain = Domain.of_size(4)
        z = partition_function(mln, domain)
        index = ground_atom_index(mln.signature, domain)
        two_heads = GroundWorld.from_atoms(index, [HEADS('A1'), HEADS('A2')])
        one_head = GroundWorld.from_atoms(index, [HEADS('A1')])
        assert unnormalized_weight(mln, two_heads) == 2
        assert world_probability(mln, two_heads, z) == Fraction(1, 8)
        assert world_probability(mln, one_head, z) == 0

    def test_marginal(self):
        domain = Domain.of_size(3)
        uniform = CMln([(HEADS(X), [EXACT.one()])], EXACT)
        assert marginal(uniform, domain, HEADS(Constant('A1'))) == Fraction(1, 2)
        assert marginal(uniform, domain, HEADS('A1') & HEADS('A2')) == Fraction(1, 4)
        # parity model at |D| = 4: P(heads(A1)) = sum_k q(k) k / 4
        assert marginal(parity_mln(), Domain.of_size(4), HEADS('A1')) == Fraction(1, 2)

    def test_marginal_errors(self):
        uniform = CMln([(HEADS(X), [EXACT.one()])], EXACT)
        with self.assertRaises(ValueError):
            marginal(uniform, Domain.of_size(2), HEADS(X))
        with self.assertRaises(ValueError):
            marginal(uniform, Domain.of_size(2), SMOKES('A1'))

    def test_marginal_above_one(self):
        # |D| = 1: world weights 1, 1, 1, -2 give Z = 1 while the worlds without heads weigh 2
        tails = Predicate('tails', 1)
        mln = CMln([(HEADS(X), [EXACT.one()]), (And(HEADS(X), tails(X)), [EXACT.from_rational(-2)])], EXACT)
        domain = Domain.of_size(1)
        assert partition_function(mln, domain) == 1
        with self.assertRaises(ImproperModelError):
            marginal(mln, domain, Not(HEADS('A1')))
        with self.assertRaises(ImproperModelError):
            marginal(mln, domain, HEADS('A1'))
        assert marginal(mln, domain, tails('A1') | ~tails('A1')) == 1

    @given(st.sampled_from(FS_INDEX.atoms), st.sampled_from(FS_INDEX.atoms),
           st.sampled_from([And, Or, Implies, Iff]), st.booleans())
    @settings(max_examples=20, deadline=None)
    def test_marginal_of_complement(self, left, right, connective, negate_left):
        mln = CMln([(formula, [EXACT.from_rational(2)]) for formula in FRIENDS_SMOKERS], EXACT)
        query = connective(Not(left) if negate_left else left, right)
        p = marginal(mln, FS_INDEX.domain, query)
        assert 0 <= p <= 1
        assert p + marginal(mln, FS_INDEX.domain, Not(query)) == 1


def swap_constants(world, first, second):
    swap = {first: second, second: first}
    atoms = [Atom(atom.predicate, tuple(swap.get(arg, arg) for arg in atom.args)) for atom in world.true_atoms()]
    return GroundWorld.from_atoms(world.index, atoms)


class ExchangeabilityTest(TestCase):
    def setUp(self):
        self.mln = CMln([(SMOKES(X), [EXACT.one(), EXACT.from_rational(-1)]),
                         (FRIENDS_SMOKERS[1], [EXACT.from_rational(2), EXACT.from_rational(2)])], EXACT)
        self.z = partition_function(self.mln, FS_INDEX.domain)

    @given(st.integers(0, 2 ** len(FS_INDEX) - 1), st.integers(0, 2 ** len(FS_INDEX) - 1))
    @settings(max_examples=100, deadline=None)
    def test_equal_counts_equal_probability(self, first_bits, second_bits):
        first, second = GroundWorld(FS_INDEX, first_bits), GroundWorld(FS_INDEX, second_bits)
        swapped = swap_constants(first, Constant('A1'), Constant('A2'))
        assert world_counts(self.mln, swapped) == world_counts(self.mln, first)
        p = world_probability(self.mln, first, self.z)
        assert world_probability(self.mln, swapped, self.z) == p
        if world_counts(self.mln, second) == world_counts(self.mln, first):
            assert world_probability(self.mln, second, self.z) == p

    def test_probabilities_sum_to_one(self):
        worlds = list(enumerate_worlds(FS_INDEX, FS_INDEX.domain))
        assert sum((world_probability(self.mln, world, self.z) for world in worlds), Fraction(0)) == 1


def exact_weights(num_components):
    phases = st.fractions(min_value=0, max_value=1, max_denominator=4)
    return st.lists(st.builds(EXACT.from_polar, st.integers(1, 3), phases),
                    min_size=num_components, max_size=num_components)


class PartitionIdentityTest(TestCase):
    @given(exact_weights(2), exact_weights(2))
    @settings(max_examples=10, deadline=None)
    def test_wfomc_equals_world_sum(self, smokes_weights, rule_weights):
        mln = CMln([(FRIENDS_SMOKERS[0], smokes_weights), (FRIENDS_SMOKERS[1], rule_weights)], EXACT)
        theory, weight_maps = mln_to_wfomc(mln)
        worlds = enumerate_worlds(FS_INDEX, FS_INDEX.domain)
        world_sum = EXACT.total(unnormalized_weight(mln, world) for world in worlds)
        for engine in ('brute', 'lifted'):
            assert summed_wfomc(theory, weight_maps, FS_INDEX.domain, WfomcOracle(engine)) == world_sum
