import os
from fractions import Fraction
from unittest import TestCase, skipUnless

import numpy as np
from hypothesis import given, settings, strategies as st
from scipy.special import comb
from scipy.stats import binom

from cmlnkit.common.errors import ImproperModelError, SizeLimitError
from cmlnkit.common.yaml_util import load_engine_config
from cmlnkit.fourier.grid import GridShape, CountGrid
from cmlnkit.fourier.oracle_dft import count_distribution_via_wfomc, dft_point_via_wfomc, dft_grid_shape
from cmlnkit.fourier.transform import dft, idft, get_transform_func
from cmlnkit.logic.syntax import Predicate, Variable, And, Or, Implies, Not
from cmlnkit.logic.world import Domain
from cmlnkit.mln.distribution import count_distribution_bruteforce
from cmlnkit.mln.model import CMln
from cmlnkit.numerics.backend import get_backend
from cmlnkit.numerics.cyclotomic import Cyclotomic, csum, from_polar
from cmlnkit.wfomc.oracle import WfomcOracle

EXACT = get_backend('exact')
FLOAT = get_backend('float')
X, Y = Variable('x'), Variable('y')
HEADS = Predicate('heads', 1)
P, Q, R = Predicate('p', 1), Predicate('q', 1), Predicate('r', 2)
SMOKES, FRIENDS = Predicate('sm', 1), Predicate('fr', 2)
FRIENDS_SMOKERS = [SMOKES(X), Implies(And(SMOKES(X), FRIENDS(X, Y)), SMOKES(Y))]
RUN_SLOW = os.environ.get('CMLNKIT_RUN_SLOW', '0') == '1'


def parity_mln():
    return CMln([(HEADS(X), [EXACT.one(), EXACT.from_polar(1, Fraction(1, 2))])], EXACT)


@st.composite
def rational_grids(draw):
    moduli = draw(st.lists(st.integers(1, 5), min_size=1, max_size=2))
    shape = GridShape(moduli)
    values = draw(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=4),
                           min_size=shape.size, max_size=shape.size))
    return CountGrid(shape, [Cyclotomic.from_rational(v) for v in values], EXACT)


@st.composite
def cyclotomic_grids(draw):
    moduli = draw(st.lists(st.integers(1, 4), min_size=1, max_size=2))
    shape = GridShape(moduli)
    values = draw(st.lists(st.one_of(st.just(Cyclotomic.zero()),
                                     st.builds(from_polar, st.integers(1, 3), st.fractions(0, 1, max_denominator=6))),
                           min_size=shape.size, max_size=shape.size))
    return CountGrid(shape, values, EXACT)


class GridTest(TestCase):
    def test_shape(self):
        shape = GridShape.for_counts([4, 9])
        assert shape.moduli == (5, 10)
        assert shape.size == 50
        assert list(shape.indices())[:3] == [(0, 0), (0, 1), (0, 2)]
        assert (4, 9) in shape
        assert (5, 0) not in shape
        with self.assertRaises(ValueError):
            GridShape([])

    def test_count_grid(self):
        grid = CountGrid.delta([3, 2], (1, 1), EXACT)
        assert grid[(1, 1)] == 1
        assert grid.total() == 1
        grid[(0, 0)] = EXACT.from_rational(2)
        assert grid.total() == 3
        with self.assertRaises(KeyError):
            grid[(3, 0)]
        with self.assertRaises(ValueError):
            CountGrid([2, 2], [EXACT.one()], EXACT)


class TransformTest(TestCase):
    def test_delta_transform_is_pure_exponential(self):
        shape = GridShape([5, 3])
        transformed = dft(CountGrid.delta(shape, (2, 1), EXACT))
        for k in shape.indices():
            expected = Cyclotomic.root_of_unity(5, -2 * k[0]) * Cyclotomic.root_of_unity(3, -k[1])
            assert transformed[k] == expected

    def test_constant_transform(self):
        shape = GridShape([4])
        transformed = dft(CountGrid.from_function(shape, lambda point: EXACT.one(), EXACT))
        assert transformed.to_list() == [4, 0, 0, 0]

    @given(rational_grids())
    @settings(max_examples=50, deadline=None)
    def test_exact_round_trip(self, grid):
        assert idft(dft(grid)).equals(grid)
        assert dft(idft(grid)).equals(grid)

    @given(rational_grids())
    @settings(max_examples=30, deadline=None)
    def test_exact_matches_float(self, grid):
        exact = dft(grid)
        approx = np.fft.fftn(np.asarray([float(v.try_to_rational()) for v in grid.to_list()])
                             .reshape(grid.shape.moduli))
        for k, value in exact.items():
            assert abs(value.to_complex() - approx[k]) < 1e-9

    @given(cyclotomic_grids())
    @settings(max_examples=30, deadline=None)
    def test_parseval_exact(self, grid):
        energy = csum(value * value.conjugate() for value in grid.to_list())
        transformed_energy = csum(value * value.conjugate() for value in dft(grid).to_list())
        assert transformed_energy == energy.scale_nat(grid.shape.size)
        assert transformed_energy.is_real()

    def test_parseval_float(self):
        values = np.exp(1j * np.arange(15)) * np.arange(15)
        grid = CountGrid([3, 5], values, FLOAT)
        energy = np.sum(np.abs(grid.values) ** 2)
        transformed_energy = np.sum(np.abs(dft(grid).values) ** 2) / grid.shape.size
        assert abs(energy - transformed_energy) < 1e-9 * energy

    def test_float_round_trip(self):
        values = np.arange(12, dtype=np.complex128)
        grid = CountGrid([3, 4], values, FLOAT)
        assert idft(dft(grid)).equals(grid)

    def test_unknown_transform(self):
        with self.assertRaises(ValueError):
            get_transform_func('quad')


class OracleDftTest(TestCase):
    def test_parity_model(self):
        wfomc_oracle = WfomcOracle('auto')
        distribution, stats = count_distribution_via_wfomc(parity_mln(), Domain.of_size(4), oracle=wfomc_oracle)
        assert distribution.to_list() == [Fraction(1, 8), 0, Fraction(3, 4), 0, Fraction(1, 8)]
        assert stats.calls == 5 * 2
        assert distribution.equals(count_distribution_bruteforce(parity_mln(), Domain.of_size(4)))

    def test_zero_point_is_partition_function(self):
        mln = CMln([(HEADS(X), [EXACT.from_rational(2)])], EXACT)
        domain = Domain.of_size(3)
        assert dft_point_via_wfomc(mln, domain, (0,)) == 27
        with self.assertRaises(ValueError):
            dft_point_via_wfomc(mln, domain, (4,))

    def test_grid_shape(self):
        mln = CMln([(HEADS(X), [EXACT.one()]), (Implies(HEADS(X), R(X, Y)), [EXACT.one()])], EXACT)
        assert dft_grid_shape(mln, Domain.of_size(3)).moduli == (4, 10)

    def test_grid_budget(self):
        config = load_engine_config()
        config['limits']['max_grid_points'] = 4
        with self.assertRaises(SizeLimitError):
            count_distribution_via_wfomc(parity_mln(), Domain.of_size(4), config=config)

    def test_binomial_counts(self):
        domain = Domain.of_size(60)
        for w in (-1, 0, 1):
            mln = CMln.classical([HEADS(X)], [w])
            distribution, _ = count_distribution_via_wfomc(mln, domain, engine='lifted', log_freq=0)
            reference = binom.pmf(np.arange(61), 60, np.exp(w) / (np.exp(w) + 1))
            assert np.max(np.abs(np.asarray(distribution.to_list()) - reference)) < 1e-9

    def test_parity_model_large_domain(self):
        distribution, _ = count_distribution_via_wfomc(parity_mln(), Domain.of_size(60), engine='lifted', log_freq=0)
        for k, p in enumerate(distribution.to_list()):
            if k % 2 == 1:
                assert p == 0
            else:
                assert p == Fraction(2 * int(comb(60, k, exact=True)), 2 ** 60)

    @given(st.lists(st.sampled_from([P(X), Q(X), R(X, Y), And(P(X), Q(X)), Or(P(X), R(X, Y)),
                                     Implies(R(X, Y), Not(P(Y)))]), min_size=1, max_size=2),
           st.integers(1, 2), st.data(), st.integers(2, 3))
    @settings(max_examples=10, deadline=None)
    def test_dft_matches_brute_force(self, formulas, num_components, data, size):
        candidates = [EXACT.one(), EXACT.from_rational(2), EXACT.from_rational(Fraction(1, 3)),
                      EXACT.from_rational(-1), EXACT.from_polar(1, Fraction(1, 4)), EXACT.from_polar(1, Fraction(1, 3))]
        entries = [(formula, [data.draw(st.sampled_from(candidates)) for _ in range(num_components)])
                   for formula in formulas]
        mln = CMln(entries, EXACT)
        domain = Domain.of_size(size)
        try:
            expected = count_distribution_bruteforce(mln, domain)
        except ImproperModelError:
            with self.assertRaises(ImproperModelError):
                count_distribution_via_wfomc(mln, domain, log_freq=0)
            return

        actual, stats = count_distribution_via_wfomc(mln, domain, log_freq=0)
        assert actual.equals(expected)
        assert stats.calls == actual.shape.size * num_components

    def test_dft_matches_brute_force_on_proper_models(self):
        models = [
            [(P(X), [EXACT.from_rational(2)])],
            [(R(X, Y), [EXACT.from_rational(Fraction(1, 2))]), (P(X), [EXACT.from_rational(3)])],
            [(P(X), [EXACT.one(), EXACT.from_polar(1, Fraction(1, 2))])],
            [(Or(P(X), R(X, Y)), [EXACT.one(), EXACT.from_polar(1, Fraction(1, 2))])],
            [(P(X), [EXACT.from_polar(1, Fraction(1, 3)), EXACT.from_polar(1, Fraction(2, 3))])],
            [(And(P(X), Q(X)), [EXACT.from_rational(3)]), (Q(X), [EXACT.from_rational(Fraction(1, 4))])],
            [(Implies(R(X, Y), P(Y)), [EXACT.from_rational(2)])],
            [(Q(X), [EXACT.from_polar(1, Fraction(1, 4)), EXACT.from_polar(1, Fraction(3, 4))])],
            [(P(X), [EXACT.from_rational(1)]), (Q(X), [EXACT.from_rational(5)])],
            [(Not(P(X)), [EXACT.from_rational(Fraction(2, 3))]), (R(X, Y), [EXACT.one()])],
        ]
        for entries in models:
            mln = CMln(entries, EXACT)
            for size in (2, 3):
                domain = Domain.of_size(size)
                actual, _ = count_distribution_via_wfomc(mln, domain, log_freq=0)
                assert actual.equals(count_distribution_bruteforce(mln, domain))


class FriendsSmokersGridTest(TestCase):
    def check_grid(self, distribution, stats):
        assert distribution.shape.moduli == (11, 101)
        assert stats.calls == 11 * 101
        # no smoker or only smokers: all 100 rule groundings hold and friendships are free
        assert abs(distribution[(0, 100)] - Fraction(1, 1024)) < 1e-12
        assert abs(distribution[(10, 100)] - Fraction(1, 1024)) < 1e-12
        assert abs(distribution[(0, 99)]) < 1e-12
        assert distribution[(5, 100)] < distribution[(5, 80)]

    def test_float_grid(self):
        mln = CMln.classical(FRIENDS_SMOKERS, [0, 0])
        distribution, stats = count_distribution_via_wfomc(mln, Domain.of_size(10), engine='lifted', log_freq=0)
        self.check_grid(distribution, stats)
        values = np.asarray(distribution.to_list())
        assert np.all(values >= 0)
        assert abs(values.sum() - 1) < 1e-9

    @skipUnless(RUN_SLOW, 'set CMLNKIT_RUN_SLOW=1 to run the exact grid at domain size 10')
    def test_exact_grid(self):
        mln = CMln([(formula, [EXACT.one()]) for formula in FRIENDS_SMOKERS], EXACT)
        distribution, stats = count_distribution_via_wfomc(mln, Domain.of_size(10), engine='lifted')
        self.check_grid(distribution, stats)
        assert distribution.total() == 1
        assert all(p >= 0 for p in distribution.to_list())
