from collections import Counter
from fractions import Fraction

import numpy as np

from cmlnkit.common.constant import def_logger
from cmlnkit.common.errors import ImproperModelError
from cmlnkit.fourier.grid import GridShape, CountGrid
from cmlnkit.logic.semantics import GroundedFormula
from cmlnkit.logic.world import ground_atom_index, check_enumeration_size
from cmlnkit.wfomc.theory import merge_signatures

logger = def_logger.getChild(__name__)


class CountDistribution(object):
    """
    Probabilities of count vectors over the grid prod_i {0..max_count_i}.
    Exact distributions hold Fractions, float distributions hold non-negative doubles.
    """
    def __init__(self, shape, probabilities, backend, fiber_sizes=None, validate=True):
        self.shape = shape if isinstance(shape, GridShape) else GridShape(shape)
        self.backend = backend
        array = np.empty(self.shape.size, dtype=object if backend.key == 'exact' else np.float64)
        for i, p in enumerate(np.ravel(probabilities) if isinstance(probabilities, np.ndarray) else probabilities):
            array[i] = p
        self.probabilities = array.reshape(self.shape.moduli)
        self.fiber_sizes = fiber_sizes
        if validate:
            self.validate()

    def validate(self):
        for point, p in self.items():
            if p < -self.backend.tolerance or (self.backend.key == 'exact' and p < 0):
                raise ImproperModelError('probability of counts {} is negative: {}'.format(point, p), witness=point)

        total = self.total()
        if self.backend.key == 'exact':
            if total != 1:
                raise ImproperModelError('probabilities sum to {} instead of 1'.format(total))
        elif abs(total - 1.0) > self.backend.tolerance * max(1, self.shape.size):
            raise ImproperModelError('probabilities sum to {} instead of 1'.format(total))

    def __getitem__(self, point):
        point = tuple(point)
        if point not in self.shape:
            raise KeyError('count vector `{}` is not in grid {}'.format(point, self.shape))
        return self.probabilities[point]

    def items(self):
        for point in self.shape.indices():
            yield point, self.probabilities[point]

    def to_list(self):
        return [self.probabilities[point] for point in self.shape.indices()]

    def total(self):
        if self.backend.key == 'exact':
            return sum(self.to_list(), Fraction(0))
        return float(np.sum(self.probabilities))

    def support(self):
        tolerance = 0 if self.backend.key == 'exact' else self.backend.tolerance
        return [point for point, p in self.items() if p > tolerance]

    def as_grid(self):
        return CountGrid(self.shape, [self.backend.from_rational(p) if self.backend.key == 'exact'
                                      else self.backend.coerce(p) for p in self.to_list()], self.backend)

    def equals(self, other, tolerance=None):
        if self.shape != other.shape:
            return False
        if tolerance is None:
            tolerance = 0 if self.backend.key == other.backend.key == 'exact' else self.backend.tolerance
        return all(abs(a - b) <= tolerance for a, b in zip(self.to_list(), other.to_list()))

    def __repr__(self):
        return 'CountDistribution({}, {})'.format(self.shape, [str(p) for p in self.to_list()])


def histogram_counts(formulas, domain, signature=None, max_atoms=None):
    """Number of worlds per count vector, found by enumerating all worlds."""
    signature = merge_signatures(signature or tuple(), [p for formula in formulas for p in formula.predicates()])
    index = ground_atom_index(signature, domain)
    check_enumeration_size(len(index), max_atoms)
    grounded_formulas = [GroundedFormula(formula, index) for formula in formulas]
    histogram = Counter()
    for bits in range(1 << len(index)):
        histogram[tuple(grounded.count(bits) for grounded in grounded_formulas)] += 1
    logger.debug('{} worlds fall into {} count vectors'.format(1 << len(index), len(histogram)))
    return histogram


def weight_of_counts(mln, counts):
    """Unnormalized weight shared by every world with the given count vector."""
    backend = mln.backend
    return backend.total(backend.product(backend.power(w, n) for w, n in zip(mln.component(i), counts))
                         for i in range(mln.num_components))


def count_distribution_bruteforce(mln, domain, max_atoms=None):
    histogram = histogram_counts(mln.formulas, domain, mln.signature, max_atoms)
    backend = mln.backend
    weights = {counts: backend.scale(weight_of_counts(mln, counts), size) for counts, size in histogram.items()}
    z = backend.to_partition(backend.total(weights.values()))
    shape = GridShape.for_counts(mln.count_axes(domain))
    zero = Fraction(0) if backend.key == 'exact' else 0.0
    probabilities = [backend.to_probability(weights[point] / z, witness=point) if point in weights else zero
                     for point in shape.indices()]
    return CountDistribution(shape, probabilities, backend, fiber_sizes=dict(histogram))


def support_bruteforce(formulas, domain, signature=None, max_atoms=None):
    return sorted(histogram_counts(formulas, domain, signature, max_atoms).keys())


def is_proper_bruteforce(mln, domain, max_atoms=None):
    try:
        count_distribution_bruteforce(mln, domain, max_atoms)
    except ImproperModelError as e:
        logger.debug('Model is not proper: {}'.format(e))
        return False
    return True


def probability_of_counts(mln, domain, counts, max_atoms=None):
    return count_distribution_bruteforce(mln, domain, max_atoms)[counts]
