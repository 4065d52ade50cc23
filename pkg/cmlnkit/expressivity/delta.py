"""
Compilation of count distributions into complex MLNs.

compile_delta builds, for formulas a_1..a_m and the appended tautology, a model with one component per point k of
J = prod_i {0..|domain|^|vars(a_i)|}: formula i gets expweight exp(i 2 pi k_i / M_i) and the tautology gets
exp(-i 2 pi <k / M, n0>). Summing over J makes the unnormalized weight |J| on worlds with counts n0 and 0 elsewhere.
compile_distribution mixes such models, scaling each tautology expweight by A_j / Z_j.
"""
from fractions import Fraction

from cmlnkit.common.constant import def_logger
from cmlnkit.common.errors import DegenerateModelError, ImproperModelError, NotRationalError, UnreachableCountError
from cmlnkit.fourier.grid import GridShape
from cmlnkit.logic.syntax import TOP
from cmlnkit.mln.inference import partition_function
from cmlnkit.mln.model import CMln
from cmlnkit.numerics.backend import get_backend
from cmlnkit.numerics.cyclotomic import from_polar

logger = def_logger.getChild(__name__)


def count_grid_shape(formulas, domain):
    return GridShape.for_counts([len(domain) ** len(formula.vars()) for formula in formulas])


def with_top_coordinate(point, num_formulas):
    point = tuple(int(n) for n in point)
    if len(point) == num_formulas:
        return point + (1,)
    if len(point) == num_formulas + 1:
        return point
    raise ValueError('count vector `{}` does not match {} formulas'.format(point, num_formulas))


class DeltaSpec(object):
    """Target count vector n0 over (formulas..., true); the last coordinate is always 1."""
    def __init__(self, formulas, domain, target, signature=None):
        self.formulas = list(formulas)
        self.domain = domain
        self.signature = signature
        self.target = with_top_coordinate(target, len(self.formulas))
        self.shape = count_grid_shape(self.formulas, domain)
        if self.target[-1] != 1:
            raise ValueError('last coordinate of `{}` must be 1'.format(self.target))
        if self.target[:-1] not in self.shape:
            raise ValueError('count vector `{}` is outside the grid {}'.format(self.target, self.shape))


class TargetDistribution(object):
    """Rational probabilities A_j of count vectors j over (formulas..., true)."""
    def __init__(self, formulas, domain, probabilities, signature=None):
        self.formulas = list(formulas)
        self.domain = domain
        self.signature = signature
        self.shape = count_grid_shape(self.formulas, domain)
        self.probabilities = dict()
        for point, p in probabilities.items():
            point = with_top_coordinate(point, len(self.formulas))
            p = Fraction(p)
            if point[-1] != 1 or point[:-1] not in self.shape:
                raise ValueError('count vector `{}` is outside the grid {}'.format(point, self.shape))
            if p < 0:
                raise ValueError('probability `{}` of `{}` is negative'.format(p, point))
            self.probabilities[point] = self.probabilities.get(point, Fraction(0)) + p

        total = sum(self.probabilities.values(), Fraction(0))
        if total != 1:
            raise ValueError('target probabilities sum to {} instead of 1'.format(total))

    def positive_items(self):
        return [(point, p) for point, p in sorted(self.probabilities.items()) if p > 0]


def compile_delta(delta_spec):
    backend = get_backend('exact')
    moduli = delta_spec.shape.moduli
    n0 = delta_spec.target[:-1]
    formula_weights = [list() for _ in delta_spec.formulas]
    top_weights = list()
    for k in delta_spec.shape.indices():
        for j, (k_j, m_j) in enumerate(zip(k, moduli)):
            formula_weights[j].append(from_polar(1, Fraction(k_j, m_j)))
        top_weights.append(from_polar(1, -sum((Fraction(k_j * n_j, m_j) for k_j, n_j, m_j in zip(k, n0, moduli)),
                                              Fraction(0))))

    entries = list(zip(delta_spec.formulas, formula_weights)) + [(TOP, top_weights)]
    logger.debug('Delta model for {} has {} components'.format(delta_spec.target, len(top_weights)))
    return CMln(entries, backend, delta_spec.signature)


def compile_distribution(formulas, domain, target, engine='auto', oracle=None, signature=None):
    """
    Mixture over the positive-probability count vectors j of target; the result has
    (number of such j) * |J| components and its count distribution equals target exactly.
    """
    if not isinstance(target, TargetDistribution):
        target = TargetDistribution(formulas, domain, target, signature)

    formulas = list(formulas)
    formula_weights = [list() for _ in formulas]
    top_weights = list()
    for point, probability in target.positive_items():
        delta_mln = compile_delta(DeltaSpec(formulas, domain, point, target.signature))
        try:
            z = partition_function(delta_mln, domain, engine, oracle=oracle, use_cache=False)
        except DegenerateModelError as e:
            raise UnreachableCountError('count vector `{}` is not reachable by any world'.format(point)) from e
        except ImproperModelError as e:
            if isinstance(e.__cause__, NotRationalError):
                raise NotRationalError('delta model partition function at `{}` is not rational'.format(point)) from e
            raise

        factor = probability / z
        for j in range(len(formulas)):
            formula_weights[j].extend(delta_mln.entries[j].expweights)
        top_weights.extend(w.scale(factor) for w in delta_mln.entries[-1].expweights)

    entries = list(zip(formulas, formula_weights)) + [(TOP, top_weights)]
    return CMln(entries, get_backend('exact'), target.signature)
