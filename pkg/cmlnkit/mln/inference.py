import weakref

from cmlnkit.common.constant import def_logger
from cmlnkit.common.errors import ImproperModelError
from cmlnkit.logic.semantics import GroundedFormula
from cmlnkit.logic.syntax import Sentence
from cmlnkit.mln.distribution import weight_of_counts
from cmlnkit.wfomc.oracle import WfomcOracle
from cmlnkit.wfomc.reduction import mln_to_wfomc
from cmlnkit.wfomc.theory import WfomcTask

logger = def_logger.getChild(__name__)
PARTITION_CACHE = weakref.WeakKeyDictionary()


def world_counts(mln, world):
    return tuple(GroundedFormula(formula, world.index).count(world.bits) for formula in mln.formulas)


def unnormalized_weight(mln, world):
    return weight_of_counts(mln, world_counts(mln, world))


def summed_wfomc(theory, weight_maps, domain, oracle):
    backend = weight_maps[0].backend
    return backend.total(oracle(WfomcTask(theory, weights, domain)) for weights in weight_maps)


def partition_function(mln, domain, engine='auto', oracle=None, use_cache=True):
    """
    Z as the sum of one WFOMC call per component, validated to be real and positive.
    Values are cached per (model, domain, engine); a cache hit makes no oracle call.
    """
    model_cache = PARTITION_CACHE.setdefault(mln, dict())
    cache_key = (domain, engine)
    if use_cache and cache_key in model_cache:
        return model_cache[cache_key]

    oracle = WfomcOracle(engine) if oracle is None else oracle
    theory, weight_maps = mln_to_wfomc(mln)
    z = mln.backend.to_partition(summed_wfomc(theory, weight_maps, domain, oracle))
    logger.info('Partition function over {} constants: {}'.format(len(domain), z))
    model_cache[cache_key] = z
    return z


def to_bounded_probability(backend, value, witness, name):
    p = backend.to_probability(value, witness=witness)
    if p > 1 + (0 if backend.key == 'exact' else backend.tolerance):
        raise ImproperModelError('{} {} exceeds 1'.format(name, p), witness=witness)
    return p


def world_probability(mln, world, z):
    return to_bounded_probability(mln.backend, unnormalized_weight(mln, world) / z, world, 'world probability')


def marginal(mln, domain, query, engine='auto', oracle=None):
    if not query.is_ground():
        raise ValueError('query `{}` is not ground'.format(query))
    unknown = [p for p in query.predicates() if p not in mln.signature]
    if unknown:
        raise ValueError('query predicates {} are not in the model'.format([str(p) for p in unknown]))

    oracle = WfomcOracle(engine) if oracle is None else oracle
    z = partition_function(mln, domain, engine, oracle=oracle)
    theory, weight_maps = mln_to_wfomc(mln)
    numerator = summed_wfomc(theory.extend([Sentence(query)]), weight_maps, domain, oracle)
    return to_bounded_probability(mln.backend, numerator / z, query, 'marginal probability')
