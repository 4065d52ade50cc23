from cmlnkit.common.constant import def_logger, XI_PREFIX
from cmlnkit.logic.syntax import Predicate, Iff, Sentence
from cmlnkit.wfomc.theory import Theory, WeightMap

logger = def_logger.getChild(__name__)


def fresh_predicate_name(index, taken_names):
    name = '{}{}'.format(XI_PREFIX, index)
    while name in taken_names:
        name += '_'
    return name


def mln_to_wfomc(mln):
    """
    One sentence `forall vars: xi_i(vars) <=> formula_i` per entry, plus one weight map per component
    with w(xi_i) = expweight_i and w_bar(xi_i) = 1; the weight maps' WFOMC values sum to the partition function.
    """
    taken_names = {p.name for p in mln.signature}
    sentences = list()
    xi_predicates = list()
    for i, formula in enumerate(mln.formulas):
        variables = formula.vars()
        name = fresh_predicate_name(i + 1, taken_names)
        taken_names.add(name)
        xi = Predicate(name, len(variables))
        xi_predicates.append(xi)
        sentences.append(Sentence(Iff(xi(*variables), formula)))

    theory = Theory(sentences, tuple(mln.signature) + tuple(xi_predicates))
    one = mln.backend.one()
    weight_maps = list()
    for component in range(mln.num_components):
        weights = {xi: (w, one) for xi, w in zip(xi_predicates, mln.component(component))}
        weight_maps.append(WeightMap(mln.backend, weights))
    logger.debug('Reduced {} formulas to {} sentences with {} weight maps'.format(
        len(mln), len(sentences), len(weight_maps)))
    return theory, weight_maps
