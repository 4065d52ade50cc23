from fractions import Fraction

from cmlnkit.common.constant import def_logger
from cmlnkit.fourier.oracle_dft import dft_grid_shape
from cmlnkit.polytope.hull import build_polytope
from cmlnkit.polytope.support import support_via_wfomc, uniform_mln

logger = def_logger.getChild(__name__)


def scale_to_q(support, formulas, domain):
    """Divides count i by |domain|^|vars(formula_i)|."""
    scales = [len(domain) ** len(formula.vars()) for formula in formulas]
    return [tuple(Fraction(n, s) for n, s in zip(point, scales)) for point in support]


def relational_marginal_polytope(formulas, domain, engine='auto', oracle=None, config=None, strategy=None,
                                 signature=None):
    support, stats = support_via_wfomc(formulas, domain, engine, oracle=oracle, config=config, signature=signature)
    points = scale_to_q(support, formulas, domain)
    polytope = build_polytope(points, strategy, dimension=len(formulas), config=config)
    report = call_count_report(formulas, domain)
    logger.info('Polytope with {} vertices from {} oracle calls (grid size {}, formula |D|^sum(v)+1 = {})'.format(
        len(polytope.vertices), stats.calls, report['grid_size'], report['sum_formula']))
    return polytope, stats


def expected_point(distribution, formulas, domain):
    """E[Q(formula_i, world)] under a count distribution; always a point of the polytope."""
    scales = [len(domain) ** len(formula.vars()) for formula in formulas]
    coordinates = [Fraction(0)] * len(formulas)
    for point, p in distribution.items():
        if p == 0:
            continue
        for i, (n, s) in enumerate(zip(point, scales)):
            coordinates[i] += Fraction(p) * Fraction(n, s)
    return tuple(coordinates)


def call_count_report(formulas, domain, num_components=1):
    """
    Oracle calls used by the DFT grid next to two closed forms: |D|^(sum_i v_i) + 1, and
    |D|^(m * sum_i v_i) for m formulas, the count of the earlier construction.
    """
    shape = dft_grid_shape(uniform_mln(formulas), domain)
    total_vars = sum(len(formula.vars()) for formula in formulas)
    grid_size = shape.size
    return {
        'grid_shape': list(shape.moduli),
        'grid_size': grid_size,
        'oracle_calls': grid_size * num_components,
        'sum_formula': len(domain) ** total_vars + 1,
        'previous_formula': len(domain) ** (len(formulas) * total_vars),
        'exceeds_sum_formula': grid_size > len(domain) ** total_vars + 1
    }
