from cmlnkit.common.constant import def_logger
from cmlnkit.fourier.oracle_dft import count_distribution_via_wfomc
from cmlnkit.mln.model import CMln
from cmlnkit.numerics.backend import get_backend

logger = def_logger.getChild(__name__)


def uniform_mln(formulas, signature=None):
    """All log-weights 0 (expweights 1, one component): every world is equally likely."""
    backend = get_backend('exact')
    return CMln([(formula, [backend.one()]) for formula in formulas], backend, signature)


def support_via_wfomc(formulas, domain, engine='auto', oracle=None, config=None, signature=None):
    """Count vectors with positive probability under the uniform model, plus the oracle statistics."""
    distribution, stats = count_distribution_via_wfomc(uniform_mln(formulas, signature), domain, engine,
                                                       oracle=oracle, config=config)
    support = distribution.support()
    logger.info('Support has {} of {} grid points'.format(len(support), distribution.shape.size))
    return support, stats
