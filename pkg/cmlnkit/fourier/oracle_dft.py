from fractions import Fraction

from cmlnkit.common.constant import def_logger
from cmlnkit.common.errors import SizeLimitError
from cmlnkit.common.yaml_util import get_limit
from cmlnkit.fourier.grid import GridShape, CountGrid
from cmlnkit.fourier.transform import idft
from cmlnkit.misc.log import MetricLogger
from cmlnkit.mln.distribution import CountDistribution
from cmlnkit.mln.inference import summed_wfomc
from cmlnkit.wfomc.oracle import WfomcOracle
from cmlnkit.wfomc.reduction import mln_to_wfomc

logger = def_logger.getChild(__name__)


def dft_grid_shape(mln, domain):
    """Moduli M_i = |domain|^|vars(formula_i)| + 1."""
    return GridShape.for_counts(mln.count_axes(domain))


def phase_shifted_mln(mln, point, shape):
    """Each expweight of formula j is multiplied by exp(-i 2 pi k_j / M_j)."""
    backend = mln.backend
    phases = [backend.from_polar(1, Fraction(-k, m)) for k, m in zip(point, shape.moduli)]
    return mln.map_weights(lambda j, i, w: w * phases[j])


def dft_point_via_wfomc(mln, domain, point, engine='auto', oracle=None, shape=None):
    """Unnormalized DFT of the count distribution at `point`: the partition value of the phase-shifted model."""
    shape = dft_grid_shape(mln, domain) if shape is None else shape
    if tuple(point) not in shape:
        raise ValueError('point `{}` is not in grid {}'.format(point, shape))

    oracle = WfomcOracle(engine) if oracle is None else oracle
    theory, weight_maps = mln_to_wfomc(phase_shifted_mln(mln, point, shape))
    return summed_wfomc(theory, weight_maps, domain, oracle)


def check_grid_budget(shape, num_components, max_grid_points):
    if shape.size > max_grid_points:
        raise SizeLimitError('DFT grid {} has {} points ({} oracle calls), exceeding the budget of {} points'.format(
            list(shape.moduli), shape.size, shape.size * num_components, max_grid_points),
            required=shape.size * num_components, limit=max_grid_points)


def unnormalized_dft_grid(mln, domain, oracle, shape, log_freq=None):
    metric_logger = MetricLogger(delimiter='  ')
    points = list(shape.indices())
    log_freq = max(1, len(points) // 10) if log_freq is None else log_freq
    values = list()
    for point in metric_logger.log_every(points, log_freq, header='DFT via WFOMC:'):
        values.append(dft_point_via_wfomc(mln, domain, point, oracle=oracle, shape=shape))
        metric_logger.update(oracle_time=oracle.stats.wall_time.value, rep_size=mln.backend.rep_size(values[-1]))
    return CountGrid(shape, values, mln.backend)


def count_distribution_via_wfomc(mln, domain, engine='auto', oracle=None, config=None, log_freq=None):
    """
    Evaluates the DFT of the count distribution at every grid point through WFOMC calls,
    normalizes by the value at k = 0 (the partition function) and inverts the transform.
    Returns the distribution and the oracle statistics.
    """
    shape = dft_grid_shape(mln, domain)
    check_grid_budget(shape, mln.num_components, get_limit(config, 'max_grid_points'))
    oracle = WfomcOracle(engine) if oracle is None else oracle
    calls_before = oracle.stats.calls
    logger.info('Evaluating {} DFT points with {} component(s)'.format(shape.size, mln.num_components))

    backend = mln.backend
    grid = unnormalized_dft_grid(mln, domain, oracle, shape, log_freq)
    z = backend.to_partition(grid[(0,) * shape.ndim])
    normalized = grid.map(lambda value: value / z)
    counts = idft(normalized)
    probabilities = [backend.to_probability(value, witness=point) for point, value in counts.items()]
    logger.info('{} oracle calls for grid {}'.format(oracle.stats.calls - calls_before, list(shape.moduli)))
    return CountDistribution(shape, probabilities, backend), oracle.stats
