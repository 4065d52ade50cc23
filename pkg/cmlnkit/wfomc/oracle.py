import time

from cmlnkit.common.constant import def_logger
from cmlnkit.common.errors import NotLiftableError
from cmlnkit.misc.log import SmoothedValue
from cmlnkit.wfomc.brute import wfomc_bruteforce
from cmlnkit.wfomc.lifted import wfomc_lifted_fo2, check_fragment

logger = def_logger.getChild(__name__)
ENGINE_FUNC_DICT = dict()


def register_engine(func=None, *, key=None):
    def _register_engine(func):
        ENGINE_FUNC_DICT[func.__name__ if key is None else key] = func
        return func

    if callable(func):
        return _register_engine(func)
    return _register_engine


@register_engine(key='brute')
def run_brute(task, max_atoms=None):
    return wfomc_bruteforce(task, max_atoms=max_atoms)


@register_engine(key='lifted')
def run_lifted(task, max_atoms=None):
    return wfomc_lifted_fo2(task)


def get_engine(engine_name):
    if engine_name not in ENGINE_FUNC_DICT:
        raise ValueError('engine_name `{}` is not expected'.format(engine_name))
    return ENGINE_FUNC_DICT[engine_name]


def select_engine(task, engine_name):
    if engine_name != 'auto':
        return engine_name
    try:
        check_fragment(task.theory)
    except NotLiftableError as e:
        logger.debug('Falling back to brute force: {}'.format(e))
        return 'brute'
    return 'lifted'


class OracleStats(object):
    def __init__(self):
        self.calls = 0
        self.engines = list()
        self.wall_time = SmoothedValue(window_size=100, fmt='{median:.4f} ({global_avg:.4f})')
        self.max_rep_size = 0

    def record(self, engine_name, elapsed, rep_size):
        self.calls += 1
        self.engines.append(engine_name)
        self.wall_time.update(elapsed)
        self.max_rep_size = max(self.max_rep_size, rep_size)

    def engine_counts(self):
        counts = dict()
        for engine_name in self.engines:
            counts[engine_name] = counts.get(engine_name, 0) + 1
        return counts

    def summary(self):
        """Call accounting only; wall times are logged by `log_timing`."""
        return {
            'calls': self.calls,
            'engines': self.engine_counts(),
            'max_rep_size': self.max_rep_size
        }

    def log_timing(self):
        logger.info('Oracle time: {:.4f} s in total, {:.4f} s per call'.format(
            self.wall_time.total, self.wall_time.global_avg))

    def __str__(self):
        return 'calls: {}, engines: {}, time/call: {}'.format(self.calls, self.engine_counts(), self.wall_time)


class WfomcOracle(object):
    """Dispatches WFOMC tasks to an engine and counts every call."""
    def __init__(self, engine='auto', stats=None, max_atoms=None):
        if engine != 'auto':
            get_engine(engine)
        self.engine = engine
        self.stats = OracleStats() if stats is None else stats
        self.max_atoms = max_atoms

    def __call__(self, task):
        engine_name = select_engine(task, self.engine)
        start_time = time.time()
        value = get_engine(engine_name)(task, max_atoms=self.max_atoms)
        elapsed = time.time() - start_time
        rep_size = task.backend.rep_size(value)
        self.stats.record(engine_name, elapsed, rep_size)
        logger.debug('WFOMC call #{} via {}: {:.4f} s, representation size {}'.format(
            self.stats.calls, engine_name, elapsed, rep_size))
        return value


def oracle(task, engine='auto', stats=None, max_atoms=None):
    wfomc_oracle = WfomcOracle(engine, stats=stats, max_atoms=max_atoms)
    value = wfomc_oracle(task)
    return value, wfomc_oracle.stats
