import datetime
import time
from collections import deque
from logging import FileHandler, Formatter

import numpy as np

from cmlnkit.common.constant import def_logger, LOGGING_FORMAT
from cmlnkit.common.file_util import make_parent_dirs

logger = def_logger.getChild(__name__)


def setup_log_file(log_file_path):
    make_parent_dirs(log_file_path)
    file_handler = FileHandler(filename=log_file_path, mode='w')
    file_handler.setFormatter(Formatter(LOGGING_FORMAT))
    def_logger.addHandler(file_handler)


class SmoothedValue(object):
    """
    Keeps the latest `window_size` samples of a quantity (e.g., wall time of an oracle call)
    together with the running total over all samples.
    """

    def __init__(self, window_size=20, fmt='{median:.4f} ({global_avg:.4f})'):
        self.window = deque(maxlen=window_size)
        self.total = 0.0
        self.count = 0
        self.fmt = fmt

    def update(self, value):
        self.window.append(value)
        self.count += 1
        self.total += value

    def _window_stat(self, func):
        return float(func(np.asarray(self.window, dtype=float))) if self.window else 0.0

    @property
    def median(self):
        return self._window_stat(np.median)

    @property
    def max(self):
        return self._window_stat(np.max)

    @property
    def global_avg(self):
        return self.total / self.count if self.count > 0 else 0.0

    @property
    def value(self):
        return self.window[-1] if self.window else 0.0

    def __str__(self):
        return self.fmt.format(median=self.median, max=self.max, global_avg=self.global_avg, value=self.value)


class MetricLogger(object):
    """Progress reporter for long loops over DFT grid points."""

    def __init__(self, delimiter='\t'):
        self.meters = dict()
        self.delimiter = delimiter

    def update(self, **kwargs):
        for name, value in kwargs.items():
            self.meters.setdefault(name, SmoothedValue(fmt='{value} (max {max:g})')).update(value)

    def __str__(self):
        return self.delimiter.join('{}: {}'.format(name, meter) for name, meter in self.meters.items())

    def log_every(self, points, log_freq, header=''):
        num_points = len(points)
        width = len(str(num_points))
        start_time = time.time()
        for i, point in enumerate(points):
            yield point
            if log_freq <= 0 or i % log_freq != 0:
                continue

            elapsed = time.time() - start_time
            eta_seconds = elapsed / (i + 1) * (num_points - i - 1)
            logger.info(self.delimiter.join([
                header, '[{:{}d}/{}]'.format(i, width, num_points),
                'eta: {}'.format(datetime.timedelta(seconds=int(eta_seconds))), str(self)
            ]))

        total_time = datetime.timedelta(seconds=int(time.time() - start_time))
        logger.info('{} {} points in {}'.format(header, num_points, total_time))
