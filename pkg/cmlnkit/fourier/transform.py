"""
Multidimensional DFT g(k) = sum_n f(n) exp(-i 2 pi <k, n / N>) and its inverse.
The exact transform is applied axis by axis with exact twiddle factors; the float transform uses numpy.fft.
"""
from fractions import Fraction

import numpy as np

from cmlnkit.common.constant import def_logger
from cmlnkit.fourier.grid import CountGrid
from cmlnkit.numerics.cyclotomic import Cyclotomic, csum

logger = def_logger.getChild(__name__)
TRANSFORM_FUNC_DICT = dict()


def register_transform_func(func=None, *, key=None):
    def _register_transform_func(func):
        TRANSFORM_FUNC_DICT[func.__name__ if key is None else key] = func
        return func

    if callable(func):
        return _register_transform_func(func)
    return _register_transform_func


def get_transform_func(backend_key):
    if backend_key not in TRANSFORM_FUNC_DICT:
        raise ValueError('backend_key `{}` is not expected'.format(backend_key))
    return TRANSFORM_FUNC_DICT[backend_key]


def exact_axis_transform(rows, modulus, inverse):
    sign = 1 if inverse else -1
    twiddles = [Cyclotomic.root_of_unity(modulus, sign * e) for e in range(modulus)]
    transformed = np.empty(rows.shape, dtype=object)
    for r in range(rows.shape[0]):
        row = [(n, value) for n, value in enumerate(rows[r]) if not value.is_zero()]
        for k in range(modulus):
            transformed[r, k] = csum(value * twiddles[(k * n) % modulus] for n, value in row)
    if inverse:
        factor = Fraction(1, modulus)
        for index, value in np.ndenumerate(transformed):
            transformed[index] = value.scale(factor)
    return transformed


@register_transform_func(key='exact')
def exact_transform(values, inverse=False):
    values = np.vectorize(Cyclotomic.coerce, otypes=[object])(values)
    for axis in range(values.ndim):
        moved = np.moveaxis(values, axis, -1)
        moved_shape = moved.shape
        rows = moved.reshape(-1, moved_shape[-1])
        transformed = exact_axis_transform(rows, moved_shape[-1], inverse)
        values = np.moveaxis(transformed.reshape(moved_shape), -1, axis)
    return values


@register_transform_func(key='float')
def float_transform(values, inverse=False):
    values = np.asarray(values, dtype=np.complex128)
    return np.fft.ifftn(values) if inverse else np.fft.fftn(values)


def dft(grid):
    values = get_transform_func(grid.backend.key)(grid.values, inverse=False)
    return CountGrid(grid.shape, np.ravel(values), grid.backend)


def idft(grid):
    values = get_transform_func(grid.backend.key)(grid.values, inverse=True)
    return CountGrid(grid.shape, np.ravel(values), grid.backend)
