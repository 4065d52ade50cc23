import itertools

import numpy as np


class GridShape(object):
    def __init__(self, moduli):
        moduli = tuple(int(m) for m in moduli)
        if len(moduli) == 0 or any(m < 1 for m in moduli):
            raise ValueError('grid moduli `{}` are not expected'.format(moduli))
        self.moduli = moduli

    @classmethod
    def for_counts(cls, max_counts):
        """Counts range over 0..max_count inclusive, i.e., modulus max_count + 1 per axis."""
        return cls([m + 1 for m in max_counts])

    @property
    def ndim(self):
        return len(self.moduli)

    @property
    def size(self):
        size = 1
        for m in self.moduli:
            size *= m
        return size

    def indices(self):
        """Row-major (lexicographic) order."""
        return itertools.product(*[range(m) for m in self.moduli])

    def __contains__(self, point):
        return len(point) == self.ndim and all(0 <= n < m for n, m in zip(point, self.moduli))

    def __eq__(self, other):
        return isinstance(other, GridShape) and self.moduli == other.moduli

    def __hash__(self):
        return hash(self.moduli)

    def __iter__(self):
        return iter(self.moduli)

    def __repr__(self):
        return 'GridShape({})'.format(list(self.moduli))


class CountGrid(object):
    """Dense values over a grid; exact values live in an object array, float values in a complex array."""
    def __init__(self, shape, values, backend):
        shape = shape if isinstance(shape, GridShape) else GridShape(shape)
        if not isinstance(values, np.ndarray) or values.dtype != backend.dtype:
            values = backend.array(list(np.ravel(values)) if isinstance(values, np.ndarray) else list(values))
        if values.size != shape.size:
            raise ValueError('{} values do not fit grid {}'.format(values.size, shape))

        self.shape = shape
        self.values = values.reshape(shape.moduli).copy()
        self.backend = backend

    @classmethod
    def from_function(cls, shape, fn, backend):
        shape = shape if isinstance(shape, GridShape) else GridShape(shape)
        return cls(shape, [fn(point) for point in shape.indices()], backend)

    @classmethod
    def zeros(cls, shape, backend):
        return cls.from_function(shape, lambda point: backend.zero(), backend)

    @classmethod
    def delta(cls, shape, target, backend):
        target = tuple(target)
        return cls.from_function(shape, lambda point: backend.one() if point == target else backend.zero(), backend)

    def __getitem__(self, point):
        point = tuple(point)
        if point not in self.shape:
            raise KeyError('point `{}` is not in grid {}'.format(point, self.shape))
        return self.values[point]

    def __setitem__(self, point, value):
        self.values[tuple(point)] = value

    def items(self):
        for point in self.shape.indices():
            yield point, self.values[point]

    def to_list(self):
        return [self.values[point] for point in self.shape.indices()]

    def total(self):
        return self.backend.total(self.to_list())

    def map(self, fn):
        return CountGrid(self.shape, [fn(value) for value in self.to_list()], self.backend)

    def equals(self, other):
        if self.shape != other.shape:
            return False
        return all(self.backend.equals(a, b) for a, b in zip(self.to_list(), other.to_list()))

    def __repr__(self):
        return 'CountGrid({}, backend={})'.format(self.shape, self.backend.key)
