from fractions import Fraction
from numbers import Rational

import numpy as np

from cmlnkit.common.constant import def_logger, DEFAULT_FLOAT_TOLERANCE
from cmlnkit.common.errors import BackendMismatchError, ImproperModelError, DegenerateModelError, \
    NotRationalError, NotRealError
from cmlnkit.numerics.cyclotomic import Cyclotomic, csum, from_polar

logger = def_logger.getChild(__name__)
BACKEND_CLASS_DICT = dict()


def register_backend(cls):
    BACKEND_CLASS_DICT[cls.key] = cls
    return cls


class NumericBackend(object):
    key = None
    dtype = object

    def __init__(self, tolerance=DEFAULT_FLOAT_TOLERANCE):
        self.tolerance = tolerance

    def zero(self):
        raise NotImplementedError()

    def one(self):
        raise NotImplementedError()

    def from_int(self, n):
        return self.from_rational(n)

    def from_rational(self, value):
        raise NotImplementedError()

    def from_polar(self, modulus, phase):
        raise NotImplementedError()

    def from_log_weight(self, log_weight):
        raise NotImplementedError()

    def coerce(self, value):
        raise NotImplementedError()

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def power(self, a, k):
        if k < 0:
            raise ValueError('negative exponent `{}` is not expected'.format(k))

        result = self.one()
        base = a
        while k > 0:
            if k & 1:
                result = result * base
            k >>= 1
            if k > 0:
                base = base * base
        return result

    def scale(self, a, factor):
        raise NotImplementedError()

    def total(self, values):
        raise NotImplementedError()

    def product(self, values):
        result = self.one()
        for value in values:
            result = result * value
        return result

    def is_zero(self, a):
        raise NotImplementedError()

    def equals(self, a, b):
        raise NotImplementedError()

    def to_complex(self, a):
        raise NotImplementedError()

    def conjugate(self, a):
        return a.conjugate()

    def rep_size(self, a):
        return 1

    def to_partition(self, value):
        """Validate a partition function, i.e., a real positive value."""
        raise NotImplementedError()

    def to_probability(self, value, witness=None):
        """Validate a real value in [0, 1] (after normalization)."""
        raise NotImplementedError()

    def to_report(self, value):
        raise NotImplementedError()

    def array(self, values, shape=None):
        array = np.empty(len(values), dtype=self.dtype)
        for i, value in enumerate(values):
            array[i] = value
        return array if shape is None else array.reshape(shape)


@register_backend
class ExactBackend(NumericBackend):
    """Cyclotomic-rational arithmetic: every result is exact and canonical."""
    key = 'exact'
    dtype = object

    def zero(self):
        return Cyclotomic.zero()

    def one(self):
        return Cyclotomic.one()

    def from_rational(self, value):
        return Cyclotomic.from_rational(value)

    def from_polar(self, modulus, phase):
        return from_polar(modulus, phase)

    def from_log_weight(self, log_weight):
        if log_weight == 0:
            return self.one()
        raise BackendMismatchError('log-weight `{}` has no exact representation'.format(log_weight))

    def coerce(self, value):
        return Cyclotomic.coerce(value)

    def power(self, a, k):
        return Cyclotomic.coerce(a) ** k

    def scale(self, a, factor):
        return Cyclotomic.coerce(a).scale(factor)

    def total(self, values):
        return csum(values)

    def is_zero(self, a):
        return Cyclotomic.coerce(a).is_zero()

    def equals(self, a, b):
        return Cyclotomic.coerce(a) == Cyclotomic.coerce(b)

    def to_complex(self, a):
        return Cyclotomic.coerce(a).to_complex()

    def conjugate(self, a):
        return Cyclotomic.coerce(a).conjugate()

    def rep_size(self, a):
        return Cyclotomic.coerce(a).size

    def to_partition(self, value):
        try:
            z = Cyclotomic.coerce(value).try_to_rational()
        except (NotRealError, NotRationalError) as e:
            raise ImproperModelError('partition function `{}` is not a positive rational'.format(value),
                                     witness=value) from e
        if z == 0:
            raise DegenerateModelError('partition function is zero', witness=value)
        if z < 0:
            raise ImproperModelError('partition function `{}` is negative'.format(z), witness=value)
        return z

    def to_probability(self, value, witness=None):
        try:
            p = Cyclotomic.coerce(value).try_to_rational()
        except (NotRealError, NotRationalError) as e:
            raise ImproperModelError('`{}` is not a real probability'.format(value),
                                     witness=witness if witness is not None else value) from e
        if p < 0:
            raise ImproperModelError('`{}` is a negative probability'.format(p),
                                     witness=witness if witness is not None else value)
        return p

    def to_report(self, value):
        value = Cyclotomic.coerce(value)
        if value.is_rational():
            return value.try_to_rational()
        return value


@register_backend
class FloatBackend(NumericBackend):
    """IEEE-754 double complex arithmetic; comparisons use an absolute tolerance."""
    key = 'float'
    dtype = np.complex128

    def zero(self):
        return np.complex128(0)

    def one(self):
        return np.complex128(1)

    def from_rational(self, value):
        return np.complex128(float(Fraction(value)))

    def from_polar(self, modulus, phase):
        return np.complex128(float(modulus) * np.exp(2j * np.pi * float(phase)))

    def from_log_weight(self, log_weight):
        return self.check_finite(np.complex128(np.exp(float(log_weight))))

    def coerce(self, value):
        if isinstance(value, Cyclotomic):
            raise BackendMismatchError('mixing float value with exact value `{}` is not expected'.format(value))
        if isinstance(value, (int, float, complex, Rational, np.number)):
            return np.complex128(complex(value))
        raise BackendMismatchError('value `{}` is not expected in float backend'.format(value))

    def check_finite(self, value):
        if not np.all(np.isfinite(value)):
            raise OverflowError('non-finite value `{}` in float backend'.format(value))
        return value

    def power(self, a, k):
        return self.check_finite(super().power(np.complex128(a), k))

    def scale(self, a, factor):
        return self.check_finite(np.complex128(a) * float(factor))

    def total(self, values):
        values = np.asarray(list(values), dtype=np.complex128)
        if values.size == 0:
            return self.zero()
        return self.check_finite(np.complex128(np.sum(values)))

    def is_zero(self, a):
        return abs(complex(a)) <= self.tolerance

    def equals(self, a, b):
        return abs(complex(a) - complex(b)) <= self.tolerance * max(1.0, abs(complex(a)), abs(complex(b)))

    def to_complex(self, a):
        return complex(a)

    def conjugate(self, a):
        return np.conj(np.complex128(a))

    def to_partition(self, value):
        z = complex(self.check_finite(value))
        scale = max(1.0, abs(z))
        if abs(z.imag) > self.tolerance * scale:
            raise ImproperModelError('partition function `{}` is not real'.format(z), witness=z)
        if abs(z.real) <= self.tolerance:
            raise DegenerateModelError('partition function is numerically zero', witness=z)
        if z.real < 0:
            raise ImproperModelError('partition function `{}` is negative'.format(z.real), witness=z)
        return z.real

    def to_probability(self, value, witness=None):
        p = complex(self.check_finite(value))
        if abs(p.imag) > self.tolerance:
            raise ImproperModelError('`{}` is not a real probability'.format(p),
                                     witness=witness if witness is not None else p)
        if p.real < -self.tolerance:
            raise ImproperModelError('`{}` is a negative probability'.format(p.real),
                                     witness=witness if witness is not None else p)
        return max(p.real, 0.0)

    def to_report(self, value):
        value = complex(value)
        if abs(value.imag) <= self.tolerance * max(1.0, abs(value.real)):
            return value.real
        return value


def get_backend(backend_name, tolerance=DEFAULT_FLOAT_TOLERANCE):
    if isinstance(backend_name, NumericBackend):
        return backend_name
    if backend_name not in BACKEND_CLASS_DICT:
        raise ValueError('backend_name `{}` is not expected'.format(backend_name))
    return BACKEND_CLASS_DICT[backend_name](tolerance)


def infer_backend_name(values):
    has_exact = False
    has_float = False
    for value in values:
        if isinstance(value, Cyclotomic):
            has_exact = True
        elif isinstance(value, (float, complex, np.floating, np.complexfloating)):
            has_float = True
    if has_exact and has_float:
        raise BackendMismatchError('mixing exact and float values is not expected')
    return 'float' if has_float else 'exact'
