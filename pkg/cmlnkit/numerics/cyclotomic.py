"""
Exact complex numbers of the form sum_e c_e * zeta_n^e with rational c_e and zeta_n = exp(i*2*pi/n).

Values are kept canonical after every operation:
  * the order n is the smallest one whose cyclotomic field contains the value;
  * the coefficients are expressed in the basis prod_q g_q^{a_q}, one factor per prime power q || n,
    where g_q is a primitive q-th root of unity inside Q(zeta_n) and 0 <= a_q < phi(q).
Zero is the empty representation and two values are equal iff their (order, coefficients) pairs are equal.
"""
from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational

import numpy as np
from sympy import factorint

from cmlnkit.common.constant import def_logger
from cmlnkit.common.errors import NotRationalError, NotRealError, BackendMismatchError

logger = def_logger.getChild(__name__)


@lru_cache(maxsize=None)
def get_field_layout(order):
    """
    One tuple (p, q, phi_q, q // p, t) per prime power q = p^k exactly dividing `order`,
    with t the exponent of the primitive q-th root of unity zeta_order^t (t = 1 mod q, t = 0 mod order / q).
    """
    layout = list()
    for p, k in sorted(factorint(order).items()):
        q = p ** k
        rest = order // q
        t = (rest * pow(rest, -1, q)) % order
        layout.append((p, q, q - q // p, q // p, t))
    return tuple(layout)


def lcm(a, b):
    return a // gcd(a, b) * b


def reduce_terms(order, terms):
    for p, q, phi_q, step, t in get_field_layout(order):
        reduced = dict()
        for e, c in terms.items():
            coord = e % q
            if coord < phi_q:
                reduced[e] = reduced.get(e, 0) + c
                continue

            # g^(phi_q + s) = -sum_{j < p - 1} g^(s + j * q / p)
            base = e - coord * t
            s = coord - phi_q
            for j in range(p - 1):
                reduced_e = (base + (s + j * step) * t) % order
                reduced[reduced_e] = reduced.get(reduced_e, 0) - c
        terms = {e: c for e, c in reduced.items() if c != 0}
    return terms


def lower_order(order, terms):
    while order > 1:
        for p, _, _, _, _ in get_field_layout(order):
            if all(e % p == 0 for e in terms):
                order //= p
                terms = reduce_terms(order, {e // p: c for e, c in terms.items()})
                break
        else:
            break
    return order, terms


def lift_terms(value, order):
    if value.order == order:
        return value.coeffs
    factor = order // value.order
    return {e * factor: c for e, c in value.coeffs.items()}


class Cyclotomic(object):
    __slots__ = ('order', 'coeffs', '_hash')

    def __init__(self, order=1, coeffs=None):
        if order < 1:
            raise ValueError('order `{}` is not expected'.format(order))

        terms = dict()
        for e, c in (coeffs or dict()).items():
            e %= order
            terms[e] = terms.get(e, 0) + Fraction(c)
        terms = {e: c for e, c in terms.items() if c != 0}
        self.order, self.coeffs = lower_order(order, reduce_terms(order, terms))
        self._hash = None

    @classmethod
    def from_canonical(cls, order, coeffs):
        obj = cls.__new__(cls)
        obj.order = order
        obj.coeffs = coeffs
        obj._hash = None
        return obj

    @classmethod
    def from_terms(cls, order, terms):
        terms = {e: c for e, c in terms.items() if c != 0}
        return cls.from_canonical(*lower_order(order, reduce_terms(order, terms)))

    @classmethod
    def from_rational(cls, value):
        value = Fraction(value)
        return cls.from_canonical(1, {0: value} if value != 0 else dict())

    @classmethod
    def root_of_unity(cls, order, exponent=1, modulus=1):
        return cls.from_terms(order, {exponent % order: Fraction(modulus)})

    @classmethod
    def zero(cls):
        return cls.from_canonical(1, dict())

    @classmethod
    def one(cls):
        return cls.from_canonical(1, {0: Fraction(1)})

    @staticmethod
    def coerce(value):
        if isinstance(value, Cyclotomic):
            return value
        if isinstance(value, (int, Rational)) and not isinstance(value, bool):
            return Cyclotomic.from_rational(value)
        if isinstance(value, (float, complex, np.floating, np.complexfloating)):
            raise BackendMismatchError('mixing exact value with float value `{}` is not expected'.format(value))
        return None

    def __add__(self, other):
        other = self.coerce(other)
        if other is None:
            return NotImplemented
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other

        order = lcm(self.order, other.order)
        terms = dict(lift_terms(self, order))
        for e, c in lift_terms(other, order).items():
            terms[e] = terms.get(e, 0) + c
        return Cyclotomic.from_terms(order, terms)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic.from_canonical(self.order, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        other = self.coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self.coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self.coerce(other)
        if other is None:
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Cyclotomic.zero()
        if other.order == 1:
            return self.scale(other.coeffs[0])
        if self.order == 1:
            return other.scale(self.coeffs[0])

        order = lcm(self.order, other.order)
        left_terms = lift_terms(self, order)
        right_terms = lift_terms(other, order)
        terms = dict()
        for e1, c1 in left_terms.items():
            for e2, c2 in right_terms.items():
                e = (e1 + e2) % order
                terms[e] = terms.get(e, 0) + c1 * c2
        return Cyclotomic.from_terms(order, terms)

    __rmul__ = __mul__

    def scale(self, factor):
        factor = Fraction(factor)
        if factor == 0:
            return Cyclotomic.zero()
        return Cyclotomic.from_canonical(self.order, {e: c * factor for e, c in self.coeffs.items()})

    def scale_nat(self, m):
        if m < 0:
            raise ValueError('negative scaling factor `{}` is not expected'.format(m))
        return self.scale(m)

    def __truediv__(self, other):
        if isinstance(other, Cyclotomic):
            other = other.try_to_rational()
        if not isinstance(other, (int, Rational)):
            return NotImplemented
        if other == 0:
            raise ZeroDivisionError('division of `{}` by zero'.format(self))
        return self.scale(1 / Fraction(other))

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError('exponent `{}` is not expected'.format(k))

        result = Cyclotomic.one()
        base = self
        while k > 0:
            if k & 1:
                result = result * base
            k >>= 1
            if k > 0:
                base = base * base
        return result

    def conjugate(self):
        return Cyclotomic.from_terms(self.order, {(-e) % self.order: c for e, c in self.coeffs.items()})

    def is_zero(self):
        return len(self.coeffs) == 0

    def is_rational(self):
        return self.order == 1

    def is_real(self):
        return self == self.conjugate()

    def try_to_rational(self):
        if self.order == 1:
            return self.coeffs.get(0, Fraction(0))
        if self.is_real():
            raise NotRationalError('`{}` is real but not rational'.format(self))
        raise NotRealError('`{}` is not real'.format(self))

    def to_complex(self):
        if not self.coeffs:
            return 0j

        exponents = np.fromiter(self.coeffs.keys(), dtype=np.float64, count=len(self.coeffs))
        values = np.fromiter((float(c) for c in self.coeffs.values()), dtype=np.float64, count=len(self.coeffs))
        return complex(np.sum(values * np.exp(2j * np.pi * exponents / self.order)))

    @property
    def size(self):
        return len(self.coeffs)

    def __eq__(self, other):
        try:
            other = self.coerce(other)
        except BackendMismatchError:
            return False
        if other is None:
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        if self._hash is None:
            if self.order == 1:
                self._hash = hash(self.coeffs.get(0, Fraction(0)))
            else:
                self._hash = hash((self.order, frozenset(self.coeffs.items())))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def terms(self):
        return sorted(self.coeffs.items())

    def __str__(self):
        if not self.coeffs:
            return '0@0'
        term_strs = list()
        for e, c in self.terms():
            phase = Fraction(e, self.order)
            term_strs.append('{}@{}'.format(c, phase))
        return ' + '.join(term_strs)

    def __repr__(self):
        return 'Cyclotomic({})'.format(str(self))


def from_polar(modulus, phase):
    phase = Fraction(phase)
    return Cyclotomic.root_of_unity(phase.denominator, phase.numerator, modulus)


def parse_exact_weight(text):
    """Parse `m@c/d` terms, optionally joined by `+`, into one exact value."""
    terms = list()
    for term_str in text.split('+'):
        term_str = term_str.strip()
        if '@' not in term_str:
            raise ValueError('exact weight term `{}` is not expected'.format(term_str))
        modulus_str, phase_str = term_str.split('@', 1)
        terms.append(from_polar(Fraction(modulus_str.strip()), Fraction(phase_str.strip())))
    return csum(terms)


def format_exact_weight(value):
    return str(Cyclotomic.coerce(value))


def add(a, b):
    return Cyclotomic.coerce(a) + b


def mul(a, b):
    return Cyclotomic.coerce(a) * b


def neg(a):
    return -Cyclotomic.coerce(a)


def pow_nat(a, k):
    return Cyclotomic.coerce(a) ** k


def scale_nat(a, m):
    return Cyclotomic.coerce(a).scale_nat(m)


def is_zero(a):
    return Cyclotomic.coerce(a).is_zero()


def eq(a, b):
    return Cyclotomic.coerce(a) == Cyclotomic.coerce(b)


def to_float(a):
    return Cyclotomic.coerce(a).to_complex()


def try_to_rational(a):
    return Cyclotomic.coerce(a).try_to_rational()


def conjugate(a):
    return Cyclotomic.coerce(a).conjugate()


def is_real(a):
    return Cyclotomic.coerce(a).is_real()


def rep_size(a):
    return Cyclotomic.coerce(a).size


def csum(values):
    """Sum many values with a single lift to the common order and a single canonicalization."""
    values = [Cyclotomic.coerce(value) for value in values]
    values = [value for value in values if value.coeffs]
    if len(values) == 0:
        return Cyclotomic.zero()
    if len(values) == 1:
        return values[0]

    order = 1
    for value in values:
        order = lcm(order, value.order)

    terms = dict()
    for value in values:
        for e, c in lift_terms(value, order).items():
            terms[e] = terms.get(e, 0) + c
    return Cyclotomic.from_terms(order, terms)
