"""
Domain-lifted weighted model counting for the two-variable fragment via cell (1-type) decomposition.
"""
import itertools
from collections import defaultdict
from math import factorial

from cmlnkit.common.constant import def_logger
from cmlnkit.common.errors import NotLiftableError
from cmlnkit.logic.semantics import compile_ground
from cmlnkit.logic.syntax import Atom, Constant, conjoin
from cmlnkit.logic.world import Domain, GroundAtomIndex

logger = def_logger.getChild(__name__)
FIRST, SECOND = Constant('A'), Constant('B')
LOCAL_DOMAIN = Domain([FIRST, SECOND])


def check_fragment(theory):
    for predicate in theory.signature:
        if predicate.arity > 2:
            raise NotLiftableError('predicate `{}` has arity {} > 2'.format(predicate.name, predicate.arity))
    for sentence in theory.sentences:
        if len(sentence.vars()) > 2:
            raise NotLiftableError('sentence `{}` has {} variables'.format(sentence, len(sentence.vars())))
        if len(sentence.body.constants()) > 0:
            raise NotLiftableError('sentence `{}` mentions constants'.format(sentence))


def ground_on_pair(sentence, first, second):
    variables = sentence.vars()
    body = sentence.body
    if len(variables) == 0:
        return body
    if len(variables) == 1:
        return body.substitute({variables[0]: first}) & body.substitute({variables[0]: second})
    return body.substitute({variables[0]: first, variables[1]: second})


def iter_compositions(total, num_parts):
    if num_parts == 1:
        yield total,
        return
    for head in range(total + 1):
        for tail in iter_compositions(total - head, num_parts - 1):
            yield (head,) + tail


def multinomial(total, parts):
    result = factorial(total)
    for part in parts:
        result //= factorial(part)
    return result


class PowerCache(object):
    """Powers of each distinct value, extended one multiplication at a time."""
    def __init__(self, backend):
        self.backend = backend
        self.powers = dict()
        self.products = dict()

    def power(self, value, exponent):
        powers = self.powers.setdefault(value, [self.backend.one()])
        while len(powers) <= exponent:
            powers.append(powers[-1] * value)
        return powers[exponent]

    def product(self, key):
        if key not in self.products:
            value = self.backend.one()
            for base, exponent in sorted(key, key=lambda item: item[1]):
                value = value * self.power(base, exponent)
            self.products[key] = value
        return self.products[key]


class CellDecomposition(object):
    def __init__(self, task):
        check_fragment(task.theory)
        self.task = task
        self.backend = task.backend
        signature = task.theory.signature
        self.nullary = [p for p in signature if p.arity == 0]
        self.unary = [p for p in signature if p.arity == 1]
        self.binary = [p for p in signature if p.arity == 2]
        self.index = GroundAtomIndex(signature, LOCAL_DOMAIN)

        sentences = task.theory.sentences
        self.psi_single = compile_ground(conjoin(ground_on_pair(s, FIRST, FIRST) for s in sentences), self.index)
        psi_pair = conjoin([ground_on_pair(s, FIRST, SECOND) for s in sentences]
                           + [ground_on_pair(s, SECOND, FIRST) for s in sentences])
        self.psi_pair = compile_ground(psi_pair, self.index)

        self.nullary_atoms = [Atom(p, tuple()) for p in self.nullary]
        self.first_atoms = [Atom(p, (FIRST,)) for p in self.unary] + [Atom(p, (FIRST, FIRST)) for p in self.binary]
        self.second_atoms = [Atom(p, (SECOND,)) for p in self.unary] \
            + [Atom(p, (SECOND, SECOND)) for p in self.binary]
        self.mixed_atoms = [Atom(p, (FIRST, SECOND)) for p in self.binary] \
            + [Atom(p, (SECOND, FIRST)) for p in self.binary]

    def mask(self, atom):
        return 1 << self.index.index_of(atom)

    def assignments(self, atoms):
        """(bits, weight) for every truth assignment to `atoms`."""
        weights = self.task.weights
        masks = [self.mask(atom) for atom in atoms]
        for truth in itertools.product((False, True), repeat=len(atoms)):
            bits = 0
            value = self.backend.one()
            for is_true, mask, atom in zip(truth, masks, atoms):
                w, w_bar = weights.get(atom.predicate)
                if is_true:
                    bits |= mask
                    value = value * w
                else:
                    value = value * w_bar
            yield bits, value

    def cells(self, nullary_bits):
        first_to_second = dict(zip(self.first_atoms, self.second_atoms))
        cells = list()
        for bits, value in self.assignments(self.first_atoms):
            if self.backend.is_zero(value) or not self.psi_single(nullary_bits | bits):
                continue

            second_bits = 0
            for atom in self.first_atoms:
                if bits & self.mask(atom):
                    second_bits |= self.mask(first_to_second[atom])
            cells.append((bits, second_bits, value))
        return cells

    def pair_weight(self, nullary_bits, first_cell, second_cell, mixed):
        bits = nullary_bits | first_cell[0] | second_cell[1]
        return self.backend.total(value for mixed_bits, value in mixed if self.psi_pair(bits | mixed_bits))

    def count_given_nullary(self, nullary_bits, domain_size):
        cells = self.cells(nullary_bits)
        num_cells = len(cells)
        if num_cells == 0:
            return self.backend.zero()

        mixed = list(self.assignments(self.mixed_atoms))
        pair_weights = dict()
        for i, j in itertools.combinations_with_replacement(range(num_cells), 2):
            pair_weights[(i, j)] = self.pair_weight(nullary_bits, cells[i], cells[j], mixed)
        logger.debug('{} cells, {} pair weights'.format(num_cells, len(pair_weights)))

        one = self.backend.one()
        multiplicities = defaultdict(int)
        for composition in iter_compositions(domain_size, num_cells):
            exponents = defaultdict(int)
            for i, n_i in enumerate(composition):
                if n_i == 0:
                    continue
                exponents[cells[i][2]] += n_i
                exponents[pair_weights[(i, i)]] += n_i * (n_i - 1) // 2
                for j in range(i + 1, num_cells):
                    exponents[pair_weights[(i, j)]] += n_i * composition[j]

            if any(e > 0 and self.backend.is_zero(v) for v, e in exponents.items()):
                continue
            key = frozenset((v, e) for v, e in exponents.items() if e > 0 and not self.backend.equals(v, one))
            multiplicities[key] += multinomial(domain_size, composition)

        cache = PowerCache(self.backend)
        return self.backend.total(self.backend.scale(cache.product(key), multiplicity)
                                  for key, multiplicity in multiplicities.items())

    def count(self):
        domain_size = len(self.task.domain)
        terms = list()
        for nullary_bits, nullary_weight in self.assignments(self.nullary_atoms):
            if self.backend.is_zero(nullary_weight):
                continue
            terms.append(nullary_weight * self.count_given_nullary(nullary_bits, domain_size))
        return self.backend.total(terms)


def wfomc_lifted_fo2(task):
    return CellDecomposition(task).count()
