import itertools

from cmlnkit.common.constant import def_logger
from cmlnkit.common.errors import SizeLimitError
from cmlnkit.common.yaml_util import get_max_enumerated_atoms
from cmlnkit.logic.syntax import Constant, Atom

logger = def_logger.getChild(__name__)


class Domain(object):
    def __init__(self, constants):
        constants = tuple(c if isinstance(c, Constant) else Constant(c) for c in constants)
        if len(constants) == 0:
            raise ValueError('domain must not be empty')
        if len(set(constants)) != len(constants):
            raise ValueError('domain constants `{}` are not distinct'.format([str(c) for c in constants]))
        self.constants = constants
        self.positions = {c: i for i, c in enumerate(constants)}

    @classmethod
    def of_size(cls, size, prefix='A'):
        return cls(['{}{}'.format(prefix, i + 1) for i in range(size)])

    def __len__(self):
        return len(self.constants)

    def __iter__(self):
        return iter(self.constants)

    def __contains__(self, item):
        return item in self.positions

    def __eq__(self, other):
        return isinstance(other, Domain) and self.constants == other.constants

    def __hash__(self):
        return hash(self.constants)

    def __repr__(self):
        return 'Domain({})'.format(', '.join(str(c) for c in self.constants))


class GroundAtomIndex(object):
    """Predicate-major, then lexicographic (by domain order) argument tuples."""
    def __init__(self, signature, domain):
        signature = tuple(signature)
        if len({p.name for p in signature}) != len(signature):
            raise ValueError('signature `{}` has duplicate predicate names'.format([str(p) for p in signature]))

        self.signature = signature
        self.domain = domain
        self.atoms = list()
        self.offsets = dict()
        for predicate in signature:
            self.offsets[predicate] = len(self.atoms)
            for args in itertools.product(domain.constants, repeat=predicate.arity):
                self.atoms.append(Atom(predicate, args))
        self.positions = {atom: i for i, atom in enumerate(self.atoms)}

    def __len__(self):
        return len(self.atoms)

    def __getitem__(self, i):
        return self.atoms[i]

    def index_of(self, atom):
        if atom not in self.positions:
            raise KeyError('ground atom `{}` is not expected'.format(atom))
        return self.positions[atom]

    def predicate_range(self, predicate):
        start = self.offsets[predicate]
        return range(start, start + len(self.domain) ** predicate.arity)


def ground_atom_index(signature, domain):
    if len(signature) == 0:
        raise ValueError('signature must not be empty')
    return GroundAtomIndex(signature, domain)


class GroundWorld(object):
    """A possible world: bit i is set iff ground atom i of the index is true."""
    __slots__ = ('index', 'bits')

    def __init__(self, index, bits=0):
        self.index = index
        self.bits = bits

    @classmethod
    def from_atoms(cls, index, true_atoms):
        bits = 0
        for atom in true_atoms:
            bits |= 1 << index.index_of(atom)
        return cls(index, bits)

    @property
    def signature(self):
        return self.index.signature

    @property
    def domain(self):
        return self.index.domain

    def is_true(self, atom):
        return (self.bits >> self.index.index_of(atom)) & 1 == 1

    def true_atoms(self):
        return [atom for i, atom in enumerate(self.index.atoms) if (self.bits >> i) & 1]

    def __eq__(self, other):
        return isinstance(other, GroundWorld) and self.bits == other.bits and self.index is other.index

    def __hash__(self):
        return hash(self.bits)

    def __repr__(self):
        return 'GroundWorld({{{}}})'.format(', '.join(str(atom) for atom in self.true_atoms()))


def check_enumeration_size(num_atoms, max_atoms=None):
    max_atoms = get_max_enumerated_atoms() if max_atoms is None else max_atoms
    if num_atoms > max_atoms:
        raise SizeLimitError('enumerating 2^{} worlds exceeds the cap of 2^{} worlds'.format(num_atoms, max_atoms),
                             required=num_atoms, limit=max_atoms)


def enumerate_worlds(signature, domain, max_atoms=None):
    index = signature if isinstance(signature, GroundAtomIndex) else ground_atom_index(signature, domain)
    check_enumeration_size(len(index), max_atoms)
    return (GroundWorld(index, bits) for bits in range(1 << len(index)))
