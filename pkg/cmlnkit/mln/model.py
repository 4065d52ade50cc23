from cmlnkit.common.constant import def_logger
from cmlnkit.logic.syntax import Formula, TOP
from cmlnkit.numerics.backend import get_backend, infer_backend_name
from cmlnkit.wfomc.theory import merge_signatures

logger = def_logger.getChild(__name__)


class MlnEntry(object):
    def __init__(self, formula, expweights):
        if not isinstance(formula, Formula):
            raise TypeError('formula `{}` is not expected'.format(formula))
        self.formula = formula
        self.expweights = tuple(expweights)

    def __iter__(self):
        return iter((self.formula, self.expweights))

    def __repr__(self):
        return 'MlnEntry({}, [{}])'.format(self.formula, ', '.join(str(w) for w in self.expweights))


class CMln(object):
    """
    A complex Markov logic network: formulas with vectors of d exponentiated weights.
    The unnormalized weight of a world is sum_i prod_j expweights[j][i] ** N(formula_j, world).
    A classical MLN is the case d = 1 with positive real expweights.
    """
    def __init__(self, entries, backend=None, signature=None):
        entries = [entry if isinstance(entry, MlnEntry) else MlnEntry(*entry) for entry in entries]
        if len(entries) == 0:
            raise ValueError('a model needs at least one formula')

        lengths = {len(entry.expweights) for entry in entries}
        if len(lengths) != 1 or 0 in lengths:
            raise ValueError('expweight vectors must share one nonzero length, got {}'.format(sorted(lengths)))

        if backend is None:
            backend = infer_backend_name([w for entry in entries for w in entry.expweights])
        self.backend = get_backend(backend)
        self.entries = [MlnEntry(entry.formula, [self.backend.coerce(w) for w in entry.expweights])
                        for entry in entries]
        formula_predicates = [p for entry in self.entries for p in entry.formula.predicates()]
        self.signature = merge_signatures(signature or tuple(), formula_predicates)
        if len(self.signature) == 0:
            raise ValueError('a model needs at least one predicate')

    @classmethod
    def classical(cls, formulas, log_weights, signature=None):
        backend = get_backend('float')
        entries = [(formula, [backend.from_log_weight(w)]) for formula, w in zip(formulas, log_weights)]
        return cls(entries, backend, signature)

    @property
    def formulas(self):
        return [entry.formula for entry in self.entries]

    @property
    def num_components(self):
        return len(self.entries[0].expweights)

    def component(self, i):
        return [entry.expweights[i] for entry in self.entries]

    def with_top(self, expweights=None):
        if expweights is None:
            expweights = [self.backend.one()] * self.num_components
        return CMln(self.entries + [MlnEntry(TOP, expweights)], self.backend, self.signature)

    def map_weights(self, fn):
        """A copy whose expweight of entry j, component i becomes fn(j, i, expweight)."""
        entries = [MlnEntry(entry.formula, [fn(j, i, w) for i, w in enumerate(entry.expweights)])
                   for j, entry in enumerate(self.entries)]
        return CMln(entries, self.backend, self.signature)

    def count_axes(self, domain):
        """Number of groundings of each formula, i.e., the largest value of its count."""
        return [len(domain) ** len(formula.vars()) for formula in self.formulas]

    def __len__(self):
        return len(self.entries)

    def __repr__(self):
        return 'CMln(d={}, backend={}, entries={})'.format(self.num_components, self.backend.key, self.entries)
