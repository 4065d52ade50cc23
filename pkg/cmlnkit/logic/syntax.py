"""
Function-free first-order syntax: predicates, terms, atoms and quantifier-free formulas.
All nodes are immutable and hashable; two formulas are equal iff they have the same tree.
"""
from dataclasses import dataclass


@dataclass(frozen=True)
class Predicate(object):
    name: str
    arity: int

    def __post_init__(self):
        if not self.name:
            raise ValueError('predicate name must not be empty')
        if self.arity < 0:
            raise ValueError('arity `{}` is not expected'.format(self.arity))

    def __call__(self, *args):
        return Atom(self, tuple(to_term(arg) for arg in args))

    def __str__(self):
        return '{}/{}'.format(self.name, self.arity)


@dataclass(frozen=True)
class Variable(object):
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Constant(object):
    name: str

    def __str__(self):
        return self.name


def to_term(value):
    if isinstance(value, (Variable, Constant)):
        return value
    if not isinstance(value, str) or not value:
        raise ValueError('term `{}` is not expected'.format(value))
    return Variable(value) if value[0].islower() else Constant(value)


class Formula(object):
    precedence = 0

    def children(self):
        return tuple()

    def atoms(self):
        found = list()
        stack = [self]
        while stack:
            node = stack.pop()
            if isinstance(node, Atom):
                found.append(node)
            else:
                stack.extend(reversed(node.children()))
        return found

    def vars(self):
        """Variables in order of first appearance."""
        seen = dict()
        for atom in self.atoms():
            for arg in atom.args:
                if isinstance(arg, Variable):
                    seen.setdefault(arg, None)
        return tuple(seen.keys())

    def constants(self):
        seen = dict()
        for atom in self.atoms():
            for arg in atom.args:
                if isinstance(arg, Constant):
                    seen.setdefault(arg, None)
        return tuple(seen.keys())

    def predicates(self):
        seen = dict()
        for atom in self.atoms():
            seen.setdefault(atom.predicate, None)
        return tuple(seen.keys())

    def is_ground(self):
        return len(self.vars()) == 0

    def substitute(self, substitution):
        raise NotImplementedError()

    def evaluate(self, truth_fn):
        raise NotImplementedError()

    def __invert__(self):
        return Not(self)

    def __and__(self, other):
        return And(self, other)

    def __or__(self, other):
        return Or(self, other)

    def implies(self, other):
        return Implies(self, other)

    def iff(self, other):
        return Iff(self, other)

    def wrap(self, parent_precedence):
        text = str(self)
        return '({})'.format(text) if self.precedence < parent_precedence else text


@dataclass(frozen=True)
class Atom(Formula):
    predicate: Predicate
    args: tuple
    precedence = 100

    def __post_init__(self):
        if len(self.args) != self.predicate.arity:
            raise ValueError('predicate `{}` expects {} arguments, got {}'.format(
                self.predicate.name, self.predicate.arity, len(self.args)))

    def substitute(self, substitution):
        return Atom(self.predicate, tuple(substitution.get(arg, arg) for arg in self.args))

    def evaluate(self, truth_fn):
        return truth_fn(self)

    def __str__(self):
        if self.predicate.arity == 0:
            return self.predicate.name
        return '{}({})'.format(self.predicate.name, ','.join(str(arg) for arg in self.args))


@dataclass(frozen=True)
class Top(Formula):
    precedence = 100

    def substitute(self, substitution):
        return self

    def evaluate(self, truth_fn):
        return True

    def __str__(self):
        return 'true'


@dataclass(frozen=True)
class Bottom(Formula):
    precedence = 100

    def substitute(self, substitution):
        return self

    def evaluate(self, truth_fn):
        return False

    def __str__(self):
        return 'false'


@dataclass(frozen=True)
class Not(Formula):
    child: Formula
    precedence = 50

    def children(self):
        return self.child,

    def substitute(self, substitution):
        return Not(self.child.substitute(substitution))

    def evaluate(self, truth_fn):
        return not self.child.evaluate(truth_fn)

    def __str__(self):
        return '~' + self.child.wrap(self.precedence)


@dataclass(frozen=True)
class BinaryFormula(Formula):
    left: Formula
    right: Formula
    symbol = None

    def children(self):
        return self.left, self.right

    def substitute(self, substitution):
        return type(self)(self.left.substitute(substitution), self.right.substitute(substitution))

    def __str__(self):
        # both sides parenthesized at equal precedence so that printing never relies on associativity
        return '{} {} {}'.format(self.left.wrap(self.precedence + 1), self.symbol,
                                 self.right.wrap(self.precedence + 1))


@dataclass(frozen=True)
class And(BinaryFormula):
    precedence = 40
    symbol = '&'

    def evaluate(self, truth_fn):
        return self.left.evaluate(truth_fn) and self.right.evaluate(truth_fn)


@dataclass(frozen=True)
class Or(BinaryFormula):
    precedence = 30
    symbol = '|'

    def evaluate(self, truth_fn):
        return self.left.evaluate(truth_fn) or self.right.evaluate(truth_fn)


@dataclass(frozen=True)
class Implies(BinaryFormula):
    precedence = 20
    symbol = '=>'

    def evaluate(self, truth_fn):
        return (not self.left.evaluate(truth_fn)) or self.right.evaluate(truth_fn)


@dataclass(frozen=True)
class Iff(BinaryFormula):
    precedence = 10
    symbol = '<=>'

    def evaluate(self, truth_fn):
        return self.left.evaluate(truth_fn) == self.right.evaluate(truth_fn)


TOP = Top()
BOTTOM = Bottom()


def conjoin(formulas):
    formulas = list(formulas)
    if len(formulas) == 0:
        return TOP
    result = formulas[0]
    for formula in formulas[1:]:
        result = And(result, formula)
    return result


@dataclass(frozen=True)
class Sentence(object):
    """A universally quantified sentence; the quantified variables are exactly those of the body."""
    body: Formula

    def vars(self):
        return self.body.vars()

    def __str__(self):
        variables = self.vars()
        if len(variables) == 0:
            return str(self.body)
        return 'forall {}: {}'.format(','.join(str(v) for v in variables), self.body)
