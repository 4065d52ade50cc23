import itertools

from cmlnkit.logic.syntax import Atom, Not, And, Or, Implies, Iff, Top, Bottom


def iter_substitutions(variables, domain):
    for constants in itertools.product(domain.constants, repeat=len(variables)):
        yield dict(zip(variables, constants))


def compile_ground(formula, index):
    """Compile a ground formula into a predicate over world bitsets."""
    if isinstance(formula, Atom):
        if not formula.is_ground():
            raise ValueError('formula `{}` is not ground'.format(formula))
        for arg in formula.args:
            if arg not in index.domain:
                raise ValueError('constant `{}` is not in the domain'.format(arg))
        if formula.predicate not in index.offsets:
            raise ValueError('predicate `{}` is not in the signature'.format(formula.predicate))

        mask = 1 << index.index_of(formula)
        return lambda bits: bits & mask != 0
    if isinstance(formula, Top):
        return lambda bits: True
    if isinstance(formula, Bottom):
        return lambda bits: False
    if isinstance(formula, Not):
        child = compile_ground(formula.child, index)
        return lambda bits: not child(bits)

    left = compile_ground(formula.left, index)
    right = compile_ground(formula.right, index)
    if isinstance(formula, And):
        return lambda bits: left(bits) and right(bits)
    if isinstance(formula, Or):
        return lambda bits: left(bits) or right(bits)
    if isinstance(formula, Implies):
        return lambda bits: (not left(bits)) or right(bits)
    if isinstance(formula, Iff):
        return lambda bits: left(bits) == right(bits)
    raise TypeError('formula type `{}` is not expected'.format(type(formula).__name__))


class GroundedFormula(object):
    """All |domain|^|vars| groundings of a formula, compiled once against a ground-atom index."""
    def __init__(self, formula, index, variables=None):
        self.formula = formula
        self.index = index
        self.variables = formula.vars() if variables is None else tuple(variables)
        self.groundings = [compile_ground(formula.substitute(substitution), index)
                           for substitution in iter_substitutions(self.variables, index.domain)]

    @property
    def num_groundings(self):
        return len(self.groundings)

    def count(self, bits):
        return sum(1 for grounding in self.groundings if grounding(bits))

    def holds_everywhere(self, bits):
        return all(grounding(bits) for grounding in self.groundings)


def satisfies(world, formula):
    if not formula.is_ground():
        raise ValueError('formula `{}` contains variables {}'.format(formula, [str(v) for v in formula.vars()]))
    return compile_ground(formula, world.index)(world.bits)


def count_satisfied(formula, world):
    return GroundedFormula(formula, world.index).count(world.bits)


def is_model(world, sentences):
    bodies = [getattr(sentence, 'body', sentence) for sentence in sentences]
    return all(GroundedFormula(body, world.index).holds_everywhere(world.bits) for body in bodies)
