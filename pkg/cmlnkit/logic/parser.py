import pyparsing as pp

from cmlnkit.common.constant import def_logger
from cmlnkit.common.errors import ModelParseError
from cmlnkit.logic.syntax import Predicate, Variable, Constant, Atom, Not, And, Or, Implies, Iff, TOP, BOTTOM

logger = def_logger.getChild(__name__)
pp.ParserElement.enable_packrat()

IDENTIFIER = pp.Word(pp.alphas + '_', pp.alphanums + '_')
TRUE_KEYWORD = pp.Keyword('true')
FALSE_KEYWORD = pp.Keyword('false')


def build_term(s, loc, toks):
    name = toks[0]
    if name[0].islower():
        return Variable(name)
    if name[0].isupper():
        return Constant(name)
    raise pp.ParseFatalException(s, loc, 'term `{}` must start with a letter'.format(name))


def fold_left(cls):
    def action(toks):
        items = toks[0]
        result = items[0]
        for i in range(2, len(items), 2):
            result = cls(result, items[i])
        return result
    return action


def fold_right(cls):
    def action(toks):
        items = toks[0]
        result = items[-1]
        for i in range(len(items) - 3, -1, -2):
            result = cls(items[i], result)
        return result
    return action


def fold_not(toks):
    items = toks[0]
    result = items[-1]
    for _ in range(len(items) - 1):
        result = Not(result)
    return result


class FormulaParser(object):
    """
    Parses `~ & | => <=>` formulas over `name(arg, ...)` atoms (precedence in that order, `=>` right-associative).
    With a signature (dict: name -> Predicate), undeclared predicates and arity mismatches are rejected.
    """
    def __init__(self, signature=None):
        self.signature = signature
        term = IDENTIFIER.copy().set_parse_action(build_term)
        args = pp.Suppress('(') + pp.Optional(pp.delimited_list(term)) + pp.Suppress(')')
        atom = (IDENTIFIER + pp.Group(pp.Optional(args))).set_parse_action(self.build_atom)
        operand = TRUE_KEYWORD.copy().set_parse_action(lambda: TOP) \
            | FALSE_KEYWORD.copy().set_parse_action(lambda: BOTTOM) | atom
        self.grammar = pp.infix_notation(operand, [
            (pp.Literal('~'), 1, pp.OpAssoc.RIGHT, fold_not),
            (pp.Literal('&'), 2, pp.OpAssoc.LEFT, fold_left(And)),
            (pp.Literal('|'), 2, pp.OpAssoc.LEFT, fold_left(Or)),
            (pp.Literal('=>'), 2, pp.OpAssoc.RIGHT, fold_right(Implies)),
            (pp.Literal('<=>'), 2, pp.OpAssoc.LEFT, fold_left(Iff)),
        ])

    def build_atom(self, s, loc, toks):
        name = toks[0]
        args = list(toks[1])
        if self.signature is None:
            return Atom(Predicate(name, len(args)), tuple(args))
        if name not in self.signature:
            raise pp.ParseFatalException(s, loc, 'predicate `{}` is not declared'.format(name))

        predicate = self.signature[name]
        if predicate.arity != len(args):
            raise pp.ParseFatalException(s, loc, 'predicate `{}` expects {} arguments, got {}'.format(
                name, predicate.arity, len(args)))
        return Atom(predicate, tuple(args))

    def parse(self, text, line_offset=0, column_offset=0):
        try:
            return self.grammar.parse_string(text, parse_all=True)[0]
        except pp.ParseBaseException as e:
            column = e.col + (column_offset if e.lineno == 1 else 0)
            raise ModelParseError('cannot parse formula `{}`: {}'.format(text.strip(), e.msg),
                                  line=e.lineno + line_offset, column=column) from e


def parse_formula(text, signature=None):
    if isinstance(signature, (list, tuple, set)):
        signature = {predicate.name: predicate for predicate in signature}
    return FormulaParser(signature).parse(text)
