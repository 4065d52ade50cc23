"""
Model files, one declaration per line (`#` starts a comment):

    domain 4                      # constants A1..A4, or `domain {Alice, Bob}`
    heads/1                       # predicate declaration
    cw [1@0, 1@1/2] :: heads(x)   # exact complex expweights m@c/d = m * exp(i 2 pi c / d), terms joined by `+`
    w 0.5 :: heads(x)             # real log-weight (float backend, expweight exp(0.5))

Target files hold `n1,n2,... : p/q` lines.
"""
from fractions import Fraction

import numpy as np
import pyparsing as pp

from cmlnkit.common.constant import def_logger
from cmlnkit.common.errors import ModelParseError
from cmlnkit.logic.parser import FormulaParser, IDENTIFIER
from cmlnkit.logic.syntax import Predicate
from cmlnkit.logic.world import Domain
from cmlnkit.mln.model import CMln
from cmlnkit.numerics.backend import get_backend
from cmlnkit.numerics.cyclotomic import from_polar, csum, format_exact_weight

logger = def_logger.getChild(__name__)

NATURAL = pp.Word(pp.nums).set_parse_action(lambda toks: int(toks[0]))
RATIONAL = pp.Combine(pp.Optional(pp.one_of('+ -')) + pp.Word(pp.nums)
                      + pp.Optional('.' + pp.Word(pp.nums) | '/' + pp.Word(pp.nums))) \
    .set_parse_action(lambda toks: Fraction(toks[0]))
WEIGHT_TERM = (RATIONAL + pp.Suppress('@') + RATIONAL).set_parse_action(lambda toks: from_polar(toks[0], toks[1]))
EXACT_WEIGHT = pp.delimited_list(WEIGHT_TERM, delim='+').set_parse_action(lambda toks: csum(toks))
REAL = pp.pyparsing_common.fnumber

DOMAIN_LINE = pp.Keyword('domain') + (NATURAL | pp.Group(pp.Suppress('{') + pp.delimited_list(IDENTIFIER)
                                                          + pp.Suppress('}')))
PREDICATE_LINE = IDENTIFIER + pp.Suppress('/') + NATURAL
COMPLEX_WEIGHT_LINE = pp.Keyword('cw') + pp.Suppress('[') + pp.Group(pp.delimited_list(EXACT_WEIGHT)) \
    + pp.Suppress(']') + pp.Suppress('::')
REAL_WEIGHT_LINE = pp.Keyword('w') + REAL + pp.Suppress('::')
TARGET_LINE = pp.Group(pp.delimited_list(NATURAL)) + pp.Suppress(':') + RATIONAL


def strip_comment(line):
    return line.split('#', 1)[0].rstrip()


def parse_line(grammar, line, line_number, parse_all=True):
    try:
        return grammar.parse_string(line, parse_all=parse_all)
    except pp.ParseBaseException as e:
        raise ModelParseError('cannot parse `{}`: {}'.format(line.strip(), e.msg), line=line_number, column=e.col) \
            from e


class ModelFile(object):
    def __init__(self, mln, domain):
        self.mln = mln
        self.domain = domain

    def __iter__(self):
        return iter((self.mln, self.domain))


def parse_model(text):
    domain = None
    signature = dict()
    entries = list()
    backend_keys = set()
    for line_number, raw_line in enumerate(text.splitlines(), 1):
        line = strip_comment(raw_line)
        if not line.strip():
            continue

        head = line.split(None, 1)[0]
        if head == 'domain':
            if domain is not None:
                raise ModelParseError('domain is declared twice', line=line_number, column=1)
            value = parse_line(DOMAIN_LINE, line, line_number)[1]
            if isinstance(value, int) and value == 0:
                raise ModelParseError('domain must not be empty', line=line_number, column=1)
            if not isinstance(value, int) and any(not name[0].isupper() for name in value):
                raise ModelParseError('domain constants must start with an uppercase letter', line=line_number,
                                      column=1)
            domain = Domain.of_size(value) if isinstance(value, int) else Domain(list(value))
        elif head in ('cw', 'w') and '::' in line:
            prefix, formula_text = line.split('::', 1)
            column_offset = len(prefix) + 2
            if head == 'cw':
                expweights = list(parse_line(COMPLEX_WEIGHT_LINE, prefix + '::', line_number)[1])
                backend_keys.add('exact')
            else:
                log_weight = parse_line(REAL_WEIGHT_LINE, prefix + '::', line_number)[1]
                expweights = [get_backend('float').from_log_weight(log_weight)]
                backend_keys.add('float')
            if len(backend_keys) > 1:
                raise ModelParseError('exact `cw` and real `w` weights cannot be mixed', line=line_number, column=1)

            formula = FormulaParser(signature).parse(formula_text, line_offset=line_number - 1,
                                                     column_offset=column_offset)
            if entries and len(entries[0][1]) != len(expweights):
                raise ModelParseError('expected {} weights per formula, got {}'.format(
                    len(entries[0][1]), len(expweights)), line=line_number, column=1)
            entries.append((formula, expweights))
        else:
            name, arity = parse_line(PREDICATE_LINE, line, line_number)
            if name in signature and signature[name].arity != arity:
                raise ModelParseError('predicate `{}` is declared with arities {} and {}'.format(
                    name, signature[name].arity, arity), line=line_number, column=1)
            signature[name] = Predicate(name, arity)

    if domain is None:
        raise ModelParseError('no domain is declared')
    if len(entries) == 0:
        raise ModelParseError('no weighted formula is declared')

    backend_key = backend_keys.pop()
    mln = CMln(entries, backend_key, tuple(signature.values()))
    logger.debug('Parsed {} formulas with {} components over {} constants'.format(
        len(mln), mln.num_components, len(domain)))
    return ModelFile(mln, domain)


def format_log_weight(expweight, backend):
    value = complex(expweight)
    if abs(value.imag) > backend.tolerance or value.real <= 0:
        raise ValueError('float expweight `{}` has no real log-weight'.format(value))
    return '{:.17g}'.format(float(np.log(value.real)))


def serialize_model(mln, domain):
    lines = list()
    if domain == Domain.of_size(len(domain)):
        lines.append('domain {}'.format(len(domain)))
    else:
        lines.append('domain {{{}}}'.format(', '.join(str(c) for c in domain)))
    lines.extend('{}/{}'.format(p.name, p.arity) for p in mln.signature)
    for entry in mln.entries:
        if mln.backend.key == 'exact':
            lines.append('cw [{}] :: {}'.format(', '.join(format_exact_weight(w) for w in entry.expweights),
                                                 entry.formula))
        else:
            if len(entry.expweights) != 1:
                raise ValueError('float models with {} components cannot be written'.format(len(entry.expweights)))
            lines.append('w {} :: {}'.format(format_log_weight(entry.expweights[0], mln.backend), entry.formula))
    return '\n'.join(lines) + '\n'


def parse_target(text, num_formulas=None):
    probabilities = dict()
    for line_number, raw_line in enumerate(text.splitlines(), 1):
        line = strip_comment(raw_line)
        if not line.strip():
            continue
        point, p = parse_line(TARGET_LINE, line, line_number)
        point = tuple(point)
        if num_formulas is not None and len(point) not in (num_formulas, num_formulas + 1):
            raise ModelParseError('count vector `{}` does not match {} formulas'.format(point, num_formulas),
                                  line=line_number, column=1)
        probabilities[point] = probabilities.get(point, Fraction(0)) + p
    return probabilities
