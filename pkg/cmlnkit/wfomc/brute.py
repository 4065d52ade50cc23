"""
Exhaustive weighted model counting.

Predicates defined by a sentence `forall x: P(x) <=> body(x)` (P occurring nowhere else) are not enumerated:
each grounding of P contributes w(P) when the body holds and w_bar(P) otherwise.
Worlds are grouped by their per-predicate true-atom counts, so each weight product is computed once per group.
"""
from collections import Counter

from cmlnkit.common.constant import def_logger
from cmlnkit.logic.semantics import GroundedFormula
from cmlnkit.logic.syntax import Atom, Iff, Variable
from cmlnkit.logic.world import GroundAtomIndex, check_enumeration_size

logger = def_logger.getChild(__name__)


def split_definition(sentence):
    body = sentence.body
    if not isinstance(body, Iff):
        return None

    for head, definiens in ((body.left, body.right), (body.right, body.left)):
        if not isinstance(head, Atom):
            continue
        if not all(isinstance(arg, Variable) for arg in head.args) or len(set(head.args)) != len(head.args):
            continue
        if head.predicate in definiens.predicates():
            continue
        if not set(definiens.vars()).issubset(head.args):
            continue
        return head, definiens
    return None


def find_definitions(theory):
    """Split the theory into (constraints, definitions); definitions are (head atom, definiens) pairs."""
    usage = Counter(p for sentence in theory.sentences for p in set(sentence.body.predicates()))
    constraints = list()
    definitions = list()
    defined_predicates = set()
    for sentence in theory.sentences:
        definition = split_definition(sentence)
        if definition is not None:
            predicate = definition[0].predicate
            if usage[predicate] == 1 and predicate not in defined_predicates:
                definitions.append(definition)
                defined_predicates.add(predicate)
                continue
        constraints.append(sentence)

    # a definiens may not mention another defined predicate
    final_definitions = list()
    for head, definiens in definitions:
        if any(p in defined_predicates for p in definiens.predicates()):
            constraints.append(Iff(head, definiens))
            defined_predicates.discard(head.predicate)
        else:
            final_definitions.append((head, definiens))
    return constraints, final_definitions


def popcount(bits):
    return bin(bits).count('1')


def wfomc_bruteforce(task, max_atoms=None):
    theory, weights, domain = task.theory, task.weights, task.domain
    backend = weights.backend
    constraints, definitions = find_definitions(theory)
    defined_predicates = {head.predicate for head, _ in definitions}
    enumerated_signature = [p for p in theory.signature if p not in defined_predicates]
    index = GroundAtomIndex(enumerated_signature, domain)
    check_enumeration_size(len(index), max_atoms)
    logger.debug('Brute force over 2^{} worlds ({} predicates eliminated by definition)'.format(
        len(index), len(definitions)))

    grounded_constraints = [GroundedFormula(getattr(c, 'body', c), index) for c in constraints]
    grounded_definitions = [GroundedFormula(definiens, index, head.args) for head, definiens in definitions]
    predicate_masks = list()
    for predicate in enumerated_signature:
        mask = 0
        for i in index.predicate_range(predicate):
            mask |= 1 << i
        predicate_masks.append(mask)

    histogram = Counter()
    for bits in range(1 << len(index)):
        if not all(grounded.holds_everywhere(bits) for grounded in grounded_constraints):
            continue
        key = tuple(popcount(bits & mask) for mask in predicate_masks) \
            + tuple(grounded.count(bits) for grounded in grounded_definitions)
        histogram[key] += 1

    factors = [(weights.get(p), len(domain) ** p.arity) for p in enumerated_signature] \
        + [(weights.get(head.predicate), grounded.num_groundings)
           for (head, _), grounded in zip(definitions, grounded_definitions)]
    terms = list()
    for key, multiplicity in histogram.items():
        value = backend.one()
        for num_true, ((w, w_bar), num_groundings) in zip(key, factors):
            value = value * backend.power(w, num_true) * backend.power(w_bar, num_groundings - num_true)
        terms.append(backend.scale(value, multiplicity))
    return backend.total(terms)
