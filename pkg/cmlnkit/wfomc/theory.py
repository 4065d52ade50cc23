from cmlnkit.logic.syntax import Sentence, Formula
from cmlnkit.numerics.backend import get_backend


def merge_signatures(*signatures):
    merged = dict()
    for signature in signatures:
        for predicate in signature:
            existing = merged.get(predicate.name, None)
            if existing is not None and existing != predicate:
                raise ValueError('predicate `{}` is declared with arities {} and {}'.format(
                    predicate.name, existing.arity, predicate.arity))
            merged[predicate.name] = predicate
    return tuple(merged.values())


class Theory(object):
    """Universally quantified sentences over a signature; predicates of the sentences are always included."""
    def __init__(self, sentences, signature=None):
        self.sentences = tuple(s if isinstance(s, Sentence) else Sentence(s) for s in sentences)
        for sentence in self.sentences:
            if not isinstance(sentence.body, Formula):
                raise TypeError('sentence body `{}` is not expected'.format(sentence.body))

        body_predicates = [p for s in self.sentences for p in s.body.predicates()]
        self.signature = merge_signatures(signature or tuple(), body_predicates)

    def extend(self, sentences):
        return Theory(self.sentences + tuple(sentences), self.signature)

    def __len__(self):
        return len(self.sentences)

    def __str__(self):
        return '\n'.join(str(sentence) for sentence in self.sentences)


class WeightMap(object):
    """Predicate -> (w, w_bar) in one backend; absent predicates weigh (1, 1)."""
    def __init__(self, backend, weights=None):
        self.backend = get_backend(backend)
        self.weights = dict()
        for predicate, (w, w_bar) in (weights or dict()).items():
            self.weights[predicate] = (self.backend.coerce(w), self.backend.coerce(w_bar))

    def get(self, predicate):
        if predicate in self.weights:
            return self.weights[predicate]
        return self.backend.one(), self.backend.one()

    def with_weight(self, predicate, w, w_bar=None):
        weights = dict(self.weights)
        weights[predicate] = (w, self.backend.one() if w_bar is None else w_bar)
        return WeightMap(self.backend, weights)

    def __iter__(self):
        return iter(self.weights.items())

    def __repr__(self):
        return 'WeightMap({})'.format(', '.join('{}: ({}, {})'.format(p, w, w_bar)
                                                 for p, (w, w_bar) in self.weights.items()))


class WfomcTask(object):
    def __init__(self, theory, weights, domain):
        self.theory = theory
        self.weights = weights
        self.domain = domain

    @property
    def backend(self):
        return self.weights.backend

    def atom_weights(self):
        return [(predicate, self.weights.get(predicate)) for predicate in self.theory.signature]
