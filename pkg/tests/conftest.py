import itertools

import pytest

from cfgwalk import corpus, parse_grammar
from cfgwalk.grammar import N, T

a, b, c, x = T("a"), T("b"), T("c"), T("x")
S, A, B, C = N("S"), N("A"), N("B"), N("C")


@pytest.fixture
def g1():
    return parse_grammar("start S\nS -> a S b | a b\n")


@pytest.fixture
def cnf_ab():
    return parse_grammar("start S\nS -> A B\nA -> a\nB -> b\n")


@pytest.fixture(params=corpus.names())
def corpus_grammar(request):
    return request.param, corpus.load(request.param)


def words(*texts):
    """'a a b' style strings to terminal words; '' is the empty word."""
    return {tuple(T(t) for t in s.split()) for s in texts}


def fixpoint_language(g, start, max_len):
    """Bottom-up oracle: iterate L(X) = union over X -> rhs of the capped
    concatenations of the member languages, until nothing changes."""
    lang = {n: set() for n in g.nonterminals}
    changed = True
    while changed:
        changed = False
        for p in g.productions:
            parts = [{(s,)} if s.is_terminal else lang[s] for s in p.rhs]
            for combo in itertools.product(*parts):
                w = tuple(itertools.chain.from_iterable(combo))
                if len(w) <= max_len and w not in lang[p.lhs]:
                    lang[p.lhs].add(w)
                    changed = True
    return lang[start]
