import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cfgwalk.grammar import N, T
from cfgwalk.monoid import (
    EMPTY,
    IDENTITY,
    Label,
    SignedSymbol,
    TWord,
    compose,
    is_neutral_tail,
    plain,
    prime,
    primed,
    reduce,
    render_tail,
    t_concat,
)
from rewriting_oracle import all_normal_forms, leftmost_innermost, rightmost_innermost

a, b, c, x = T("a"), T("b"), T("c"), T("x")
A, B = N("A"), N("B")


def tw(*letters):
    return reduce(letters)


def pairs(word):
    return tuple((s.base.name, s.primed) for s in word)


def test_reduce_examples():
    assert reduce(primed(A) + plain(A)) == EMPTY
    assert reduce(plain(x) + primed(x)).letters == tuple(plain(x) + primed(x))
    assert reduce(primed(b, B) + plain(B, b)) == EMPTY
    assert reduce(primed(a) + plain(a) + primed(a)).letters == tuple(primed(a))


def test_prime_examples():
    assert prime(plain(a, B, c)) == primed(c, B, a)
    assert prime([]) == []
    w = plain(a) + primed(B)
    assert prime(prime(w)) == w


def test_t_concat_examples():
    assert t_concat(tw(*primed(b)), tw(*plain(b))) == EMPTY
    v = tw(*plain(a, B))
    assert t_concat(EMPTY, v) == v
    u = tw(*primed(a, B))
    w = tw(*plain(B, a))
    assert t_concat(u, w) == EMPTY
    assert t_concat(u, w) == reduce(u.letters + w.letters)


def lab(word, tail=()):
    return Label(tuple(word), reduce(tail))


def test_compose_examples():
    assert compose(lab([a], plain(b)), lab([a, b])) == lab([a, a, b], plain(b))
    assert compose(lab([a, a, b], plain(b)), lab([b], primed(b))) == lab([a, a, b, b])
    z = lab([a, b], plain(A) + primed(b))
    assert compose(IDENTITY, z) == z


def test_compose_reverses_tails():
    p = lab([], plain(a))
    q = lab([], primed(a))
    # (ε, a) o (ε, a') = (ε, a' a) = (ε, ε), but the other order keeps a a'
    assert compose(p, q).tail == EMPTY
    assert compose(q, p).tail.letters == tuple(plain(a) + primed(a))


def test_is_neutral_tail():
    assert is_neutral_tail(lab([a, a, b, b]))
    assert not is_neutral_tail(lab([a], plain(b)))
    assert is_neutral_tail(IDENTITY)


def test_rendering():
    assert render_tail(EMPTY) == "ε"
    assert str(lab([a, b], plain(B) + primed(a))) == "(a b, B a')"
    assert str(IDENTITY) == "(ε, ε)"


def test_one_sided():
    for s in (a, A):
        assert len(reduce(plain(s) + primed(s))) == 2
        assert len(reduce(primed(s) + plain(s))) == 0


def test_tword_is_reduced_on_construction():
    t = TWord.of(primed(a) + plain(a) + plain(b))
    assert t.letters == tuple(plain(b))


alphabet = [T("p"), T("q"), N("R")]
letters = st.builds(SignedSymbol, st.sampled_from(alphabet), st.booleans())
seqs = st.lists(letters, max_size=30)


@given(seqs)
def test_reduce_idempotent(w):
    r = reduce(w)
    assert reduce(r.letters) == r


@given(seqs)
def test_reduce_length_parity(w):
    r = reduce(w)
    assert len(r) <= len(w)
    assert len(r) % 2 == len(w) % 2


@given(seqs)
def test_normal_form_has_no_redex(w):
    ls = reduce(w).letters
    for s, t in zip(ls, ls[1:]):
        assert not (s.primed and not t.primed and s.base == t.base)


@given(seqs, seqs)
def test_prime_involution_and_antihomomorphism(u, v):
    assert prime(prime(u)) == u
    assert prime(u + v) == prime(v) + prime(u)


plain_seqs = st.lists(st.sampled_from(alphabet).map(SignedSymbol), max_size=30)


@given(plain_seqs)
def test_prime_word_cancels(w):
    assert reduce(prime(w) + w) == EMPTY


def test_prime_word_cancellation_needs_plain_words():
    # for a primed letter the prime comes out plain, and z z' never cancels
    w = primed(a)
    assert reduce(prime(w) + w).letters == tuple(plain(a) + primed(a))


@given(seqs, seqs)
def test_t_concat_matches_full_reduce(u, v):
    ru, rv = reduce(u), reduce(v)
    assert t_concat(ru, rv) == reduce(list(u) + list(v))


@given(seqs)
def test_agrees_with_innermost_strategies(w):
    got = pairs(reduce(w).letters)
    p = pairs(w)
    assert got == leftmost_innermost(p) == rightmost_innermost(p)


words = st.lists(st.sampled_from([T("p"), T("q")]), max_size=4).map(tuple)
labels = st.builds(lambda w, t: Label(w, reduce(t)), words, st.lists(letters, max_size=6))


@given(labels, labels, labels)
def test_compose_associative(p, q, r):
    assert compose(compose(p, q), r) == compose(p, compose(q, r))


@given(labels)
def test_compose_identity(p):
    assert compose(IDENTITY, p) == p == compose(p, IDENTITY)


def test_exhaustive_oracle_random_sample():
    rng = random.Random(20261018)
    for _ in range(2000):
        n = rng.randint(0, 12)
        w = [SignedSymbol(rng.choice(alphabet), rng.random() < 0.5) for _ in range(n)]
        finals = all_normal_forms(pairs(w))
        assert finals == {pairs(reduce(w).letters)}
