"""Acceptance criteria.  Each test prints one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py`` (lines are printed even without ``-s``).
"""

import random
import time

import pytest

from cfgwalk import corpus
from cfgwalk.cnf import to_cnf
from cfgwalk.correspondence import all_words, cyk_membership, derivation_to_walk, verify_theorem1, walk_to_derivation
from cfgwalk.diagram import Role, Vertex, arcs_for_production, build_diagram
from cfgwalk.enumerate import enumerate_language, enumerate_parse_trees, has_nullable_cycle, height_bound
from cfgwalk.grammar import N, T, is_cnf
from cfgwalk.monoid import IDENTITY, EMPTY, Label, SignedSymbol, compose, plain, primed, reduce
from cfgwalk.walks import FOUND, NOT_FOUND, enumerate_proper_walks, find_proper_walk, is_proper, walk_label
from rewriting_oracle import all_normal_forms

MAX_LEN = 6


@pytest.fixture
def verdict(capsys):
    def report(number, title, failures, detail=""):
        ok = not failures
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}"
        if detail:
            line += f" ({detail})"
        with capsys.disabled():
            print("\n" + line)
        assert ok, failures[:5]

    return report


def grammars():
    return [(name, corpus.load(name)) for name in corpus.names()]


def test_criterion_1_biconditional(verdict):
    assert len(corpus.names()) >= 5
    failures, words = [], 0
    t0 = time.perf_counter()
    for name, g in grammars():
        report = verify_theorem1(g, g.start, MAX_LEN, name=name)
        sigma = len(g.terminals)
        expected = sum(sigma**n for n in range(MAX_LEN + 1))
        if len(report.rows) != expected:
            failures.append((name, "row count", len(report.rows), expected))
        words += len(report.rows)
        failures += [(name, item) for item in report.discrepancies]
    elapsed = time.perf_counter() - t0
    if elapsed >= 30:
        failures.append(("runtime", elapsed))
    verdict(
        1,
        "derivability equals proper-walk existence",
        failures,
        f"{len(corpus.names())} grammars, {words} words, {len(failures)} discrepancies, {elapsed:.1f}s",
    )


def _tree_bound(g):
    return height_bound(g, MAX_LEN) if has_nullable_cycle(g) else None


def test_criterion_2_necessity(verdict):
    failures, trees = [], 0
    for name, g in grammars():
        d = build_diagram(g)
        for tree in enumerate_parse_trees(g, g.start, MAX_LEN, max_height=_tree_bound(g)):
            trees += 1
            walk = derivation_to_walk(d, tree)
            if not is_proper(d, walk) or walk_label(d, walk) != Label(tree.yield_word(), EMPTY):
                failures.append((name, tree.render()))
    verdict(2, "every parse tree maps to a proper walk labelled (yield, ε)", failures, f"{trees} trees")


def test_criterion_3_sufficiency(verdict):
    failures, walks = [], 0
    for name, g in grammars():
        d = build_diagram(g)
        depth = height_bound(g, MAX_LEN)
        for walk, word in enumerate_proper_walks(d, g.start, MAX_LEN, depth):
            walks += 1
            tree = walk_to_derivation(d, walk)
            if tree.yield_word() != walk_label(d, walk).word or tree.yield_word() != word:
                failures.append((name, walk))
    verdict(3, "every proper walk maps to a tree with the same yield", failures, f"{walks} walks")


def test_criterion_4_monoid(verdict):
    alphabet = [T("x"), T("y"), N("Z")]
    rng = random.Random(4)
    failures = []
    cases = 10_000
    for _ in range(cases):
        n = rng.randint(0, 12)
        w = [SignedSymbol(rng.choice(alphabet), rng.random() < 0.5) for _ in range(n)]
        got = tuple((s.base.name, s.primed) for s in reduce(w).letters)
        finals = all_normal_forms((s.base.name, s.primed) for s in w)
        if finals != {got}:
            failures.append((w, got, finals))
    x = T("x")
    if len(reduce(plain(x) + primed(x)).codes) != 2 or reduce(primed(x) + plain(x)).codes:
        failures.append("x x' must be irreducible while x' x cancels")
    verdict(4, "reduction matches the all-orders rewriting oracle", failures, f"{cases} sequences")


def test_criterion_5_binary_shape(verdict):
    sources = []
    for name, g in grammars():
        sources.append((name, g))
        sources.append((f"cnf({name})", to_cnf(g, g.start).grammar))
    failures, checked = [], 0
    for name, g in sources:
        for p in g.productions:
            if len(p.rhs) != 2 or not all(not s.is_terminal for s in p.rhs):
                continue
            checked += 1
            a, (b, c) = p.lhs, p.rhs
            got = [
                (arc.role, arc.source, arc.target, arc.label)
                for arc in arcs_for_production(p, 0)
            ]
            want = [
                (Role.ENTRY, Vertex("u", a), Vertex("u", b), Label((), reduce(plain(c)))),
                (Role.BRIDGE, Vertex("v", b), Vertex("u", c), Label((), reduce(primed(c)))),
                (Role.EXIT, Vertex("v", c), Vertex("v", a), Label((), EMPTY)),
            ]
            if got != want:
                failures.append((name, str(p), got))
    assert any(is_cnf(g) for _, g in sources)
    verdict(5, "A -> B C emits exactly the three binary-rule arcs", failures, f"{checked} productions")


def test_criterion_6_oracle_triangle(verdict):
    failures, inconclusive, checked = [], 0, 0
    for name, g in grammars():
        d = build_diagram(g)
        cnf = to_cnf(g, g.start).grammar
        language = enumerate_language(g, g.start, MAX_LEN)
        for word in all_words(g.sorted_terminals(), MAX_LEN):
            if not word:
                continue
            checked += 1
            res = find_proper_walk(d, g.start, word)
            if res.status not in (FOUND, NOT_FOUND):
                inconclusive += 1
                failures.append((name, word, "walks inconclusive"))
                continue
            by_cyk = cyk_membership(cnf, g.start, word).member
            if not res.found == by_cyk == (word in language):
                failures.append((name, word, res.found, by_cyk, word in language))
    verdict(
        6,
        "walks, CYK and enumeration agree",
        failures,
        f"{checked} words, {inconclusive} inconclusive",
    )


def test_criterion_7_telescoping(verdict):
    failures, checked = [], 0
    for name, g in grammars():
        d = build_diagram(g)
        for p in g.productions:
            if not p.k:
                continue
            checked += 1
            arcs = d.by_production[p.id]
            label = arcs[0].label
            for arc in arcs[1:]:
                label = compose(compose(label, IDENTITY), arc.label)
            if label.tail.codes or label.word != tuple(s for s in p.rhs if s.is_terminal):
                failures.append((name, str(p), str(label)))
    verdict(7, "entry, bridge and exit labels telescope to an empty tail", failures, f"{checked} productions")


def _random_walk(d, rng, length):
    walk = [rng.choice(d.arcs).id]
    while len(walk) < length:
        nxt = d.leaving(d.arc(walk[-1]).target)
        if not nxt:
            break
        walk.append(rng.choice(nxt).id)
    return walk


def test_criterion_8_label_homomorphism(verdict):
    diagrams = [build_diagram(g) for _, g in grammars()]
    rng = random.Random(8)
    failures, splits = [], 0
    while splits < 10_000:
        d = rng.choice(diagrams)
        walk = _random_walk(d, rng, rng.randint(2, 16))
        if len(walk) < 2:
            continue
        cut = rng.randint(1, len(walk) - 1)
        splits += 1
        if walk_label(d, walk) != compose(walk_label(d, walk[:cut]), walk_label(d, walk[cut:])):
            failures.append((walk, cut))
    verdict(8, "walk labels are a homomorphism under splitting", failures, f"{splits} splits")
