"""Derivations <-> proper walks, membership oracles and the verification harness."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .cnf import to_cnf
from .diagram import Diagram, Role, build_diagram
from .enumerate import (
    DEFAULT_CAP,
    BudgetExceeded,
    enumerate_language,
    enumerate_parse_trees,
    has_nullable_cycle,
    height_bound,
)
from .grammar import Grammar, GrammarError, ParseTree, Symbol, is_cnf, nullable_set, word_str
from .kernels import cyk_fill
from .walks import (
    BUDGET_EXCEEDED,
    FOUND,
    ImproperWalk,
    Leaf,
    enumerate_proper_walks,
    find_proper_walk,
    proper_structure,
    walk_label,
)


def derivation_to_walk(d: Diagram, tree: ParseTree) -> tuple:
    """Walk ``rho pi_1 sigma_1 ... pi_k tau`` built from the tree, bottom-up.

    All arcs of one tree node come from that node's production.
    """
    prods = d.grammar.productions
    p = tree.production
    if p.id >= len(prods) or prods[p.id] != p:
        raise GrammarError(f"production {p} is not part of the diagram's grammar")
    arcs = d.by_production[p.id]
    if not tree.children:
        return (arcs[0].id,)
    out = [arcs[0].id]
    for i, child in enumerate(tree.children):
        if i:
            out.append(arcs[i].id)
        out.extend(derivation_to_walk(d, child))
    out.append(arcs[-1].id)
    return tuple(out)


def walk_to_derivation(d: Diagram, walk: Sequence[int]) -> ParseTree:
    """Parse tree read off a proper walk through the productions of its
    LEAF and ENTRY arcs.  Raises :class:`ImproperWalk` if the walk is not proper."""
    return _tree_of(d, proper_structure(d, walk))


def _tree_of(d: Diagram, s) -> ParseTree:
    prods = d.grammar.productions
    if isinstance(s, Leaf):
        return ParseTree(prods[d.arc(s.arc).production])
    entry = d.arc(s.entry)
    assert entry.role is Role.ENTRY
    return ParseTree(prods[entry.production], tuple(_tree_of(d, c) for c in s.children))


WALKS, CYK, ENUMERATION = "walks", "cyk", "enumeration"
METHODS = (WALKS, CYK, ENUMERATION)


@dataclass
class MembershipVerdict:
    word: tuple
    member: Optional[bool]  # None when inconclusive
    method: str
    witness: Union[tuple, ParseTree, None] = None
    cost: int = 0
    note: str = ""

    def describe(self) -> str:
        answer = {True: "yes", False: "no", None: "inconclusive"}[self.member]
        return f"member ({self.method}): {answer}"


def cyk_membership(g_cnf: Grammar, start: Symbol, target: Sequence[Symbol]) -> MembershipVerdict:
    """CYK recognition with a parse-tree witness.  Needs a CNF grammar and a non-empty word."""
    if not is_cnf(g_cnf):
        raise GrammarError("CYK needs a grammar in Chomsky normal form")
    target = tuple(target)
    if not target:
        raise GrammarError("CNF grammars cannot derive ε; decide the empty word by nullability")
    nts = g_cnf.sorted_nonterminals()
    nt_ix = {a: i for i, a in enumerate(nts)}
    t_ix = {t: i for i, t in enumerate(g_cnf.sorted_terminals())}
    if start not in nt_ix:
        raise GrammarError(f"unknown nonterminal {start.name!r}")
    if any(t not in t_ix for t in target):
        return MembershipVerdict(target, False, CYK, note="word uses symbols the grammar never produces")
    unary = [(t_ix[p.rhs[0]], nt_ix[p.lhs]) for p in g_cnf.productions if len(p.rhs) == 1]
    binary = [
        (nt_ix[p.lhs], nt_ix[p.rhs[0]], nt_ix[p.rhs[1]])
        for p in g_cnf.productions
        if len(p.rhs) == 2
    ]
    n, m = len(target), len(nts)
    table = cyk_fill([t_ix[t] for t in target], unary, binary, m)
    cost = n * n * max(len(binary), 1) * n

    def has(a: int, i: int, length: int) -> bool:
        return bool(table[((length - 1) * n + i) * m + a])

    def build(a: Symbol, i: int, length: int) -> ParseTree:
        for p in g_cnf.productions_for(a):
            if length == 1 and len(p.rhs) == 1 and p.rhs[0] == target[i]:
                return ParseTree(p)
            if length > 1 and len(p.rhs) == 2:
                b, c = p.rhs
                for split in range(1, length):
                    if has(nt_ix[b], i, split) and has(nt_ix[c], i + split, length - split):
                        return ParseTree(p, (build(b, i, split), build(c, i + split, length - split)))
        raise AssertionError("CYK table and grammar disagree")

    if not has(nt_ix[start], 0, n):
        return MembershipVerdict(target, False, CYK, cost=cost)
    return MembershipVerdict(target, True, CYK, build(start, 0, n), cost)


def membership(
    g: Grammar,
    d: Optional[Diagram],
    start: Symbol,
    target: Sequence[Symbol],
    method: str = WALKS,
    budget: int = DEFAULT_CAP,
) -> MembershipVerdict:
    """Decide ``target in L(g, start)`` by proper-walk search, CYK or enumeration.

    The CYK witness is a tree of the converted CNF grammar.
    """
    if start not in g.nonterminals:
        raise GrammarError(f"unknown nonterminal {start.name!r}")
    target = tuple(target)
    if method == WALKS:
        d = d or build_diagram(g)
        res = find_proper_walk(d, start, target, budget)
        member = {FOUND: True, BUDGET_EXCEEDED: None}.get(res.status, False)
        note = "search budget exhausted" if member is None else ""
        return MembershipVerdict(target, member, WALKS, res.walk, res.expansions, note)
    if method == CYK:
        if not target:
            member = start in nullable_set(g)
            return MembershipVerdict(
                target, member, CYK, _witness(g, start, target) if member else None,
                note="ε decided by the nullable-set fixpoint",
            )
        conv = to_cnf(g, start)
        verdict = cyk_membership(conv.grammar, start, target)
        verdict.note = "witness is a tree of the CNF grammar"
        return verdict
    if method == ENUMERATION:
        try:
            words = enumerate_language(g, start, len(target), cap=budget)
        except BudgetExceeded:
            return MembershipVerdict(target, None, ENUMERATION, note="enumeration cap exceeded")
        member = target in words
        return MembershipVerdict(
            target, member, ENUMERATION, _witness(g, start, target) if member else None,
            cost=len(words),
        )
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")


def _witness(g: Grammar, start: Symbol, target: tuple) -> Optional[ParseTree]:
    bound = height_bound(g, len(target))
    for tree in enumerate_parse_trees(g, start, len(target), max_height=bound):
        if tree.yield_word() == target:
            return tree
    return None


@dataclass
class VerificationReport:
    grammar: str
    start: str
    max_len: int
    rows: list = field(default_factory=list)  # (word, enum, walk, agree)
    discrepancies: list = field(default_factory=list)
    trees_checked: int = 0
    walks_checked: int = 0

    @property
    def clean(self) -> bool:
        return not self.discrepancies

    def summary(self) -> dict:
        return {
            "checked": len(self.rows),
            "in_language": sum(1 for r in self.rows if r[1]),
            "agreements": sum(1 for r in self.rows if r[3]),
            "trees": self.trees_checked,
            "walks": self.walks_checked,
        }

    def to_dict(self) -> dict:
        return {
            "grammar": self.grammar,
            "start": self.start,
            "max_len": self.max_len,
            "rows": [
                {"word": " ".join(s.name for s in w), "enum": e, "walk": wk, "agree": a}
                for w, e, wk, a in self.rows
            ],
            "discrepancies": self.discrepancies,
            "summary": self.summary(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    def headline(self) -> str:
        s = self.summary()
        state = "clean" if self.clean else f"{len(self.discrepancies)} DISCREPANCIES"
        return f"{state}: {s['checked']} words checked, {s['in_language']} in language"


def all_words(alphabet: Sequence[Symbol], max_len: int):
    """Every word up to ``max_len``, by length then lexicographically."""
    for n in range(max_len + 1):
        yield from itertools.product(alphabet, repeat=n)


def verify_theorem1(
    g: Grammar,
    start: Symbol,
    max_len: int,
    name: str = "",
    cap: int = DEFAULT_CAP,
) -> VerificationReport:
    """Check word-by-word that derivability and proper-walk existence coincide,
    and run both constructive directions on every tree and walk found."""
    if start not in g.nonterminals:
        raise GrammarError(f"unknown nonterminal {start.name!r}")
    d = build_diagram(g)
    report = VerificationReport(name, start.name, max_len)
    depth = height_bound(g, max_len)
    language = enumerate_language(g, start, max_len, cap=cap)

    walk_words: Optional[set] = set()
    walks: list = []
    try:
        for walk, word in enumerate_proper_walks(d, start, max_len, depth, cap=cap):
            walks.append((walk, word))
            walk_words.add(word)
    except BudgetExceeded:
        walk_words, walks = None, []
        report.discrepancies.append(
            {"kind": "inconclusive", "detail": "proper-walk enumeration cap hit; sufficiency not checked"}
        )

    for word in all_words(g.sorted_terminals(), max_len):
        in_lang = word in language
        if walk_words is not None:
            found: Optional[bool] = word in walk_words
        else:
            res = find_proper_walk(d, start, word, cap, depth)
            found = None if res.status == BUDGET_EXCEEDED else res.found
        agree = in_lang == found
        report.rows.append((word, in_lang, found, agree))
        if not agree:
            kind = "inconclusive" if found is None else "membership"
            report.discrepancies.append(
                {"kind": kind, "word": word_str(word), "enum": in_lang, "walk": found}
            )

    bound = depth if has_nullable_cycle(g) else None
    try:
        for tree in enumerate_parse_trees(g, start, max_len, max_height=bound, cap=cap):
            report.trees_checked += 1
            _check_necessity(d, tree, report)
    except BudgetExceeded:
        report.discrepancies.append(
            {"kind": "inconclusive", "detail": "parse-tree enumeration cap hit; necessity checked partially"}
        )

    for walk, word in walks:
        report.walks_checked += 1
        _check_sufficiency(d, walk, word, report)
    return report


def _check_necessity(d: Diagram, tree: ParseTree, report: VerificationReport) -> None:
    walk = derivation_to_walk(d, tree)
    problem = None
    try:
        proper_structure(d, walk)
        label = walk_label(d, walk)
        if label.word != tree.yield_word() or label.tail.codes:
            problem = f"walk label {label} differs from ({word_str(tree.yield_word())}, ε)"
    except ImproperWalk as exc:
        problem = f"walk is not proper: {exc}"
    if problem:
        report.discrepancies.append({"kind": "necessity", "tree": tree.render(), "detail": problem})


def _check_sufficiency(d: Diagram, walk: tuple, word: tuple, report: VerificationReport) -> None:
    try:
        tree = walk_to_derivation(d, walk)
    except (ImproperWalk, GrammarError) as exc:
        report.discrepancies.append(
            {"kind": "sufficiency", "walk": list(walk), "detail": str(exc)}
        )
        return
    back = derivation_to_walk(d, tree)
    if tree.yield_word() != word or walk_label(d, back) != walk_label(d, walk):
        report.discrepancies.append(
            {"kind": "sufficiency", "walk": list(walk), "detail": f"tree yields {word_str(tree.yield_word())}"}
        )
