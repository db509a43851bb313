"""Chomsky normal form conversion: DEL, UNIT, TERM, BIN, then trimming."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian

from .grammar import (
    Grammar,
    GrammarError,
    N,
    Symbol,
    nullable_set,
    productive_set,
    reachable_set,
)


@dataclass(frozen=True)
class CnfResult:
    grammar: Grammar
    start: Symbol
    epsilon_dropped: bool  # the empty word was in the language and is gone now
    empty: bool  # the converted language is empty

    def notes(self) -> list:
        out = []
        if self.epsilon_dropped:
            out.append("ε was in the language and has been dropped")
        if self.empty:
            out.append(f"{self.start.name} generates no non-empty word")
        return out


def _dedupe(rules):
    seen = set()
    out = []
    for rule in rules:
        if rule not in seen:
            seen.add(rule)
            out.append(rule)
    return out


def _fresh(taken: set, base: str) -> Symbol:
    name, n = base, 1
    while name in taken:
        n += 1
        name = f"{base}_{n}"
    taken.add(name)
    return N(name)


def to_cnf(g: Grammar, start: Symbol) -> CnfResult:
    """Convert ``g`` to CNF generating ``L(g, start)`` minus the empty word.

    Invented nonterminals are named ``_T_<x>`` (wrapper for terminal x) and
    ``_B_<n>`` (binarisation); the ``_`` prefix is closed to grammar files,
    so they cannot clash with user symbols.
    """
    if start not in g.nonterminals:
        raise GrammarError(f"unknown nonterminal {start.name!r}")
    nullable = nullable_set(g)

    # DEL: every way of dropping nullable occurrences, except dropping all.
    rules = []
    for p in g.productions:
        options = [((s,), ()) if s in nullable else ((s,),) for s in p.rhs]
        for pick in cartesian(*options):
            rhs = tuple(s for part in pick for s in part)
            if rhs:
                rules.append((p.lhs, rhs))
    rules = _dedupe(rules)

    # UNIT: A -> rhs whenever A =>* B by unit rules and B -> rhs is not a unit rule.
    unit_edges: dict = {}
    for lhs, rhs in rules:
        if len(rhs) == 1 and not rhs[0].is_terminal:
            unit_edges.setdefault(lhs, set()).add(rhs[0])
    closure: dict = {}
    for a in g.sorted_nonterminals():
        seen = [a]
        todo = [a]
        while todo:
            b = todo.pop()
            for c in sorted(unit_edges.get(b, ()), key=lambda s: s.name):
                if c not in seen:
                    seen.append(c)
                    todo.append(c)
        closure[a] = seen
    by_lhs: dict = {}
    for lhs, rhs in rules:
        if not (len(rhs) == 1 and not rhs[0].is_terminal):
            by_lhs.setdefault(lhs, []).append(rhs)
    order = []
    for lhs, _ in rules:
        if lhs not in order:
            order.append(lhs)
    order += [a for a in g.sorted_nonterminals() if a not in order]
    rules = _dedupe((a, rhs) for a in order for b in closure[a] for rhs in by_lhs.get(b, ()))

    taken = {s.name for s in g.nonterminals | g.terminals}

    # TERM: terminals inside long right-hand sides get wrapper nonterminals.
    wrappers: dict = {}
    wrapped = []
    for lhs, rhs in rules:
        if len(rhs) >= 2:
            new = []
            for s in rhs:
                if s.is_terminal:
                    if s not in wrappers:
                        wrappers[s] = _fresh(taken, f"_T_{s.name}")
                    new.append(wrappers[s])
                else:
                    new.append(s)
            rhs = tuple(new)
        wrapped.append((lhs, rhs))
    wrapped += [(w, (t,)) for t, w in wrappers.items()]

    # BIN: split long right-hand sides into chains of pairs.
    binary = []
    counter = 0
    for lhs, rhs in wrapped:
        while len(rhs) > 2:
            counter += 1
            link = _fresh(taken, f"_B_{counter}")
            binary.append((lhs, (rhs[0], link)))
            lhs, rhs = link, rhs[1:]
        binary.append((lhs, rhs))

    # Trim symbols that are unproductive or unreachable from start.
    draft = Grammar.from_rules(binary, start)
    keep = productive_set(draft)
    kept = [(l, r) for l, r in binary if l in keep and all(s.is_terminal or s in keep for s in r)]
    draft = Grammar.from_rules(kept, start)
    reach = reachable_set(draft, start)
    kept = [(l, r) for l, r in kept if l in reach]
    result = Grammar.from_rules(kept, start)
    return CnfResult(result, start, start in nullable, not result.productions_for(start))
