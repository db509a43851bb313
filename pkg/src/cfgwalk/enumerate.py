"""Brute-force language and parse-tree enumeration.

These are the ground-truth oracles: they work straight from the rewriting
definition of ``A =>* alpha`` and know nothing about diagrams or walks.
"""

from __future__ import annotations

from collections import deque
from typing import Iterator, Optional

from .grammar import INF, Grammar, GrammarError, ParseTree, Symbol, min_yield_lengths, nullable_set

DEFAULT_CAP = 10**6


class BudgetExceeded(RuntimeError):
    """A search or enumeration ran past its configured cap."""


def height_bound(g: Grammar, max_len: int) -> int:
    """Height that suffices for a shortest-height tree of any word of length <= max_len.

    Along a root-to-leaf path of a tree with no repeated (nonterminal, span)
    pair, each span length 0..max_len hosts at most |N| nodes.
    """
    return max(1, len(g.nonterminals) * (max_len + 1))


def enumerate_language(
    g: Grammar, start: Symbol, max_len: int, cap: int = DEFAULT_CAP
) -> set:
    """All words of ``L(g, start)`` with at most ``max_len`` symbols.

    Breadth-first search over leftmost sentential forms.  A form is dropped
    when its terminals plus the shortest yields of its nonterminals exceed
    ``max_len``, or when it holds more nonterminals than the leftmost
    derivation of a minimal-height tree ever needs.
    """
    if start not in g.nonterminals:
        raise GrammarError(f"unknown nonterminal {start.name!r}")
    if max_len < 0:
        return set()
    minlen = min_yield_lengths(g)
    if minlen[start] > max_len:
        return set()
    widest = max((len(p.rhs) for p in g.productions), default=1)
    max_open = height_bound(g, max_len) * max(widest - 1, 1) + 1

    words: set = set()
    # A form is (terminal prefix, rest) with rest starting at a nonterminal.
    first = ((), (start,))
    seen = {first}
    frontier = deque([first])
    while frontier:
        prefix, rest = frontier.popleft()
        head, tail = rest[0], rest[1:]
        for p in g.productions_for(head):
            new_rest = p.rhs + tail
            i = 0
            while i < len(new_rest) and new_rest[i].is_terminal:
                i += 1
            new_prefix = prefix + new_rest[:i]
            new_rest = new_rest[i:]
            bound = len(new_prefix)
            n_open = 0
            for s in new_rest:
                if s.is_terminal:
                    bound += 1
                else:
                    bound += minlen[s]
                    n_open += 1
            if bound > max_len or n_open > max_open:
                continue
            if not new_rest:
                words.add(new_prefix)
                continue
            form = (new_prefix, new_rest)
            if form in seen:
                continue
            seen.add(form)
            if len(seen) > cap:
                raise BudgetExceeded(f"more than {cap} sentential forms; lower max_len")
            frontier.append(form)
    return words


def has_nullable_cycle(g: Grammar) -> bool:
    """True when some nonterminal derives itself alone (A =>+ A).

    Such grammars have infinitely many parse trees for some words.
    """
    nullable = nullable_set(g)
    minlen = min_yield_lengths(g)
    edges: dict = {a: set() for a in g.nonterminals}
    for p in g.productions:
        if any(s.is_terminal or minlen[s] == INF for s in p.rhs):
            continue
        for i, s in enumerate(p.rhs):
            if all(o in nullable for j, o in enumerate(p.rhs) if j != i):
                edges[p.lhs].add(s)
    # cycle detection by iterative DFS colouring
    colour = {a: 0 for a in edges}
    for root in edges:
        if colour[root]:
            continue
        stack = [(root, iter(edges[root]))]
        colour[root] = 1
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                colour[node] = 2
                stack.pop()
            elif colour[nxt] == 1:
                return True
            elif colour[nxt] == 0:
                colour[nxt] = 1
                stack.append((nxt, iter(edges[nxt])))
    return False


def enumerate_parse_trees(
    g: Grammar,
    start: Symbol,
    max_len: int,
    max_height: Optional[int] = None,
    cap: int = DEFAULT_CAP,
) -> Iterator[ParseTree]:
    """Yield every parse tree rooted at ``start`` whose yield has length <= max_len.

    Grammars with a cycle ``A =>+ A`` have infinitely many such trees; for
    them a ``max_height`` is required, and only trees of at most that height
    are produced.
    """
    if start not in g.nonterminals:
        raise GrammarError(f"unknown nonterminal {start.name!r}")
    if max_height is None and has_nullable_cycle(g):
        raise BudgetExceeded("grammar has a derivation cycle A =>+ A; pass max_height")
    minlen = min_yield_lengths(g)
    counter = [0]

    def trees(a: Symbol, room: int, height: Optional[int]) -> Iterator[tuple]:
        if height is not None and height < 1:
            return
        sub_height = None if height is None else height - 1
        for p in g.productions_for(a):
            fixed = sum(len(r) for r in p.runs)
            need = fixed + sum(minlen[b] for b in p.nonterminals)
            if need > room:
                continue
            for kids, used in children(p.nonterminals, 0, room - fixed, sub_height):
                counter[0] += 1
                if counter[0] > cap:
                    raise BudgetExceeded(f"more than {cap} tree nodes; lower max_len")
                yield ParseTree(p, kids), fixed + used

    def children(nts: tuple, i: int, room: int, height: Optional[int]) -> Iterator[tuple]:
        if i == len(nts):
            yield (), 0
            return
        reserve = sum(minlen[b] for b in nts[i + 1 :])
        for tree, size in trees(nts[i], room - reserve, height):
            for rest, rest_size in children(nts, i + 1, room - size, height):
                yield (tree,) + rest, size + rest_size

    if max_len < 0:
        return
    for tree, _ in trees(start, max_len, max_height):
        yield tree
