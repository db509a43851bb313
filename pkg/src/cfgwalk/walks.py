"""Walks in a transition diagram and the proper-walk predicate.

A walk is a tuple of arc ids.  Since every arc's role can be read off its
endpoint sides, a walk parses like a bracket word: ENTRY opens, EXIT
closes, BRIDGE separates siblings and LEAF is an atom.  A walk is proper
when it parses as a single bracket group (or leaf) running from some
``u_A`` to ``v_A`` and every group's label has an empty tail.
"""

from __future__ import annotations

from typing import Iterator, NamedTuple, Optional, Sequence, Union

from .diagram import Arc, Diagram, Role, u, v
from .enumerate import DEFAULT_CAP, BudgetExceeded, height_bound
from .grammar import GrammarError, Symbol, min_yield_lengths
from .monoid import IDENTITY, Label, SignedSymbol, TWord, compose, t_concat


class WalkError(ValueError):
    """The arc sequence is not a walk of the diagram."""


class ImproperWalk(ValueError):
    """The walk is not proper; ``position`` is the offending arc index."""

    def __init__(self, reason: str, position: Optional[int] = None):
        self.reason = reason
        self.position = position
        where = f" at arc #{position}" if position is not None else ""
        super().__init__(f"{reason}{where}")


class Leaf(NamedTuple):
    arc: int

    def arcs(self) -> tuple:
        return (self.arc,)

    def depth(self) -> int:
        return 1

    def render(self) -> str:
        return f"(leaf {self.arc})"


class Node(NamedTuple):
    entry: int
    children: tuple
    separators: tuple
    exit: int

    def arcs(self) -> tuple:
        out = [self.entry]
        for i, child in enumerate(self.children):
            if i:
                out.append(self.separators[i - 1])
            out.extend(child.arcs())
        out.append(self.exit)
        return tuple(out)

    def depth(self) -> int:
        return 1 + max(c.depth() for c in self.children)

    def render(self) -> str:
        parts = [f"(node ρ={self.entry}"]
        for i, child in enumerate(self.children):
            if i:
                parts.append(f"σ={self.separators[i - 1]}")
            parts.append(child.render())
        parts.append(f"τ={self.exit})")
        return " ".join(parts)


WalkStructure = Union[Leaf, Node]


def walk_arcs(d: Diagram, walk: Sequence[int]) -> list:
    """Resolve arc ids and check continuity."""
    if not walk:
        raise WalkError("a walk has at least one arc")
    arcs = []
    for i, arc_id in enumerate(walk):
        try:
            arc = d.arc(arc_id)
        except KeyError:
            raise WalkError(f"unknown arc id {arc_id} at position {i}") from None
        if arcs and arcs[-1].target != arc.source:
            raise WalkError(
                f"discontinuous at position {i}: {arcs[-1].target} then {arc.source}"
            )
        arcs.append(arc)
    return arcs


def walk_label(d: Diagram, walk: Sequence[int]) -> Label:
    label = IDENTITY
    for arc in walk_arcs(d, walk):
        label = compose(label, arc.label)
    return label


def decompose(d: Diagram, walk: Sequence[int]) -> WalkStructure:
    """Parse the walk into its bracket structure or raise :class:`ImproperWalk`.

    Only the shape is checked here, not the labels.
    """
    arcs = walk_arcs(d, walk)
    n = len(arcs)

    def group(i: int) -> tuple:
        arc = arcs[i]
        shape = arc.shape
        if shape is Role.LEAF:
            return Leaf(arc.id), i + 1
        if shape is Role.BRIDGE:
            raise ImproperWalk("separator outside any group", i)
        if shape is Role.EXIT:
            raise ImproperWalk("unbalanced close", i)
        children, seps = [], []
        j = i + 1
        while True:
            if j >= n:
                raise ImproperWalk("unclosed open", i)
            child, j = group(j)
            children.append(child)
            if j >= n:
                raise ImproperWalk("unclosed open", i)
            nxt = arcs[j]
            if nxt.shape is Role.BRIDGE:
                seps.append(nxt.id)
                j += 1
            elif nxt.shape is Role.EXIT:
                if nxt.target.nonterminal != arc.source.nonterminal:
                    raise ImproperWalk(
                        f"close lands on {nxt.target}, group opened at {arc.source}", j
                    )
                return Node(arc.id, tuple(children), tuple(seps), nxt.id), j + 1
            else:
                raise ImproperWalk("expected a separator or close", j)

    structure, end = group(0)
    if end != n:
        raise ImproperWalk("walk continues after its outermost group closes", end)
    return structure


def structure_label(d: Diagram, s: WalkStructure) -> Label:
    """Label of the flattened structure; raises if some group's tail is not empty."""
    if isinstance(s, Leaf):
        return d.arc(s.arc).label
    label = d.arc(s.entry).label
    for i, child in enumerate(s.children):
        if i:
            label = compose(label, d.arc(s.separators[i - 1]).label)
        label = compose(label, structure_label(d, child))
    label = compose(label, d.arc(s.exit).label)
    if label.tail.codes:
        raise ImproperWalk(f"group {s.render()} has label {label} with a non-empty tail")
    return label


def proper_structure(d: Diagram, walk: Sequence[int]) -> WalkStructure:
    """The witness structure of a proper walk; raises :class:`ImproperWalk` otherwise."""
    s = decompose(d, walk)
    structure_label(d, s)
    return s


def is_proper(d: Diagram, walk: Sequence[int]) -> bool:
    try:
        proper_structure(d, walk)
    except ImproperWalk:
        return False
    return True


def enumerate_proper_walks(
    d: Diagram,
    start: Symbol,
    max_word_len: int,
    max_depth: int,
    cap: int = DEFAULT_CAP,
) -> Iterator[tuple]:
    """Yield ``(walk, word)`` for every proper walk from ``u_start`` to ``v_start``
    whose label word has at most ``max_word_len`` symbols and whose
    structure is at most ``max_depth`` deep.

    Inside a group every BRIDGE and EXIT tail is all-primed, so a primed
    letter that does not cancel at once can never cancel; such branches
    are cut, which also bounds the number of children per group.
    """
    if start not in d.grammar.nonterminals:
        raise GrammarError(f"unknown nonterminal {start.name!r}")
    owed = _Owed(d)
    count = [0]

    def tick() -> None:
        count[0] += 1
        if count[0] > cap:
            raise BudgetExceeded(f"more than {cap} partial walks")

    def groups(a: Symbol, room: int, depth: int) -> Iterator[tuple]:
        if depth < 1:
            return
        for arc in d.leaving(u(a)):
            tick()
            w = arc.label.word
            if len(w) > room:
                continue
            if arc.role is Role.LEAF:
                yield (arc.id,), w, Leaf(arc.id)
            elif depth > 1 and len(w) + owed(arc.target.nonterminal, arc.label.tail) <= room:
                yield from siblings(
                    a, arc, arc.target.nonterminal, room - len(w), depth - 1,
                    (arc.id,), w, arc.label.tail, (), (),
                )

    def siblings(a, entry, c, room, depth, arcs, word, tail, kids, seps):
        for c_arcs, c_word, c_struct in groups(c, room - owed.tail(tail), depth):
            left = room - len(c_word)
            arcs2 = arcs + c_arcs
            word2 = word + c_word
            kids2 = kids + (c_struct,)
            for arc in d.leaving(v(c)):
                tick()
                w = arc.label.word
                if len(w) > left:
                    continue
                t = t_concat(arc.label.tail, tail)
                if arc.role is Role.EXIT:
                    if arc.target.nonterminal == a and not t.codes:
                        yield arcs2 + (arc.id,), word2 + w, Node(entry.id, kids2, seps, arc.id)
                elif not t.has_primed() and len(w) + owed(arc.target.nonterminal, t) <= left:
                    yield from siblings(
                        a, entry, arc.target.nonterminal, left - len(w), depth,
                        arcs2 + (arc.id,), word2 + w, t, kids2, seps + (arc.id,),
                    )

    for walk, word, _ in groups(start, max_word_len, max_depth):
        yield walk, word


class _Owed:
    """Lower bounds on the word length a group still has to read."""

    def __init__(self, d: Diagram):
        self.minlen = min_yield_lengths(d.grammar)

    def tail(self, t: TWord) -> float:
        """Shortest yield of the plain letters still pending in ``t``."""
        total = 0
        for code in t.codes:
            if not code & 1:
                sym = SignedSymbol.from_code(code).base
                total += 1 if sym.is_terminal else self.minlen[sym]
        return total

    def __call__(self, c: Symbol, t: TWord) -> float:
        """After entering ``c`` with pending tail ``t``."""
        return self.minlen[c] + self.tail(t)


FOUND = "found"
NOT_FOUND = "not-found"
BUDGET_EXCEEDED = "budget-exceeded"


class SearchResult(NamedTuple):
    status: str
    walk: Optional[tuple] = None
    structure: Optional[WalkStructure] = None
    expansions: int = 0

    @property
    def found(self) -> bool:
        return self.status == FOUND


class _OutOfBudget(Exception):
    pass


def find_proper_walk(
    d: Diagram,
    start: Symbol,
    target: Sequence[Symbol],
    budget: int = DEFAULT_CAP,
    max_depth: Optional[int] = None,
) -> SearchResult:
    """Depth-first search for a proper walk labelled ``(target, ε)``.

    Partial walks whose word stops being a prefix of ``target`` are cut.
    Sub-searches are memoised per (nonterminal, position, depth left), so
    each distinct goal is expanded once.  The default depth bound is the
    height a shortest-height parse tree of ``target`` can need, which makes
    ``NOT_FOUND`` conclusive.  ``budget`` caps arc expansions; hitting it
    gives ``BUDGET_EXCEEDED``, which says nothing about membership.
    """
    if start not in d.grammar.nonterminals:
        raise GrammarError(f"unknown nonterminal {start.name!r}")
    target = tuple(target)
    n = len(target)
    if max_depth is None:
        max_depth = height_bound(d.grammar, n)
    owed = _Owed(d)
    count = [0]
    memo_groups: dict = {}
    memo_sibs: dict = {}

    def tick() -> None:
        count[0] += 1
        if count[0] > budget:
            raise _OutOfBudget

    def matches(w: tuple, pos: int) -> bool:
        return target[pos : pos + len(w)] == w

    def groups(a: Symbol, pos: int, depth: int) -> dict:
        key = (a, pos, depth)
        hit = memo_groups.get(key)
        if hit is not None:
            return hit
        found: dict = {}
        if depth >= 1:
            for arc in d.leaving(u(a)):
                tick()
                w = arc.label.word
                if not matches(w, pos):
                    continue
                if arc.role is Role.LEAF:
                    found.setdefault(pos + len(w), ((arc.id,), Leaf(arc.id)))
                elif depth > 1 and pos + len(w) + owed(arc.target.nonterminal, arc.label.tail) <= n:
                    sibs = siblings(
                        a, arc.target.nonterminal, pos + len(w), arc.label.tail, depth - 1
                    )
                    for end, (arcs, kids, seps, exit_id) in sibs.items():
                        if end not in found:
                            found[end] = (
                                (arc.id,) + arcs,
                                Node(arc.id, kids, seps, exit_id),
                            )
        memo_groups[key] = found
        return found

    def siblings(a: Symbol, c: Symbol, pos: int, tail: TWord, depth: int) -> dict:
        key = (a, c, pos, tail, depth)
        hit = memo_sibs.get(key)
        if hit is not None:
            return hit
        found: dict = {}
        for mid, (c_arcs, c_struct) in groups(c, pos, depth).items():
            for arc in d.leaving(v(c)):
                tick()
                w = arc.label.word
                if not matches(w, mid):
                    continue
                t = t_concat(arc.label.tail, tail)
                end = mid + len(w)
                if arc.role is Role.EXIT:
                    if arc.target.nonterminal == a and not t.codes and end not in found:
                        found[end] = (c_arcs + (arc.id,), (c_struct,), (), arc.id)
                elif not t.has_primed() and end + owed(arc.target.nonterminal, t) <= n:
                    rest = siblings(a, arc.target.nonterminal, end, t, depth)
                    for end2, (arcs, kids, seps, exit_id) in rest.items():
                        if end2 not in found:
                            found[end2] = (
                                c_arcs + (arc.id,) + arcs,
                                (c_struct,) + kids,
                                (arc.id,) + seps,
                                exit_id,
                            )
        memo_sibs[key] = found
        return found

    try:
        hit = groups(start, 0, max_depth).get(n)
    except _OutOfBudget:
        return SearchResult(BUDGET_EXCEEDED, expansions=count[0])
    if hit is None:
        return SearchResult(NOT_FOUND, expansions=count[0])
    return SearchResult(FOUND, hit[0], hit[1], count[0])
