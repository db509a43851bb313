"""Context-free grammars: symbols, productions, the text format, diagnostics.

A grammar file is a list of rules, one lhs per line::

    # balanced a/b
    start S
    S -> a S b | a b

Every token that appears on some left-hand side is a nonterminal; every
other rule token is a terminal.  ``eps`` stands for the empty right-hand
side.  Tokens beginning with ``_`` are reserved for symbols invented by
:func:`cfgwalk.cnf.to_cnf`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional, Sequence

RESERVED = frozenset({"->", "|", "eps", "#", "start"})
FRESH_PREFIX = "_"


class GrammarError(ValueError):
    """Raised for malformed grammar text or inconsistent grammar data."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class Symbol(NamedTuple):
    name: str
    is_terminal: bool

    @property
    def kind(self) -> str:
        return "terminal" if self.is_terminal else "nonterminal"

    def __str__(self) -> str:
        return self.name

    def __repr__(self) -> str:
        return f"{'T' if self.is_terminal else 'N'}({self.name})"


def T(name: str) -> Symbol:
    return Symbol(name, True)


def N(name: str) -> Symbol:
    return Symbol(name, False)


Word = tuple  # tuple[Symbol, ...]; () is the empty word


def word_str(word: Iterable[Symbol]) -> str:
    text = " ".join(s.name for s in word)
    return text if text else "ε"


def is_terminal_word(word: Iterable[Symbol]) -> bool:
    return all(s.is_terminal for s in word)


def check_token(name: str, allow_reserved: bool = False) -> None:
    if not name or any(c.isspace() for c in name):
        raise GrammarError(f"bad symbol name {name!r}")
    if name in RESERVED or "|" in name or "->" in name:
        raise GrammarError(f"reserved token {name!r} used as a symbol")
    if name.startswith(FRESH_PREFIX) and not allow_reserved:
        raise GrammarError(f"token {name!r} uses the reserved prefix '_'")


@dataclass(frozen=True)
class Production:
    """``lhs -> rhs`` split as ``runs[0] B1 runs[1] ... Bk runs[k]``.

    ``runs`` holds the k+1 maximal terminal runs (any of which may be
    empty) and ``nonterminals`` the k nonterminal occurrences between them.
    """

    id: int
    lhs: Symbol
    rhs: tuple
    runs: tuple = field(init=False, repr=False, compare=False)
    nonterminals: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.lhs.is_terminal:
            raise GrammarError(f"production {self.id}: terminal lhs {self.lhs.name!r}")
        runs: list = []
        nts: list = []
        current: list = []
        for sym in self.rhs:
            if sym.is_terminal:
                current.append(sym)
            else:
                runs.append(tuple(current))
                nts.append(sym)
                current = []
        runs.append(tuple(current))
        object.__setattr__(self, "rhs", tuple(self.rhs))
        object.__setattr__(self, "runs", tuple(runs))
        object.__setattr__(self, "nonterminals", tuple(nts))

    @property
    def k(self) -> int:
        return len(self.nonterminals)

    def __str__(self) -> str:
        return f"{self.lhs.name} -> {word_str(self.rhs) if self.rhs else 'eps'}"


@dataclass(frozen=True)
class Grammar:
    nonterminals: frozenset
    terminals: frozenset
    productions: tuple
    start: Optional[Symbol] = None
    _by_lhs: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "nonterminals", frozenset(self.nonterminals))
        object.__setattr__(self, "terminals", frozenset(self.terminals))
        object.__setattr__(self, "productions", tuple(self.productions))
        clash = {s.name for s in self.nonterminals} & {s.name for s in self.terminals}
        if clash:
            raise GrammarError(f"symbols {sorted(clash)} are both terminal and nonterminal")
        if any(s.is_terminal for s in self.nonterminals) or not all(
            s.is_terminal for s in self.terminals
        ):
            raise GrammarError("symbol kinds disagree with their alphabet")
        by_lhs: dict = {a: [] for a in self.nonterminals}
        for i, p in enumerate(self.productions):
            if p.id != i:
                raise GrammarError(f"production ids must be dense; got {p.id} at {i}")
            if p.lhs not in self.nonterminals:
                raise GrammarError(f"production {p.id}: unknown lhs {p.lhs.name!r}")
            for sym in p.rhs:
                if sym not in self.nonterminals and sym not in self.terminals:
                    raise GrammarError(f"production {p.id}: unknown symbol {sym.name!r}")
            by_lhs[p.lhs].append(p)
        if self.start is not None and self.start not in self.nonterminals:
            raise GrammarError(f"start symbol {self.start.name!r} is not a nonterminal")
        object.__setattr__(self, "_by_lhs", {a: tuple(ps) for a, ps in by_lhs.items()})

    @classmethod
    def from_rules(
        cls,
        rules: Iterable[tuple],
        start: Optional[Symbol] = None,
        nonterminals: Iterable[Symbol] = (),
        terminals: Iterable[Symbol] = (),
    ) -> "Grammar":
        """Build a grammar from ``(lhs, rhs)`` pairs, numbering them in order."""
        prods = [Production(i, lhs, tuple(rhs)) for i, (lhs, rhs) in enumerate(rules)]
        nts = set(nonterminals) | {p.lhs for p in prods}
        if start is not None:
            nts.add(start)
        terms = set(terminals)
        for p in prods:
            for sym in p.rhs:
                (terms if sym.is_terminal else nts).add(sym)
        return cls(frozenset(nts), frozenset(terms), tuple(prods), start)

    def productions_for(self, lhs: Symbol) -> tuple:
        return self._by_lhs.get(lhs, ())

    def nonterminal(self, name: str) -> Symbol:
        sym = N(name)
        if sym not in self.nonterminals:
            raise GrammarError(f"unknown nonterminal {name!r}")
        return sym

    def terminal_word(self, tokens: Sequence[str]) -> tuple:
        """Turn terminal names into a terminal Word, rejecting unknown tokens."""
        word = tuple(T(t) for t in tokens)
        for sym in word:
            if sym not in self.terminals:
                raise GrammarError(f"unknown terminal {sym.name!r}")
        return word

    def sorted_nonterminals(self) -> list:
        return sorted(self.nonterminals, key=lambda s: s.name)

    def sorted_terminals(self) -> list:
        return sorted(self.terminals, key=lambda s: s.name)

    def same_as(self, other: "Grammar") -> bool:
        """Equality up to production order and numbering."""

        def rules(g: Grammar) -> list:
            return sorted((p.lhs, p.rhs) for p in g.productions)

        return (
            self.nonterminals == other.nonterminals
            and self.terminals == other.terminals
            and self.start == other.start
            and rules(self) == rules(other)
        )

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True)
class ParseTree:
    """A derivation tree: the production applied at the root plus one
    subtree per nonterminal occurrence of its right-hand side."""

    production: Production
    children: tuple = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "children", tuple(self.children))
        nts = self.production.nonterminals
        if len(self.children) != len(nts):
            raise GrammarError(
                f"production {self.production.id} needs {len(nts)} children, "
                f"got {len(self.children)}"
            )
        for want, child in zip(nts, self.children):
            if child.root != want:
                raise GrammarError(f"child rooted at {child.root.name}, expected {want.name}")

    @property
    def root(self) -> Symbol:
        return self.production.lhs

    def yield_word(self) -> tuple:
        runs = self.production.runs
        out = list(runs[0])
        for child, run in zip(self.children, runs[1:]):
            out.extend(child.yield_word())
            out.extend(run)
        return tuple(out)

    def height(self) -> int:
        return 1 + max((c.height() for c in self.children), default=0)

    def leftmost_derivation(self) -> list:
        """Sentential forms of the leftmost derivation, root first."""
        # items are either terminal Symbols or unexpanded subtrees
        form: list = [self]
        forms = [(self.root,)]
        while True:
            idx = next((i for i, x in enumerate(form) if isinstance(x, ParseTree)), None)
            if idx is None:
                return forms
            node = form[idx]
            runs = node.production.runs
            repl: list = list(runs[0])
            for child, run in zip(node.children, runs[1:]):
                repl.append(child)
                repl.extend(run)
            form[idx : idx + 1] = repl
            forms.append(tuple(x.root if isinstance(x, ParseTree) else x for x in form))

    def render(self) -> str:
        if not self.children:
            return f"[{self.production}]"
        inner = " ".join(c.render() for c in self.children)
        return f"[{self.production} {inner}]"

    def __str__(self) -> str:
        return self.render()


def parse_grammar(text: str, allow_reserved: bool = False) -> Grammar:
    """Read a grammar from its text form.

    ``allow_reserved`` admits ``_``-prefixed tokens, which only the CNF
    emitter produces.
    """
    start_name: Optional[str] = None
    start_line = 0
    raw_rules: list = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0]
        tokens = line.split()
        if not tokens:
            continue
        if tokens[0] == "start":
            if len(tokens) != 2:
                raise GrammarError("expected 'start <symbol>'", lineno)
            if start_name is not None:
                raise GrammarError(f"duplicate start directive (first on line {start_line})", lineno)
            start_name, start_line = tokens[1], lineno
            _checked(start_name, allow_reserved, lineno)
            continue
        if len(tokens) < 2 or tokens[1] != "->":
            raise GrammarError("expected '<lhs> -> ...'", lineno)
        lhs = _checked(tokens[0], allow_reserved, lineno)
        alt: list = []
        alts: list = []
        for tok in tokens[2:] + ["|"]:
            if tok == "|":
                if not alt:
                    raise GrammarError("empty right-hand side (write 'eps')", lineno)
                if "eps" in alt:
                    if alt != ["eps"]:
                        raise GrammarError("'eps' must stand alone in an alternative", lineno)
                    alt = []
                alts.append(alt)
                alt = []
            elif tok == "->":
                raise GrammarError("more than one '->' on a line", lineno)
            else:
                if tok != "eps":
                    _checked(tok, allow_reserved, lineno)
                alt.append(tok)
        raw_rules.extend((lhs, a, lineno) for a in alts)
    if not raw_rules:
        raise GrammarError("grammar has no productions")
    lhs_names = {lhs for lhs, _, _ in raw_rules}
    sym = lambda name: Symbol(name, name not in lhs_names)  # noqa: E731
    rules = [(N(lhs), tuple(sym(t) for t in rhs)) for lhs, rhs, _ in raw_rules]
    start = None
    if start_name is not None:
        if start_name not in lhs_names:
            raise GrammarError(f"start symbol {start_name!r} has no rules", start_line)
        start = N(start_name)
    return Grammar.from_rules(rules, start)


def _checked(name: str, allow_reserved: bool, lineno: int) -> str:
    try:
        check_token(name, allow_reserved)
    except GrammarError as exc:
        raise GrammarError(str(exc), lineno) from None
    return name


def load_grammar(path, allow_reserved: bool = False) -> Grammar:
    with open(path, encoding="utf-8") as fh:
        return parse_grammar(fh.read(), allow_reserved=allow_reserved)


def render(g: Grammar) -> str:
    """Canonical text form: one line per lhs, alternatives in id order."""
    lines = []
    if g.start is not None:
        lines.append(f"start {g.start.name}")
    order: dict = {}
    for p in g.productions:
        order.setdefault(p.lhs, []).append(" ".join(s.name for s in p.rhs) or "eps")
    for lhs, alts in order.items():
        lines.append(f"{lhs.name} -> {' | '.join(alts)}")
    return "\n".join(lines) + "\n"


# -- fixpoints shared by validation, enumeration and CNF conversion ---------


def nullable_set(g: Grammar) -> frozenset:
    nullable: set = set()
    changed = True
    while changed:
        changed = False
        for p in g.productions:
            if p.lhs not in nullable and all(s in nullable for s in p.rhs):
                nullable.add(p.lhs)
                changed = True
    return frozenset(nullable)


INF = float("inf")


def min_yield_lengths(g: Grammar) -> dict:
    """Shortest terminal yield per nonterminal; ``INF`` when unproductive."""
    best = {a: INF for a in g.nonterminals}
    changed = True
    while changed:
        changed = False
        for p in g.productions:
            total = sum(1 if s.is_terminal else best[s] for s in p.rhs)
            if total < best[p.lhs]:
                best[p.lhs] = total
                changed = True
    return best


def productive_set(g: Grammar) -> frozenset:
    return frozenset(a for a, n in min_yield_lengths(g).items() if n != INF)


def reachable_set(g: Grammar, start: Symbol) -> frozenset:
    seen = {start}
    todo = [start]
    while todo:
        a = todo.pop()
        for p in g.productions_for(a):
            for s in p.rhs:
                if not s.is_terminal and s not in seen:
                    seen.add(s)
                    todo.append(s)
    return frozenset(seen)


class Diagnostic(NamedTuple):
    kind: str  # "unreachable", "unproductive" or "unused-terminal"
    symbol: Symbol

    def __str__(self) -> str:
        return f"{self.kind}: {self.symbol.name}"


def validate(g: Grammar, start: Optional[Symbol] = None) -> list:
    """Warnings about useless symbols; an empty list means the grammar is clean.

    Reachability is only checked when a start symbol is known.
    """
    start = start or g.start
    out: list = []
    if start is not None:
        reach = reachable_set(g, start)
        out += [Diagnostic("unreachable", a) for a in g.sorted_nonterminals() if a not in reach]
    prod = productive_set(g)
    out += [Diagnostic("unproductive", a) for a in g.sorted_nonterminals() if a not in prod]
    used = {s for p in g.productions for s in p.rhs if s.is_terminal}
    out += [Diagnostic("unused-terminal", t) for t in g.sorted_terminals() if t not in used]
    return out


def is_cnf(g: Grammar) -> bool:
    """True iff every production is ``A -> B C`` or ``A -> x``."""
    for p in g.productions:
        rhs = p.rhs
        if len(rhs) == 2 and not rhs[0].is_terminal and not rhs[1].is_terminal:
            continue
        if len(rhs) == 1 and rhs[0].is_terminal:
            continue
        return False
    return True
