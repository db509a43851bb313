"""The transition diagram of a grammar.

Each nonterminal A gets two vertices, ``u_A`` (enter A) and ``v_A``
(leave A).  A production ``A -> a0 B1 a1 ... Bk ak`` contributes

* k = 0: one LEAF arc ``u_A -> v_A`` labelled ``(a0, ε)``;
* k >= 1: an ENTRY arc ``u_A -> u_B1`` labelled ``(a0, a1 B2 a2 ... Bk ak)``,
  BRIDGE arcs ``v_Bi -> u_B(i+1)`` labelled ``(ai, B(i+1)' ai')`` and an
  EXIT arc ``v_Bk -> v_A`` labelled ``(ak, ak')``.

The four roles are exactly the four (side, side) endpoint shapes, which is
what lets :mod:`cfgwalk.walks` parse a walk like a bracket sequence.
Parallel arcs are kept apart: the production an arc came from is how a
walk is turned back into a derivation.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import NamedTuple

from .grammar import Grammar, Production, Symbol
from .monoid import Label, SignedSymbol, prime_word, reduce


class Role(enum.Enum):
    LEAF = "leaf"
    ENTRY = "entry"
    BRIDGE = "bridge"
    EXIT = "exit"


SHAPES = {
    ("u", "v"): Role.LEAF,
    ("u", "u"): Role.ENTRY,
    ("v", "u"): Role.BRIDGE,
    ("v", "v"): Role.EXIT,
}


class Vertex(NamedTuple):
    side: str  # "u" or "v"
    nonterminal: Symbol

    def __str__(self) -> str:
        return f"{self.side}_{self.nonterminal.name}"


def u(a: Symbol) -> Vertex:
    return Vertex("u", a)


def v(a: Symbol) -> Vertex:
    return Vertex("v", a)


@dataclass(frozen=True)
class Arc:
    id: int
    source: Vertex
    target: Vertex
    label: Label
    production: int
    role: Role
    index: int = 0  # bridge number i for Bridge(i), else 0

    @property
    def shape(self) -> Role:
        return SHAPES[(self.source.side, self.target.side)]

    @property
    def provenance(self) -> str:
        role = f"bridge({self.index})" if self.role is Role.BRIDGE else self.role.value
        return f"p{self.production}:{role}"


def arcs_for_production(p: Production, first_id: int = 0) -> list:
    """Arcs contributed by one production, ids counting from ``first_id``."""
    a = p.lhs
    runs, nts = p.runs, p.nonterminals
    out: list = []

    def emit(src: Vertex, dst: Vertex, word: tuple, tail: list, role: Role, index: int = 0):
        t = reduce(tail)
        assert len(t) == len(tail), "arc tails are built in normal form"
        out.append(Arc(first_id + len(out), src, dst, Label(word, t), p.id, role, index))

    if not nts:
        emit(u(a), v(a), runs[0], [], Role.LEAF)
        return out
    rest: list = [SignedSymbol(s, False) for s in runs[1]]
    for b, run in zip(nts[1:], runs[2:]):
        rest.append(SignedSymbol(b, False))
        rest.extend(SignedSymbol(s, False) for s in run)
    emit(u(a), u(nts[0]), runs[0], rest, Role.ENTRY)
    for i in range(1, len(nts)):
        tail = [SignedSymbol(nts[i], True)] + prime_word(runs[i])
        emit(v(nts[i - 1]), u(nts[i]), runs[i], tail, Role.BRIDGE, i)
    emit(v(nts[-1]), v(a), runs[-1], prime_word(runs[-1]), Role.EXIT)
    return out


@dataclass(frozen=True)
class Diagram:
    grammar: Grammar
    vertices: frozenset
    arcs: tuple
    out_arcs: dict = field(repr=False, compare=False, hash=False)
    by_production: dict = field(repr=False, compare=False, hash=False)

    def arc(self, arc_id: int) -> Arc:
        if not 0 <= arc_id < len(self.arcs):
            raise KeyError(f"unknown arc id {arc_id}")
        return self.arcs[arc_id]

    def leaving(self, vertex: Vertex) -> tuple:
        return self.out_arcs.get(vertex, ())


def build_diagram(g: Grammar) -> Diagram:
    vertices = frozenset(vx for a in g.nonterminals for vx in (u(a), v(a)))
    arcs: list = []
    by_production: dict = {}
    for p in g.productions:
        new = arcs_for_production(p, len(arcs))
        by_production[p.id] = tuple(new)
        arcs.extend(new)
    out: dict = {vx: [] for vx in vertices}
    for arc in arcs:
        out[arc.source].append(arc)
    return Diagram(
        g,
        vertices,
        tuple(arcs),
        {vx: tuple(lst) for vx, lst in out.items()},
        by_production,
    )


_BARE_ID = re.compile(r"^[A-Za-z0-9_]+$")


def _dot_id(vx: Vertex) -> str:
    name = str(vx)
    return name if _BARE_ID.match(name) else _dot_str(name)


def _dot_str(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(d: Diagram, name: str = "H") -> str:
    """Render the diagram as a Graphviz digraph; output is deterministic.

    Each edge carries its label and a trailing comment with the arc id and
    provenance (production id and role).
    """
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    for a in d.grammar.sorted_nonterminals():
        lines.append(f"  {_dot_id(u(a))};")
        lines.append(f"  {_dot_id(v(a))};")
    for arc in d.arcs:
        lines.append(
            f"  {_dot_id(arc.source)} -> {_dot_id(arc.target)} "
            f"[label={_dot_str(str(arc.label))}];  // arc {arc.id} {arc.provenance}"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
