"""Transition diagrams and proper walks for context-free grammars."""

from .cnf import CnfResult, to_cnf
from .correspondence import (
    MembershipVerdict,
    VerificationReport,
    cyk_membership,
    derivation_to_walk,
    membership,
    verify_theorem1,
    walk_to_derivation,
)
from .diagram import Arc, Diagram, Role, Vertex, arcs_for_production, build_diagram, to_dot
from .enumerate import BudgetExceeded, enumerate_language, enumerate_parse_trees
from .grammar import (
    Grammar,
    GrammarError,
    N,
    ParseTree,
    Production,
    Symbol,
    T,
    is_cnf,
    load_grammar,
    parse_grammar,
    render,
    validate,
)
from .kernels import BACKEND
from .monoid import Label, SignedSymbol, TWord, compose, is_neutral_tail, prime, reduce, t_concat
from .walks import (
    Leaf,
    Node,
    SearchResult,
    decompose,
    enumerate_proper_walks,
    find_proper_walk,
    is_proper,
    proper_structure,
    walk_label,
)

__version__ = "0.1.0"
