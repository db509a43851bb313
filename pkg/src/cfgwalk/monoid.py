"""The cancellation monoid T and the label monoid R = Sigma* x T.

T is generated by the grammar symbols and their primed copies, subject
only to ``z' z = 1``.  The relation is one-sided: ``z z'`` does not
cancel.  Making it two-sided would turn T into a free group and let
unrelated walk fragments cancel each other.

Every :class:`TWord` is kept in normal form (no primed letter directly
followed by its plain base).  Because redexes cannot overlap, normal
forms are unique and the left-to-right stack pass in
:func:`cfgwalk.kernels.reduce_codes` computes them.
"""

from __future__ import annotations

import threading
from typing import Iterable, NamedTuple, Sequence

from .grammar import Symbol, word_str
from .kernels import concat_codes, reduce_codes

_lock = threading.Lock()
_index: dict = {}
_symbols: list = []


def symbol_index(sym: Symbol) -> int:
    """Process-wide dense index of a symbol, used for letter codes."""
    idx = _index.get(sym)
    if idx is None:
        with _lock:
            idx = _index.get(sym)
            if idx is None:
                idx = len(_symbols)
                _symbols.append(sym)
                _index[sym] = idx
    return idx


class SignedSymbol(NamedTuple):
    base: Symbol
    primed: bool = False

    @property
    def code(self) -> int:
        return 2 * symbol_index(self.base) + self.primed

    @classmethod
    def from_code(cls, code: int) -> "SignedSymbol":
        return cls(_symbols[code >> 1], bool(code & 1))

    def flip(self) -> "SignedSymbol":
        return SignedSymbol(self.base, not self.primed)

    def __str__(self) -> str:
        return self.base.name + ("'" if self.primed else "")


def plain(*symbols: Symbol) -> list:
    return [SignedSymbol(s, False) for s in symbols]


def primed(*symbols: Symbol) -> list:
    return [SignedSymbol(s, True) for s in symbols]


class TWord:
    """Reduced element of T, stored as a tuple of letter codes."""

    __slots__ = ("codes",)

    def __init__(self, codes: tuple = ()):
        self.codes = codes

    @classmethod
    def of(cls, letters: Iterable[SignedSymbol]) -> "TWord":
        return reduce(letters)

    @property
    def letters(self) -> tuple:
        return tuple(SignedSymbol.from_code(c) for c in self.codes)

    def is_empty(self) -> bool:
        return not self.codes

    def has_primed(self) -> bool:
        return any(c & 1 for c in self.codes)

    def __mul__(self, other: "TWord") -> "TWord":
        return t_concat(self, other)

    def __len__(self) -> int:
        return len(self.codes)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, TWord) and self.codes == other.codes

    def __hash__(self) -> int:
        return hash(self.codes)

    def __repr__(self) -> str:
        return f"TWord({render_tail(self)!r})"

    def __str__(self) -> str:
        return render_tail(self)


EMPTY = TWord()


def reduce(raw: Iterable[SignedSymbol]) -> TWord:
    return TWord(reduce_codes([s.code for s in raw]))


def prime(word: Sequence[SignedSymbol]) -> list:
    """Reverse the word and toggle every prime: (z1...zk)' = zk'...z1'."""
    return [s.flip() for s in reversed(word)]


def prime_word(word: Sequence[Symbol]) -> list:
    """Prime of a plain grammar word."""
    return [SignedSymbol(s, True) for s in reversed(word)]


def t_concat(u: TWord, v: TWord) -> TWord:
    if not u.codes:
        return v
    if not v.codes:
        return u
    return TWord(concat_codes(u.codes, v.codes))


class Label(NamedTuple):
    """Element ``(word, tail)`` of R; ``word`` is a terminal word."""

    word: tuple = ()
    tail: TWord = EMPTY

    def __matmul__(self, other: "Label") -> "Label":
        return compose(self, other)

    def __str__(self) -> str:
        return f"({word_str(self.word)}, {render_tail(self.tail)})"


IDENTITY = Label((), EMPTY)


def compose(p: Label, q: Label) -> Label:
    """(w1, z1) o (w2, z2) = (w1 w2, z2 z1); note the tails swap order."""
    return Label(p.word + q.word, t_concat(q.tail, p.tail))


def is_neutral_tail(p: Label) -> bool:
    return not p.tail.codes


def render_tail(t: TWord) -> str:
    if not t.codes:
        return "ε"
    return " ".join(str(s) for s in t.letters)
