"""Command-line front end: ``cfgwalk <command> <grammar file> ...``."""

from __future__ import annotations

import argparse
import sys
from typing import Optional

from .cnf import to_cnf
from .correspondence import CYK, ENUMERATION, WALKS, membership, verify_theorem1
from .diagram import build_diagram, to_dot
from .enumerate import DEFAULT_CAP, BudgetExceeded, enumerate_language
from .grammar import GrammarError, load_grammar, render, validate, word_str
from .walks import proper_structure

EXIT_OK = 0
EXIT_NOT_MEMBER = 1
EXIT_INCONCLUSIVE = 2
EXIT_DISCREPANCY = 3
EXIT_INPUT = 64
EXIT_USAGE = 65

METHOD_NAMES = {"walks": WALKS, "cyk": CYK, "enum": ENUMERATION}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cfgwalk", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name: str, help: str, start: bool = False) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        p.add_argument("grammar", help="grammar file")
        if start:
            p.add_argument("--start", help="start symbol (default: the file's start directive)")
        return p

    command("check", "parse a grammar and report useless symbols")
    command("cnf", "print an equivalent grammar in Chomsky normal form", start=True)
    p = command("diagram", "write the transition diagram as Graphviz DOT")
    p.add_argument("--dot", metavar="OUT", help="output file (default: standard output)")
    p = command("member", "decide whether a word is in the language", start=True)
    p.add_argument("--word", required=True, help='space-separated terminals, e.g. "a a b b"')
    p.add_argument("--method", choices=sorted(METHOD_NAMES), default="walks")
    p.add_argument("--budget", type=int, default=DEFAULT_CAP)
    p = command("enumerate", "list the language up to a length", start=True)
    p.add_argument("--max-len", type=int, default=6)
    p.add_argument("--budget", type=int, default=DEFAULT_CAP)
    p = command("verify", "check derivations against proper walks word by word", start=True)
    p.add_argument("--max-len", type=int, default=6)
    p.add_argument("--budget", type=int, default=DEFAULT_CAP)
    p.add_argument("--report", metavar="OUT", help="write the JSON report here")
    return parser


def _start(g, args):
    name = getattr(args, "start", None)
    if name is None:
        if g.start is None:
            raise UsageError("no start symbol: pass --start or add a start directive")
        return g.start
    try:
        return g.nonterminal(name)
    except GrammarError as exc:
        raise UsageError(str(exc)) from None


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def run(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        g = load_grammar(args.grammar)
    except OSError as exc:
        print(f"cfgwalk: cannot read {args.grammar}: {exc.strerror}", file=sys.stderr)
        return EXIT_INPUT
    except GrammarError as exc:
        print(f"cfgwalk: {args.grammar}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        return COMMANDS[args.command](g, args)
    except UsageError as exc:
        print(f"cfgwalk: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"cfgwalk: inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE


def cmd_check(g, args) -> int:
    print(
        f"{len(g.nonterminals)} nonterminals, {len(g.terminals)} terminals, "
        f"{len(g.productions)} productions"
    )
    for diag in validate(g):
        print(f"warning: {diag}")
    return EXIT_OK


def cmd_cnf(g, args) -> int:
    res = to_cnf(g, _start(g, args))
    for note in res.notes():
        print(f"# {note}")
    print(render(res.grammar), end="")
    return EXIT_OK


def cmd_diagram(g, args) -> int:
    dot = to_dot(build_diagram(g))
    if args.dot:
        _write(args.dot, dot)
    else:
        print(dot, end="")
    return EXIT_OK


def cmd_member(g, args) -> int:
    start = _start(g, args)
    try:
        word = g.terminal_word(args.word.split())
    except GrammarError as exc:
        raise UsageError(str(exc)) from None
    d = build_diagram(g)
    verdict = membership(g, d, start, word, METHOD_NAMES[args.method], args.budget)
    print(verdict.describe())
    if verdict.witness is not None:
        if args.method == "walks":
            print("walk:", " ".join(map(str, verdict.witness)))
            print("structure:", proper_structure(d, verdict.witness).render())
        else:
            print("tree:", verdict.witness.render())
    if verdict.note:
        print(f"note: {verdict.note}", file=sys.stderr)
    if verdict.member is None:
        return EXIT_INCONCLUSIVE
    return EXIT_OK if verdict.member else EXIT_NOT_MEMBER


def cmd_enumerate(g, args) -> int:
    if args.max_len < 0:
        raise UsageError("--max-len must be >= 0")
    words = enumerate_language(g, _start(g, args), args.max_len, cap=args.budget)
    for w in sorted(words, key=lambda w: (len(w), [s.name for s in w])):
        print(word_str(w))
    return EXIT_OK


def cmd_verify(g, args) -> int:
    if args.max_len < 0:
        raise UsageError("--max-len must be >= 0")
    report = verify_theorem1(g, _start(g, args), args.max_len, name=args.grammar, cap=args.budget)
    print(report.headline())
    for item in report.discrepancies:
        print(f"  {item}", file=sys.stderr)
    if report.clean:
        if args.report:
            _write(args.report, report.to_json())
        return EXIT_OK
    if all(item["kind"] == "inconclusive" for item in report.discrepancies):
        return EXIT_INCONCLUSIVE
    return EXIT_DISCREPANCY


COMMANDS = {
    "check": cmd_check,
    "cnf": cmd_cnf,
    "diagram": cmd_diagram,
    "member": cmd_member,
    "enumerate": cmd_enumerate,
    "verify": cmd_verify,
}


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
