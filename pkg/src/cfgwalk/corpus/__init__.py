"""Bundled example grammars."""

from importlib import resources

from ..grammar import Grammar, parse_grammar


def names() -> list:
    return sorted(
        f.name[:-4] for f in resources.files(__name__).iterdir() if f.name.endswith(".cfg")
    )


def text(name: str) -> str:
    return resources.files(__name__).joinpath(f"{name}.cfg").read_text(encoding="utf-8")


def load(name: str) -> Grammar:
    return parse_grammar(text(name))
