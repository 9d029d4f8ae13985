"""Tokenizer shared by the MiniLang parser, the mutation engines and the
syntactic similarity metrics."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

IDENT = "IDENT"
INT_LIT = "INT_LIT"
OPERATOR = "OPERATOR"
PUNCT = "PUNCT"
KEYWORD = "KEYWORD"

KEYWORDS = frozenset({"fn", "if", "else", "while", "return"})

# longest first: maximal munch
OPERATORS = (
    "<=", ">=", "==", "!=", "&&", "||",
    "<", ">", "=", "!", "+", "-", "*", "/", "%",
)
PUNCTUATION = frozenset("(){},;?:")


class LexError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    span: tuple[int, int]

    @property
    def start(self) -> int:
        return self.span[0]

    @property
    def end(self) -> int:
        return self.span[1]


@dataclass(frozen=True)
class TokenStream:
    tokens: tuple[Token, ...]
    source_id: str = ""
    source: str = field(default="", repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)

    def __getitem__(self, index):
        return self.tokens[index]

    @property
    def texts(self) -> list[str]:
        return [t.text for t in self.tokens]


def _is_ident_start(c: str) -> bool:
    return c == "_" or ("a" <= c <= "z") or ("A" <= c <= "Z")


def _is_ident_char(c: str) -> bool:
    return _is_ident_start(c) or ("0" <= c <= "9")


def lex(source: str, source_id: str = "") -> TokenStream:
    """Split ``source`` into tokens.  Whitespace and ``//`` line comments are
    skipped; every token keeps its byte span into ``source``."""
    tokens: list[Token] = []
    i, n = 0, len(source)
    while i < n:
        c = source[i]
        if c in " \t\r\n":
            i += 1
            continue
        if source.startswith("//", i):
            j = source.find("\n", i)
            i = n if j < 0 else j + 1
            continue
        start = i
        if _is_ident_start(c):
            while i < n and _is_ident_char(source[i]):
                i += 1
            text = source[start:i]
            kind = KEYWORD if text in KEYWORDS else IDENT
        elif "0" <= c <= "9":
            while i < n and "0" <= source[i] <= "9":
                i += 1
            if i < n and _is_ident_start(source[i]):
                raise LexError("malformed integer literal", start)
            text, kind = source[start:i], INT_LIT
        elif c in PUNCTUATION:
            i += 1
            text, kind = c, PUNCT
        else:
            for op in OPERATORS:
                if source.startswith(op, i):
                    break
            else:
                raise LexError(f"illegal character {c!r}", start)
            i += len(op)
            text, kind = op, OPERATOR
        tokens.append(Token(kind, text, (start, i)))
    return TokenStream(tuple(tokens), source_id, source)


def render(texts: Iterable[str]) -> str:
    """Join token texts with single spaces; relexing the result yields the
    same texts."""
    return " ".join(texts)


def split_identifier(word: str) -> list[str]:
    """Split on underscores and lower/upper case boundaries, lowercased.

    >>> split_identifier("maxValue_count")
    ['max', 'value', 'count']
    """
    parts: list[str] = []
    for chunk in word.split("_"):
        if not chunk:
            continue
        current = chunk[0]
        for prev, ch in zip(chunk, chunk[1:]):
            if ch.isupper() and not prev.isupper():
                parts.append(current)
                current = ch
            else:
                current += ch
        parts.append(current)
    return [p.lower() for p in parts if p]
