"""Shared text primitives: statement normalization, tokenization, splitting.

The same tokenizer feeds both the lexical index and the dense encoder so that
scores stay comparable across retrievers. It lowercases, keeps %, >, < as
standalone tokens, preserves hyphens inside compound tokens ("40-45",
"mild-moderate"), and keeps decimal points inside numbers ("3.4").
"""

from __future__ import annotations

import re

# Alnum runs, optionally glued by decimal points (digits only) or single
# hyphens; %, > and < survive as one-character tokens. Everything else is a
# separator.
_TOKEN_RE = re.compile(r"[a-z0-9]+(?:\.[0-9]+)*(?:-[a-z0-9]+(?:\.[0-9]+)*)*|[%<>]")

_TRAILING_PUNCT_RE = re.compile(r"[.,;:!?]+$")
_WS_RE = re.compile(r"\s+")

# Abbreviations that may carry an internal/trailing period without ending a
# statement. Matched against the word immediately before the period.
DEFAULT_ABBREVIATIONS = frozenset({"e.g", "i.e", "vs", "dr", "approx"})


def normalize_statement(text: str) -> str:
    """Lowercase, collapse whitespace, strip trailing sentence punctuation.

    Idempotent: normalize(normalize(x)) == normalize(x).
    """
    out = _WS_RE.sub(" ", text.strip().lower()).strip()
    out = _TRAILING_PUNCT_RE.sub("", out).strip()
    return out


def tokenize(text: str) -> list[str]:
    """Split text into retrieval tokens. "LVEF > 40%" -> [lvef, >, 40, %]."""
    return _TOKEN_RE.findall(text.lower())


def split_statements(
    text: str,
    abbreviations: frozenset[str] = DEFAULT_ABBREVIATIONS,
) -> list[str]:
    """Split a section body into single-clause statements.

    Splits at newlines and after sentence punctuation (. ; ! ?), except when
    the period sits inside a number ("1.2 cm") or follows a protected
    abbreviation. Trailing punctuation stays attached to its statement, so
    joining the statements with single spaces reproduces the input modulo
    whitespace.
    """
    statements: list[str] = []
    for line in text.split("\n"):
        start = 0
        i = 0
        n = len(line)
        while i < n:
            ch = line[i]
            if ch in ".;!?":
                if ch == "." and i + 1 < n and line[i + 1].isdigit():
                    i += 1
                    continue
                if ch == "." and _preceding_word(line, i) in abbreviations:
                    i += 1
                    continue
                piece = line[start : i + 1].strip()
                if piece:
                    statements.append(piece)
                start = i + 1
            i += 1
        tail = line[start:].strip()
        if tail:
            statements.append(tail)
    return statements


def _preceding_word(line: str, i: int) -> str:
    j = i - 1
    while j >= 0 and not line[j].isspace():
        j -= 1
    return line[j + 1 : i].lower()


def whitespace_token_count(text: str) -> int:
    """Token count used for corpus length statistics (plain whitespace split)."""
    return len(text.split())
