"""Regex tokenizer for Turkish sentences.

Apostrophe-attached suffixes stay on their word (``Ankara'da`` is one
token), decimal and grouped numbers stay whole, an ellipsis is a single
token, and any other non-space character stands alone.
"""

from __future__ import annotations

import re

_TOKEN_RE = re.compile(
    r"\d+(?:[.,]\d+)*(?:['’][^\W\d_]+)?"  # numbers, incl. 3,5 / 1.000 / 40'ı
    r"|[^\W\d_]+(?:['’][^\W\d_]+)*"       # words, with apostrophe suffixes
    r"|\.\.\.|…"                          # ellipsis
    r"|\S",                               # anything else, one char at a time
)

_NUMBER_RE = re.compile(r"\d+(?:[.,]\d+)*(?:['’][^\W\d_]+)?\Z")
_SYMBOLS = frozenset("%&§$€₺£#+=<>^~©®")


def tokenize(sentence: str) -> list[str]:
    """Surface tokens of one sentence, in order."""
    return _TOKEN_RE.findall(sentence)


def is_number(surface: str) -> bool:
    return _NUMBER_RE.match(surface) is not None


def is_symbol(surface: str) -> bool:
    return all(ch in _SYMBOLS for ch in surface) and bool(surface)


def is_punctuation(surface: str) -> bool:
    return not any(ch.isalnum() for ch in surface) and not is_symbol(surface)
