"""Rule-based sentence splitting for Turkish prose.

Paragraphs (lines) are split independently, so an empty line can never
produce an empty sentence.  Within a line, a terminator run (``.!?…``)
ends a sentence unless the preceding word is a known abbreviation, a
single initial, or a bare number (ordinals like ``3.``), or unless the
line continues in lowercase.
"""

from __future__ import annotations

_TERMINATORS = frozenset(".!?…")
_CLOSERS = frozenset("\"'»”’)")  # trailing quotes close with the sentence
_OPENERS = frozenset("\"'«“‘(–—-")

#: Lowercased abbreviations (without the final period) that do not end a
#: sentence.  Matching uses Turkish case folding.
ABBREVIATIONS = frozenset({
    "dr", "prof", "doç", "yrd", "av", "op", "uzm",
    "vb", "vs", "vd", "bkz", "örn", "yy", "age", "akt", "çev", "ed", "haz",
    "hz", "sok", "cad", "mah", "apt", "no", "tel",
    "mö", "ms", "km", "kg", "cm", "mm", "lt",
})

_TR_CASE_MAP = str.maketrans({"I": "ı", "İ": "i"})


def turkish_lower(text: str) -> str:
    """Lowercase with Turkish dotted/dotless i handling (I→ı, İ→i)."""
    return text.translate(_TR_CASE_MAP).lower()


def split_sentences(text: str) -> list[str]:
    """Split raw text into sentence strings, dropping blank lines."""
    sentences: list[str] = []
    for line in text.splitlines():
        line = line.strip()
        if line:
            sentences.extend(_split_line(line))
    return sentences


def _split_line(line: str) -> list[str]:
    out: list[str] = []
    start = 0
    i = 0
    n = len(line)
    while i < n:
        if line[i] not in _TERMINATORS:
            i += 1
            continue
        j = i + 1
        while j < n and (line[j] in _TERMINATORS or line[j] in _CLOSERS):
            j += 1
        if _is_boundary(line, start, i, j):
            piece = line[start:j].strip()
            if piece:
                out.append(piece)
            start = j
        i = j
    tail = line[start:].strip()
    if tail:
        out.append(tail)
    return out


def _is_boundary(line: str, start: int, term: int, after: int) -> bool:
    if line[term] == ".":
        # Look at the word immediately before the period.
        k = term
        while k > start and (line[k - 1].isalnum() or line[k - 1] in "'’"):
            k -= 1
        word = line[k:term]
        if word:
            if word.isdigit():
                return False
            if len(word) == 1 and word.isalpha():
                return False
            if turkish_lower(word) in ABBREVIATIONS:
                return False
    nxt = after
    while nxt < len(line) and line[nxt].isspace():
        nxt += 1
    if nxt >= len(line):
        return True
    if any(c in _CLOSERS for c in line[term:after]):
        # A closing quote or bracket marks a visible sentence end, even
        # when the attribution that follows starts in lowercase.
        return True
    ch = line[nxt]
    return ch.isupper() or ch.isdigit() or ch in _OPENERS
