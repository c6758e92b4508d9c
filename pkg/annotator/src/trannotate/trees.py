"""Optional shallow constituency bracketing.

Each sentence becomes a flat chunk tree like ``(S (NP bir ev) (VP yandı .))``:
nominal runs become NP chunks, verbal runs become VP chunks, and leftover
tokens (punctuation, conjunctions) join the chunk that is open when they
appear.  Tokens containing parentheses are dropped because they cannot be
represented in the bracketed format.
"""

from __future__ import annotations

from .pipeline import AnnotatedSentence

_NP_UPOS = frozenset({"DET", "NUM", "ADJ", "NOUN", "PROPN", "PRON"})
_VP_UPOS = frozenset({"VERB", "AUX", "ADV"})


def _chunk_label(upos: str) -> str | None:
    if upos in _NP_UPOS:
        return "NP"
    if upos in _VP_UPOS:
        return "VP"
    return None


def bracket(sentence: AnnotatedSentence) -> str | None:
    """One bracketed tree line for the sentence, or None when nothing is
    representable."""
    chunks: list[tuple[str, list[str]]] = []
    pending: list[str] = []  # tokens seen before the first chunk opens
    for token in sentence.tokens:
        if "(" in token.surface or ")" in token.surface:
            continue
        label = _chunk_label(token.upos)
        if label is None:
            if chunks:
                chunks[-1][1].append(token.surface)
            else:
                pending.append(token.surface)
            continue
        if chunks and chunks[-1][0] == label:
            chunks[-1][1].append(token.surface)
        else:
            chunks.append((label, [token.surface]))
            if pending:
                chunks[-1][1][:0] = pending
                pending.clear()
    if not chunks:
        return None
    parts = " ".join(f"({label} {' '.join(words)})" for label, words in chunks)
    return f"(S {parts})"
