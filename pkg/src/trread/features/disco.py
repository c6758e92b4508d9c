"""Entity-density discourse features over BIO entity tags."""

from __future__ import annotations

from dataclasses import dataclass

from ..corpus import Document, NON_WORD_UPOS, Token, turkish_lower, word_tokens
from ..errors import DegenerateInputError

FEATURE_NAMES = (
    "entities_per_sentence",
    "entities_per100w",
    "unique_entity_ratio",
    "entity_token_proportion",
)


@dataclass(frozen=True)
class DiscoFeatures:
    entities_per_sentence: float
    entities_per100w: float
    unique_entity_ratio: float
    entity_token_proportion: float

    def as_dict(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in FEATURE_NAMES}


@dataclass(frozen=True)
class EntityMention:
    tokens: tuple[Token, ...]
    entity_type: str

    @property
    def surface(self) -> str:
        return " ".join(tok.surface for tok in self.tokens)


def _parse_tag(tag: str) -> tuple[str, str]:
    """Split a BIO tag into (marker, type); anything unparseable is O."""
    if tag.startswith("B-") and len(tag) > 2:
        return "B", tag[2:]
    if tag.startswith("I-") and len(tag) > 2:
        return "I", tag[2:]
    return "O", ""


def entity_mentions(document: Document) -> list[EntityMention]:
    """Contiguous BIO mentions per sentence. An I- tag with no open
    same-type mention starts a new one rather than being dropped."""
    mentions: list[EntityMention] = []
    for sentence in document.sentences:
        open_tokens: list[Token] = []
        open_type = ""

        def close() -> None:
            nonlocal open_tokens, open_type
            if open_tokens:
                mentions.append(EntityMention(tuple(open_tokens), open_type))
            open_tokens = []
            open_type = ""

        for tok in sentence.tokens:
            marker, etype = _parse_tag(tok.entity_tag)
            if marker == "B":
                close()
                open_tokens = [tok]
                open_type = etype
            elif marker == "I":
                if open_tokens and open_type == etype:
                    open_tokens.append(tok)
                else:
                    close()
                    open_tokens = [tok]
                    open_type = etype
            else:
                close()
        close()
    return mentions


def extract_disco(document: Document) -> DiscoFeatures:
    words = word_tokens(document)
    if not words:
        raise DegenerateInputError("document has no word tokens",
                                   doc_id=document.doc_id)
    mentions = entity_mentions(document)
    n_mentions = len(mentions)
    n_words = len(words)
    n_sentences = len(document.sentences)
    surfaces = {turkish_lower(m.surface) for m in mentions}
    # Proportion counts only word tokens inside mentions, matching the
    # word-token denominator so the value stays within [0, 1].
    inside = sum(1 for m in mentions for tok in m.tokens
                 if tok.upos not in NON_WORD_UPOS)
    return DiscoFeatures(
        entities_per_sentence=n_mentions / n_sentences,
        entities_per100w=100.0 * n_mentions / n_words,
        unique_entity_ratio=len(surfaces) / n_mentions if n_mentions else 0.0,
        entity_token_proportion=inside / n_words,
    )
