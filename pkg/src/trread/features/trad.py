"""Surface features: two Turkish readability formulas, length means, and
polysyllabic word rates (3-, 4-, 5+ syllable bands per 100 words)."""

from __future__ import annotations

from dataclasses import dataclass

from ..config import RunConfig
from ..corpus import Document, syllable_count, word_tokens
from ..errors import DegenerateInputError

FEATURE_NAMES = (
    "atesman_score",
    "cetinkaya_score",
    "mean_sentence_len_words",
    "mean_word_len_syllables",
    "poly3_per100w",
    "poly4_per100w",
    "poly5plus_per100w",
)


@dataclass(frozen=True)
class TradFeatures:
    atesman_score: float
    cetinkaya_score: float
    mean_sentence_len_words: float
    mean_word_len_syllables: float
    poly3_per100w: float
    poly4_per100w: float
    poly5plus_per100w: float

    def as_dict(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in FEATURE_NAMES}


def _linear_formula(coeffs: dict, mean_syll_per_word: float,
                    mean_words_per_sentence: float) -> float:
    if mean_syll_per_word <= 0 or mean_words_per_sentence <= 0:
        raise DegenerateInputError(
            "readability formulas require positive length means")
    return (coeffs["intercept"]
            - coeffs["syllable_weight"] * mean_syll_per_word
            - coeffs["sentence_weight"] * mean_words_per_sentence)


def atesman(mean_syll_per_word: float, mean_words_per_sentence: float,
            config: RunConfig | None = None) -> float:
    """198.825 - 40.175*syllables/word - 2.610*words/sentence (default coefficients)."""
    config = config or RunConfig.default()
    return _linear_formula(config.formulas["atesman"], mean_syll_per_word,
                           mean_words_per_sentence)


def cetinkaya_uzun(mean_syll_per_word: float, mean_words_per_sentence: float,
                   config: RunConfig | None = None) -> float:
    """118.823 - 25.987*syllables/word - 0.971*words/sentence (default coefficients)."""
    config = config or RunConfig.default()
    return _linear_formula(config.formulas["cetinkaya"], mean_syll_per_word,
                           mean_words_per_sentence)


def extract_trad(document: Document, config: RunConfig | None = None) -> TradFeatures:
    config = config or RunConfig.default()
    words = word_tokens(document)
    if not words:
        raise DegenerateInputError("document has no word tokens",
                                   doc_id=document.doc_id)
    syllables = [syllable_count(tok.surface) for tok in words]
    n_words = len(words)
    mean_word_len = sum(syllables) / n_words
    mean_sentence_len = n_words / len(document.sentences)
    poly3 = sum(1 for s in syllables if s == 3)
    poly4 = sum(1 for s in syllables if s == 4)
    poly5p = sum(1 for s in syllables if s >= 5)
    return TradFeatures(
        atesman_score=atesman(mean_word_len, mean_sentence_len, config),
        cetinkaya_score=cetinkaya_uzun(mean_word_len, mean_sentence_len, config),
        mean_sentence_len_words=mean_sentence_len,
        mean_word_len_syllables=mean_word_len,
        poly3_per100w=100.0 * poly3 / n_words,
        poly4_per100w=100.0 * poly4 / n_words,
        poly5plus_per100w=100.0 * poly5p / n_words,
    )
