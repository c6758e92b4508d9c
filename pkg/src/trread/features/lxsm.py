"""Lexico-semantic features: TTR variants, MATTR, POS-category variation,
psycholinguistic frequency bands, and basic-word familiarity."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..corpus import Document, Token, sentence_word_tokens, turkish_lower, word_tokens
from ..errors import DegenerateInputError
from ..lexicon import Lexicon

FEATURE_NAMES = (
    "ttr",
    "root_ttr",
    "corrected_ttr",
    "bilog_ttr",
    "uber_index",
    "mattr",
    "noun_var",
    "verb_var",
    "adj_var",
    "adv_var",
    "lexical_density",
    "early_freq_per_word",
    "late_freq_per_word",
    "early_freq_per_sentence",
    "late_freq_per_sentence",
    "child_corpus_proportion",
    "familiarity_pct",
)

_VARIATION_UPOS = ("NOUN", "VERB", "ADJ", "ADV")
_CONTENT_UPOS = frozenset({"NOUN", "PROPN", "VERB", "ADJ", "ADV"})


@dataclass(frozen=True)
class LxsmFeatures:
    ttr: float
    root_ttr: float
    corrected_ttr: float
    bilog_ttr: float
    uber_index: float
    mattr: float
    noun_var: float
    verb_var: float
    adj_var: float
    adv_var: float
    lexical_density: float
    early_freq_per_word: float
    late_freq_per_word: float
    early_freq_per_sentence: float
    late_freq_per_sentence: float
    child_corpus_proportion: float
    familiarity_pct: float

    def as_dict(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in FEATURE_NAMES}


def ttr_family(types: int, tokens: int) -> tuple[float, float, float, float, float]:
    """Plain, root, corrected, bilogarithmic, and Uber TTR for T types over
    N tokens.  Bilog is 0 when either log is degenerate (N=1 or T=1); Uber
    is 0 when T=N, where its denominator vanishes."""
    if tokens < 1 or types < 1 or types > tokens:
        raise DegenerateInputError(
            f"invalid type/token counts: T={types}, N={tokens}")
    ttr = types / tokens
    root_ttr = types / math.sqrt(tokens)
    corrected_ttr = types / math.sqrt(2 * tokens)
    if tokens > 1 and types > 1:
        bilog_ttr = math.log(types) / math.log(tokens)
    else:
        bilog_ttr = 0.0
    if types < tokens:
        log_n = math.log(tokens)
        uber = log_n * log_n / (log_n - math.log(types))
    else:
        uber = 0.0
    return ttr, root_ttr, corrected_ttr, bilog_ttr, uber


def mattr(tokens: list[str], window: int) -> float:
    """Moving-average TTR over fixed-size windows (plain TTR when N <= W).

    Streaming implementation: one pass with a sliding type counter; the
    mean is type_sum / (windows * W), exact in the integer numerator.
    """
    if window < 1:
        raise DegenerateInputError(f"window must be >= 1, got {window}")
    n = len(tokens)
    if n == 0:
        raise DegenerateInputError("mattr of an empty token list")
    if n <= window:
        return len(set(tokens)) / n
    counts: dict[str, int] = {}
    for tok in tokens[:window]:
        counts[tok] = counts.get(tok, 0) + 1
    type_sum = len(counts)
    for i in range(1, n - window + 1):
        out_tok = tokens[i - 1]
        counts[out_tok] -= 1
        if counts[out_tok] == 0:
            del counts[out_tok]
        in_tok = tokens[i + window - 1]
        counts[in_tok] = counts.get(in_tok, 0) + 1
        type_sum += len(counts)
    return type_sum / ((n - window + 1) * window)


def lexical_variation(document: Document) -> tuple[float, float, float, float, float]:
    """Per-category type/token ratios for NOUN/VERB/ADJ/ADV plus lexical
    density (content-word share of word tokens)."""
    words = word_tokens(document)
    if not words:
        raise DegenerateInputError("document has no word tokens",
                                   doc_id=document.doc_id)
    variations = []
    for upos in _VARIATION_UPOS:
        in_cat = [tok for tok in words if tok.upos == upos]
        if not in_cat:
            variations.append(0.0)
        else:
            types = len({turkish_lower(tok.lemma) for tok in in_cat})
            variations.append(types / len(in_cat))
    content = sum(1 for tok in words if tok.upos in _CONTENT_UPOS)
    density = content / len(words)
    return (*variations, density)


def _log_freq(lexicon: Lexicon, token: Token) -> float:
    return math.log10(lexicon.frequency(token.lemma) + 1)


def psycholinguistic_frequency(
    document: Document, early: Lexicon, late: Lexicon
) -> tuple[float, float, float, float, float]:
    """Mean log10 acquisition-band frequencies per word and per sentence,
    plus the share of word tokens covered by the early-acquired lexicon.

    Per-sentence values sum token scores within each sentence before
    averaging across sentences.
    """
    words = word_tokens(document)
    if not words:
        raise DegenerateInputError("document has no word tokens",
                                   doc_id=document.doc_id)
    early_scores = [_log_freq(early, tok) for tok in words]
    late_scores = [_log_freq(late, tok) for tok in words]
    early_pw = sum(early_scores) / len(words)
    late_pw = sum(late_scores) / len(words)
    n_sentences = len(document.sentences)
    early_ps = sum(
        sum(_log_freq(early, tok) for tok in sentence_word_tokens(sent))
        for sent in document.sentences
    ) / n_sentences
    late_ps = sum(
        sum(_log_freq(late, tok) for tok in sentence_word_tokens(sent))
        for sent in document.sentences
    ) / n_sentences
    in_early = sum(1 for tok in words if tok.lemma in early)
    return early_pw, late_pw, early_ps, late_ps, in_early / len(words)


def familiarity_pct(document: Document, basic_words: Lexicon) -> float:
    """Percentage of the document's distinct lemmas found in the basic list."""
    words = word_tokens(document)
    if not words:
        raise DegenerateInputError("document has no word tokens",
                                   doc_id=document.doc_id)
    lemmas = {turkish_lower(tok.lemma) for tok in words}
    familiar = sum(1 for lemma in lemmas if lemma in basic_words.entries)
    return 100.0 * familiar / len(lemmas)


def extract_lxsm(document: Document, early: Lexicon, late: Lexicon,
                 basic_words: Lexicon, mattr_window: int = 50) -> LxsmFeatures:
    words = word_tokens(document)
    if not words:
        raise DegenerateInputError("document has no word tokens",
                                   doc_id=document.doc_id)
    surfaces = [turkish_lower(tok.surface) for tok in words]
    ttr, root_ttr, corrected, bilog, uber = ttr_family(
        len(set(surfaces)), len(surfaces))
    noun_var, verb_var, adj_var, adv_var, density = lexical_variation(document)
    early_pw, late_pw, early_ps, late_ps, child_prop = \
        psycholinguistic_frequency(document, early, late)
    return LxsmFeatures(
        ttr=ttr,
        root_ttr=root_ttr,
        corrected_ttr=corrected,
        bilog_ttr=bilog,
        uber_index=uber,
        mattr=mattr(surfaces, mattr_window),
        noun_var=noun_var,
        verb_var=verb_var,
        adj_var=adj_var,
        adv_var=adv_var,
        lexical_density=density,
        early_freq_per_word=early_pw,
        late_freq_per_word=late_pw,
        early_freq_per_sentence=early_ps,
        late_freq_per_sentence=late_ps,
        child_corpus_proportion=child_prop,
        familiarity_pct=familiarity_pct(document, basic_words),
    )
