"""Morphological complexity via sampled exponent diversity.

An exponent is the suffix left after stripping the longest common prefix
a word form shares with its lemma (Turkish is suffixing, so this stands
in for the inflectional material). Complexity per part of speech is the
mean, over seeded random samples of K token exponents, of the number of
distinct exponents in the sample minus one.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass, field

import numpy as np

from ..config import RunConfig
from ..corpus import Document, turkish_lower, word_tokens

#: Empty exponent marker (bare stem, no suffix material).
NULL_EXPONENT = "∅"

_MCI_UPOS = ("NOUN", "VERB", "ADJ")

FEATURE_NAMES = (
    "mci_noun_rep",
    "mci_noun_norep",
    "mci_verb_rep",
    "mci_verb_norep",
    "mci_adj_rep",
    "mci_adj_norep",
)


@dataclass(frozen=True)
class MorphFeatures:
    mci_noun_rep: float
    mci_noun_norep: float
    mci_verb_rep: float
    mci_verb_norep: float
    mci_adj_rep: float
    mci_adj_norep: float
    #: Feature names whose inventory was empty (value forced to 0).
    absent: frozenset[str] = field(default_factory=frozenset)
    #: no-replacement features that fell back to replacement sampling
    #: because the inventory held fewer than sample_size tokens.
    fallbacks: frozenset[str] = field(default_factory=frozenset)

    def as_dict(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in FEATURE_NAMES}

    def absent_names(self) -> set[str]:
        return set(self.absent)


def extract_exponent(surface: str, lemma: str) -> str:
    """Suffix of the lowercased surface past its common prefix with the lemma."""
    if not surface or not lemma:
        raise ValueError("surface and lemma must be non-empty")
    s = turkish_lower(surface)
    l = turkish_lower(lemma)
    i = 0
    while i < len(s) and i < len(l) and s[i] == l[i]:
        i += 1
    return s[i:] or NULL_EXPONENT


def exponent_inventories(document: Document) -> dict[str, list[str]]:
    """Exponent lists for NOUN/VERB/ADJ tokens, in document order."""
    inventories: dict[str, list[str]] = {pos: [] for pos in _MCI_UPOS}
    for tok in word_tokens(document):
        if tok.upos in inventories and tok.surface and tok.lemma:
            inventories[tok.upos].append(extract_exponent(tok.surface, tok.lemma))
    return inventories


def _sampled_mci(
    exponents: list[str],
    sample_size: int,
    samples: int,
    with_replacement: bool,
    seed: int,
) -> tuple[float, bool]:
    """Monte-Carlo mean distinct-count minus one; second element reports
    whether no-replacement sampling fell back to replacement."""
    if sample_size < 2:
        raise ValueError("sample_size must be at least 2")
    if samples < 1:
        raise ValueError("samples must be at least 1")
    if not exponents:
        raise ValueError("empty exponent inventory")
    # Sorting fixes the sampling order, so the result depends only on the
    # multiset of exponents, not on document token order.
    pool = sorted(exponents)
    n = len(pool)
    fell_back = False
    if not with_replacement and n < sample_size:
        with_replacement = True
        fell_back = True
    rng = np.random.default_rng(seed)
    total = 0
    for _ in range(samples):
        if with_replacement:
            idx = rng.integers(0, n, size=sample_size)
        else:
            idx = rng.choice(n, size=sample_size, replace=False)
        total += len({pool[i] for i in idx})
    return total / samples - 1.0, fell_back


def mci(
    exponents: list[str],
    sample_size: int = 10,
    samples: int = 100,
    with_replacement: bool = True,
    seed: int = 0,
) -> float:
    value, _ = _sampled_mci(exponents, sample_size, samples,
                            with_replacement, seed)
    return value


def document_seed(base_seed: int, doc_id: str) -> int:
    """Stable per-document seed; crc32 keeps it reproducible across runs
    (the builtin hash is salted per process)."""
    return base_seed ^ zlib.crc32(doc_id.encode("utf-8"))


def extract_morph(
    document: Document,
    config: RunConfig | None = None,
    base_seed: int = 0,
) -> MorphFeatures:
    config = config or RunConfig.default()
    if config.mci_seed is not None:
        base_seed = config.mci_seed
    doc_seed = document_seed(base_seed, document.doc_id)
    inventories = exponent_inventories(document)
    values: dict[str, float] = {}
    absent: set[str] = set()
    fallbacks: set[str] = set()
    slot = 0
    for pos in _MCI_UPOS:
        exponents = inventories[pos]
        for regime, with_rep in (("rep", True), ("norep", False)):
            name = f"mci_{pos.lower()}_{regime}"
            if not exponents:
                values[name] = 0.0
                absent.add(name)
            else:
                value, fell_back = _sampled_mci(
                    exponents,
                    config.mci_sample_size,
                    config.mci_samples,
                    with_rep,
                    doc_seed + slot,
                )
                values[name] = value
                if fell_back:
                    fallbacks.add(name)
            slot += 1
    return MorphFeatures(absent=frozenset(absent), fallbacks=frozenset(fallbacks),
                         **values)
