"""Deterministic rule pipeline: lemma, UPOS, entities, dependencies.

The bundled ``rules-v1`` backend needs no model downloads and always
produces the same output for the same input, which keeps corpus exports
reproducible.  Its contract is the one downstream tools rely on: every
sentence has exactly one root, heads are acyclic 1-based indices, UPOS
tags come from the 17-tag universal inventory, and entity spans are BIO
tags over PER/LOC/ORG.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import AnnotateError
from .splitter import split_sentences, turkish_lower
from .tokenizer import is_number, is_punctuation, is_symbol, tokenize

_VOWELS = frozenset("aeıioöuüâîû")

# --- closed word classes (Turkish-lowercased) -------------------------------

_PRONOUNS = frozenset({
    "ben", "sen", "biz", "siz", "onlar", "bana", "sana", "ona", "beni",
    "seni", "onu", "bizi", "sizi", "onları", "bende", "sende", "onda",
    "benden", "senden", "ondan", "benim", "senin", "onun", "bizim", "sizin",
    "onların", "kendi", "kendisi", "kendim", "kendin", "birbiri", "herkes",
    "kimse", "hiçbiri", "kim", "nerede", "nereye", "nereden",
})
_DETERMINERS = frozenset({
    "bir", "her", "bazı", "tüm", "bütün", "hiçbir", "birkaç", "kaç", "hangi",
})
_DEMONSTRATIVES = frozenset({"bu", "şu", "o"})
_CCONJ = frozenset({"ve", "veya", "ama", "fakat", "ancak", "ile", "hem"})
_SCONJ = frozenset({"çünkü", "eğer", "madem", "mademki", "sanki", "diye", "ki"})
_ADPOSITIONS = frozenset({
    "için", "gibi", "kadar", "göre", "dolayı", "karşı", "doğru", "beri",
    "itibaren", "rağmen", "dek", "değin", "üzere",
})
_ADVERBS = frozenset({
    "çok", "daha", "en", "pek", "şimdi", "hemen", "yine", "gene", "artık",
    "hep", "hiç", "belki", "bugün", "dün", "yarın", "önce", "sonra",
    "burada", "orada", "şurada", "nasıl", "neden", "niçin", "niye",
    "ayrıca", "sadece", "yalnızca", "bile", "özellikle", "genellikle",
    "bazen", "birlikte",
})
_AUXILIARIES = frozenset({"değil", "idi", "imiş", "ise", "iken"})
_INTERJECTIONS = frozenset({"evet", "hayır", "işte", "hadi", "haydi", "of",
                            "ah", "oh", "eyvah"})
_PARTICLES = frozenset({"da", "de", "mi", "mı", "mu", "mü"})
_ADJECTIVES = frozenset({
    "büyük", "küçük", "güzel", "iyi", "kötü", "yeni", "eski", "uzun", "kısa",
    "genç", "yaşlı", "önemli", "son", "ilk", "açık", "kapalı", "yüksek",
    "alçak", "sıcak", "soğuk", "kolay", "zor", "mutlu", "hızlı", "yavaş",
    "doğru", "yanlış", "beyaz", "siyah", "kırmızı", "mavi", "yeşil", "sarı",
})

# --- gazetteers for proper nouns and entity typing --------------------------

_LOCATIONS = frozenset({
    "ankara", "istanbul", "izmir", "bursa", "antalya", "konya", "adana",
    "trabzon", "erzurum", "van", "samsun", "kayseri", "eskişehir",
    "gaziantep", "diyarbakır", "türkiye", "anadolu", "ege", "akdeniz",
    "karadeniz", "marmara", "avrupa", "asya", "amerika", "afrika",
    "almanya", "fransa", "ingiltere", "italya", "yunanistan", "rusya",
    "çin", "japonya", "hindistan", "mısır", "iran", "irak", "suriye",
    "paris", "londra", "berlin", "roma", "moskova", "tokyo", "pekin",
})
_ORG_MARKERS = frozenset({
    "üniversitesi", "üniversite", "kurumu", "kurum", "bakanlığı", "bakanlık",
    "derneği", "dernek", "vakfı", "vakıf", "şirketi", "şirket", "enstitüsü",
    "enstitü", "müdürlüğü", "belediyesi", "belediye", "meclisi", "meclis",
    "akademisi", "birliği", "federasyonu", "ajansı", "tübitak", "odtü", "itü",
})
_PERSON_NAMES = frozenset({
    "ahmet", "mehmet", "mustafa", "ali", "ayşe", "fatma", "emine", "hatice",
    "zeynep", "elif", "murat", "emre", "can", "deniz", "cem", "selin",
    "atatürk", "kemal", "yunus", "evliya", "çelebi", "nasreddin", "sinan",
})
_GAZETTEER = _LOCATIONS | _ORG_MARKERS | _PERSON_NAMES

# --- inflection patterns ----------------------------------------------------

# Verbal endings are matched with a stem-shape gate so that nouns that
# merely rhyme with an inflection (kedi, yemek) stay nouns: the stem must
# have three letters, or two letters ending in a consonant (at-tı, aç-tı,
# ol-du), which covers Turkish's many short verb roots.
_VERB_ENDINGS = re.compile(
    r"(?:[ıiuü]yor(?:um|sun|uz|sunuz|lar)?"
    r"|m[ıiuü]ş(?:[ıiuü]m|s[ıi]n|[ıiuü]z|lar|ler)?"
    r"|[dt][ıiuü](?:m|n|k|n[ıiuü]z|lar|ler)?"
    r"|[ae]c[ae](?:k|ğ[ıiuü]m|ğ[ıiuü]z|klar|kler)"
    r"|m[ae]k(?:t[ae](?:d[ıiuü]r)?)?"
    r"|[ıiuüea]r(?:[ıi]m|s[ıi]n|[ıi]z|lar|ler)"
    r"|m[ae]z(?:lar|ler)?"
    r")\Z")

#: Common nouns whose endings pass the verb test anyway.
_NOUN_OVERRIDES = frozenset({"üstü", "katı", "sırtı", "kartı"})

#: Number words (bare "bir" stays a determiner).
_NUMBER_WORDS = frozenset({
    "iki", "üç", "dört", "beş", "altı", "yedi", "sekiz", "dokuz", "on",
    "yirmi", "otuz", "kırk", "elli", "altmış", "yetmiş", "seksen", "doksan",
    "yüz", "bin", "milyon", "milyar",
})


def _looks_verbal(lower: str) -> bool:
    if lower in _NOUN_OVERRIDES or lower in _NUMBER_WORDS:
        return False
    match = _VERB_ENDINGS.search(lower)
    if match is None:
        return False
    stem = lower[:match.start()]
    if len(stem) >= 3:
        return True
    return len(stem) == 2 and stem[1] not in _VOWELS

_ADJ_ENDINGS = re.compile(r"(?:l[ıiuü]|s[ıiuü]z|s[ae]l)\Z")

# Suffixes stripped during lemmatization, longest first; single-letter
# suffixes are deliberately absent because they overstrip.
_NOMINAL_SUFFIXES = (
    "larını", "lerini", "larının", "lerinin",
    "ımız", "imiz", "umuz", "ümüz", "ınız", "iniz", "unuz", "ünüz",
    "ları", "leri", "nın", "nin", "nun", "nün", "dan", "den", "tan", "ten",
    "lar", "ler", "yla", "yle", "sı", "si", "su", "sü", "ım", "im", "um",
    "üm", "ın", "in", "un", "ün", "da", "de", "ta", "te", "la", "le",
    "ya", "ye", "yı", "yi", "yu", "yü",
)
_VERBAL_SUFFIXES = (
    "sınız", "siniz", "sunuz", "sünüz", "mekte", "makta",
    "ıyor", "iyor", "uyor", "üyor", "ecek", "acak", "mış", "miş", "muş",
    "müş", "lar", "ler", "mek", "mak", "maz", "mez", "dı", "di", "du",
    "dü", "tı", "ti", "tu", "tü", "ır", "ir", "ur", "ür", "ar", "er",
    "ım", "im", "ız", "iz", "ma", "me",
)


@dataclass(frozen=True)
class PipelineToken:
    surface: str
    lemma: str
    upos: str
    head: int  # 0 = root, otherwise 1-based index within the sentence
    deprel: str
    entity: str = "O"  # BIO tag, e.g. B-LOC


@dataclass(frozen=True)
class AnnotatedSentence:
    text: str
    tokens: tuple[PipelineToken, ...]


def _has_vowel(stem: str) -> bool:
    return any(ch in _VOWELS for ch in stem)


def _strip_suffixes(lower: str, suffixes, min_stem: int, max_rounds: int) -> str:
    stem = lower
    for _ in range(max_rounds):
        for suffix in suffixes:
            candidate = stem[:-len(suffix)]
            if (stem.endswith(suffix) and len(candidate) >= min_stem
                    and _has_vowel(candidate)):
                stem = candidate
                break
        else:
            return stem
    return stem


def _lemmatize(surface: str, upos: str) -> str:
    if "'" in surface or "’" in surface:
        return re.split(r"['’]", surface, maxsplit=1)[0]
    if upos in ("PUNCT", "SYM", "NUM"):
        return surface
    lower = turkish_lower(surface)
    if upos == "VERB":
        return _strip_suffixes(lower, _VERBAL_SUFFIXES, 2, 4)
    if upos in ("NOUN", "PROPN", "ADJ"):
        # min_stem=2 keeps short roots like "ev" and "su" reachable.
        stem = _strip_suffixes(lower, _NOMINAL_SUFFIXES, 2, 3)
        if upos == "PROPN":
            # Keep the original casing of the retained prefix.
            return surface[:len(stem)]
        return stem
    return lower


class RulePipeline:
    """The bundled deterministic backend."""

    NAME = "rules-v1"
    VERSION = "1"

    def annotate(self, text: str) -> list[AnnotatedSentence]:
        sentences = []
        for sentence_text in split_sentences(text):
            surfaces = tokenize(sentence_text)
            if not surfaces:
                continue
            upos = self._tag_upos(surfaces)
            lemmas = [_lemmatize(s, u) for s, u in zip(surfaces, upos)]
            entities = self._tag_entities(surfaces, lemmas, upos)
            heads, deprels = self._attach(upos)
            tokens = tuple(
                PipelineToken(surface=s, lemma=l, upos=u, head=h,
                              deprel=d, entity=e)
                for s, l, u, h, d, e
                in zip(surfaces, lemmas, upos, heads, deprels, entities))
            sentences.append(AnnotatedSentence(text=sentence_text,
                                               tokens=tokens))
        return sentences

    # --- part of speech -----------------------------------------------------

    def _tag_upos(self, surfaces: list[str]) -> list[str]:
        tags: list[str] = []
        first_word_seen = False
        for i, surface in enumerate(surfaces):
            tag = self._classify(surface, surfaces, i, first_word_seen)
            if tag not in ("PUNCT", "SYM"):
                first_word_seen = True
            tags.append(tag)
        return tags

    def _classify(self, surface: str, surfaces: list[str], i: int,
                  first_word_seen: bool) -> str:
        if is_number(surface):
            return "NUM"
        if is_symbol(surface):
            return "SYM"
        if is_punctuation(surface):
            return "PUNCT"
        lower = turkish_lower(surface)
        if lower in _DEMONSTRATIVES:
            # Determiner before a nominal ("bu ev"), pronoun elsewhere
            # ("o geldi", "bunu gördüm" handled by the pronoun list).
            nxt = self._next_word(surfaces, i)
            if nxt is None or _looks_verbal(turkish_lower(surfaces[nxt])):
                return "PRON"
            return "DET"
        if lower in _DETERMINERS:
            return "DET"
        if lower in _PRONOUNS:
            return "PRON"
        if lower in _CCONJ:
            return "CCONJ"
        if lower in _SCONJ:
            return "SCONJ"
        if lower in _ADPOSITIONS:
            return "ADP"
        if lower in _ADVERBS:
            return "ADV"
        if lower in _AUXILIARIES:
            return "AUX"
        if lower in _INTERJECTIONS:
            return "INTJ"
        if lower in _PARTICLES:
            return "PART"
        if lower in _NUMBER_WORDS:
            return "NUM"
        if self._is_proper(surface, lower, first_word_seen):
            return "PROPN"
        if _looks_verbal(lower):
            return "VERB"
        if lower in _ADJECTIVES:
            return "ADJ"
        adj = _ADJ_ENDINGS.search(lower)
        if adj and adj.start() >= 3:
            return "ADJ"
        return "NOUN"

    @staticmethod
    def _next_word(surfaces: list[str], i: int):
        for j in range(i + 1, len(surfaces)):
            if not is_punctuation(surfaces[j]) and not is_symbol(surfaces[j]):
                return j
        return None

    @staticmethod
    def _is_proper(surface: str, lower: str, first_word_seen: bool) -> bool:
        if not surface[0].isupper():
            return False
        if "'" in surface or "’" in surface:
            return True
        stem = _strip_suffixes(lower, _NOMINAL_SUFFIXES, 3, 3)
        if lower in _GAZETTEER or stem in _GAZETTEER:
            return True
        if surface.isupper() and len(surface) > 1:
            return True
        # A capitalized sentence-initial word is most often just ordinary
        # capitalization, so only the cues above promote it.
        return first_word_seen

    # --- named entities -----------------------------------------------------

    def _tag_entities(self, surfaces: list[str], lemmas: list[str],
                      upos: list[str]) -> list[str]:
        tags = ["O"] * len(surfaces)
        i = 0
        while i < len(surfaces):
            if upos[i] != "PROPN":
                i += 1
                continue
            j = i
            while j + 1 < len(surfaces) and upos[j + 1] == "PROPN":
                j += 1
            kind = self._entity_kind(surfaces[i:j + 1], lemmas[i:j + 1])
            tags[i] = f"B-{kind}"
            for k in range(i + 1, j + 1):
                tags[k] = f"I-{kind}"
            i = j + 1
        return tags

    @staticmethod
    def _entity_kind(span_surfaces: list[str], span_lemmas: list[str]) -> str:
        lowers = [turkish_lower(s) for s in span_surfaces]
        stems = [turkish_lower(l) for l in span_lemmas]
        for lower, surface in zip(lowers, span_surfaces):
            if lower in _ORG_MARKERS or (surface.isupper() and len(surface) > 1):
                return "ORG"
        for candidate in lowers + stems:
            if candidate in _ORG_MARKERS:
                return "ORG"
        for candidate in lowers + stems:
            if candidate in _LOCATIONS:
                return "LOC"
        return "PER"

    # --- dependencies -------------------------------------------------------

    def _attach(self, upos: list[str]) -> tuple[list[int], list[str]]:
        n = len(upos)
        root = self._root_index(upos)
        heads = [0] * n
        deprels = ["root"] * n
        nominal_before = [i for i in range(root)
                          if upos[i] in ("NOUN", "PROPN", "PRON")]
        for i in range(n):
            if i == root:
                continue
            tag = upos[i]
            if tag in ("PUNCT", "SYM"):
                heads[i], deprels[i] = root + 1, "punct"
            elif tag == "DET":
                target = self._next_of(upos, i, ("NOUN", "PROPN", "PRON"))
                heads[i] = (target if target is not None else root) + 1
                deprels[i] = "det"
            elif tag == "NUM":
                target = self._next_of(upos, i, ("NOUN", "PROPN"))
                heads[i] = (target if target is not None else root) + 1
                deprels[i] = "nummod"
            elif tag == "ADJ":
                target = self._next_of(upos, i, ("NOUN", "PROPN"))
                heads[i] = (target if target is not None else root) + 1
                deprels[i] = "amod"
            elif tag == "ADP":
                target = self._prev_of(upos, i, ("NOUN", "PROPN", "PRON", "NUM"))
                heads[i] = (target if target is not None else root) + 1
                deprels[i] = "case"
            elif tag in ("NOUN", "PROPN", "PRON"):
                heads[i] = root + 1
                if nominal_before and i == nominal_before[0]:
                    deprels[i] = "nsubj"
                elif len(nominal_before) > 1 and i == nominal_before[-1]:
                    deprels[i] = "obj"
                else:
                    deprels[i] = "obl"
            else:
                heads[i] = root + 1
                deprels[i] = {
                    "ADV": "advmod", "CCONJ": "cc", "SCONJ": "mark",
                    "AUX": "aux", "INTJ": "discourse", "PART": "advmod",
                    "VERB": "conj",
                }.get(tag, "dep")
        return heads, deprels

    @staticmethod
    def _root_index(upos: list[str]) -> int:
        verbs = [i for i, tag in enumerate(upos) if tag == "VERB"]
        if verbs:
            return verbs[-1]
        words = [i for i, tag in enumerate(upos)
                 if tag not in ("PUNCT", "SYM")]
        if words:
            return words[-1]
        return len(upos) - 1

    @staticmethod
    def _next_of(upos: list[str], i: int, wanted) -> int | None:
        for j in range(i + 1, len(upos)):
            if upos[j] in wanted:
                return j
        return None

    @staticmethod
    def _prev_of(upos: list[str], i: int, wanted) -> int | None:
        for j in range(i - 1, -1, -1):
            if upos[j] in wanted:
                return j
        return None


PIPELINES = {RulePipeline.NAME: RulePipeline}


def get_pipeline(name: str) -> RulePipeline:
    try:
        factory = PIPELINES[name]
    except KeyError:
        known = ", ".join(sorted(PIPELINES))
        raise AnnotateError(
            f"unknown pipeline model {name!r} (available: {known})") from None
    return factory()
