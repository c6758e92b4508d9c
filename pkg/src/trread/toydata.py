"""Synthetic three-level toy corpus generator.

Every feature group carries its own separating signal, with value ranges
that do not overlap between levels:

- sentence length in words: 4 / 7 / 12
- lexicon membership: basic and early lists hold only easy-level stems,
  the late list only mid-level stems
- dependency depth: 2 / 4 / 11; noun phrases per tree: 1 / 4 / 7
- suffix inventory sizes (noun): 1 / 3 / 6
- entity mentions per sentence: 0 / 1 / 2

The generator is purely arithmetic (pool cycling keyed on the document
index), so repeated runs produce byte-identical corpora.
"""

from __future__ import annotations

from pathlib import Path

from .corpus import Document, ReadingLevel, Sentence, Token, document_to_conllu

ELE_NOUNS = ("ev", "su", "yol", "göz")
ELE_ADJS = ("bol", "dar")
ELE_VERBS = ("git", "gel")

INT_NOUNS = ("kapı", "masa", "oda", "yaprak", "deniz", "bahçe")
INT_NOUN_SUFFIXES = ("lar", "da", "dan")
INT_ADJS = ("güzel", "temiz", "uzun")
INT_ADJ_SUFFIXES = ("ce", "lik", "siz")
INT_VERBS = ("oku", "yürü")
INT_VERB_SUFFIXES = ("du", "muş", "sa")
INT_NAMES = ("Ali", "Ayşe", "Emre", "Zehra", "Murat", "Elif")

ADV_NOUNS = ("öğrenci", "karanlık", "gelecek", "yolculuk",
             "başarı", "toplantı", "deneyim", "birikim")
ADV_NOUN_SUFFIXES = ("lardan", "daki", "larla", "ların", "lara", "dan")
ADV_ADJS = ("mükemmel", "belirgin", "kapsamlı", "düşünsel",
            "tarihsel", "toplumsal")
ADV_ADJ_SUFFIXES = ("ce", "liği", "likte", "likle", "siz", "deki")
ADV_VERBS = ("düşün", "anlat", "çalış")
ADV_VERB_SUFFIXES = ("üyordu", "ecekti", "mişti", "iyordu", "acaktı", "miştir")
ADV_LOC_PAIRS = (("Anadolu", "Ovaları"), ("İstanbul", "Sokakları"),
                 ("Kapadokya", "Vadileri"), ("Antalya", "Sahilleri"),
                 ("Karadeniz", "Ormanları"), ("Akdeniz", "Kıyıları"))
ADV_PER_PAIRS = (("Süleyman", "Demirtaş"), ("Fatmanur", "Karahan"),
                 ("Muharrem", "Yıldırım"), ("Şehriban", "Özdemirli"))


class _Cycle:
    """Deterministic pool walker; the start offset varies per document."""

    def __init__(self, pool, start: int = 0):
        self.pool = tuple(pool)
        self.index = start

    def take(self):
        item = self.pool[self.index % len(self.pool)]
        self.index += 1
        return item


def _inflect(stem: str, suffix: str, upos: str, head: int, deprel: str,
             entity: str = "O") -> Token:
    return Token(stem + suffix, stem, upos, head, deprel, entity)


def _punct(head: int) -> Token:
    return Token(".", ".", "PUNCT", head, "punct")


def _pairs(stems, suffixes) -> list[tuple[str, str]]:
    """Stem advances every step, suffix every full stem lap, so the first
    len(stems)*len(suffixes) surfaces are all distinct."""
    return [(stem, suffixes[lap]) for lap in range(len(suffixes))
            for stem in stems]


def _ele_sentence(cycles) -> tuple[list[Token], str]:
    n1 = cycles["noun"].take()
    n2 = cycles["noun"].take()
    adj = cycles["adj"].take()
    verb = cycles["verb"].take()
    tokens = [
        _inflect(n1, "ler", "NOUN", 4, "nsubj"),
        _inflect(n2, "ler", "NOUN", 4, "obj"),
        _inflect(adj, "ca", "ADJ", 2, "amod"),
        _inflect(verb, "di", "VERB", 0, "root"),
        _punct(4),
    ]
    s = [t.surface for t in tokens]
    tree = f"(S (NP {s[0]} {s[1]} {s[2]}) (VP {s[3]} {s[4]}))"
    return tokens, tree


def _int_sentence(cycles) -> tuple[list[Token], str]:
    name = cycles["name"].take()
    nouns = [cycles["noun"].take() for _ in range(3)]
    adjs = [cycles["adj"].take() for _ in range(2)]
    verb = cycles["verb"].take()
    tokens = [
        Token(name, name, "PROPN", 7, "nsubj", "B-PER"),
        _inflect(*nouns[0], "NOUN", 7, "obj"),
        _inflect(*adjs[0], "ADJ", 2, "amod"),
        _inflect(*nouns[1], "NOUN", 2, "nmod"),
        _inflect(*nouns[2], "NOUN", 4, "nmod"),
        _inflect(*adjs[1], "ADJ", 5, "amod"),
        _inflect(*verb, "VERB", 0, "root"),
        _punct(7),
    ]
    s = [t.surface for t in tokens]
    tree = (f"(S (NP (NP {s[0]} {s[1]}) (NP {s[2]} {s[3]})) "
            f"(VP (NP {s[4]} {s[5]}) (V {s[6]}) (PUNC {s[7]})))")
    return tokens, tree


def _adv_sentence(cycles) -> tuple[list[Token], str]:
    loc = cycles["loc"].take()
    per = cycles["per"].take()
    nouns = [cycles["noun"].take() for _ in range(6)]
    adj = cycles["adj"].take()
    verb = cycles["verb"].take()
    tokens = [
        Token(loc[0], loc[0], "PROPN", 2, "flat", "B-LOC"),
        Token(loc[1], loc[1], "PROPN", 3, "nmod", "I-LOC"),
        _inflect(*nouns[0], "NOUN", 4, "nmod"),
        _inflect(*nouns[1], "NOUN", 5, "nmod"),
        _inflect(*nouns[2], "NOUN", 6, "nmod"),
        Token(per[0], per[0], "PROPN", 7, "flat", "B-PER"),
        Token(per[1], per[1], "PROPN", 8, "nmod", "I-PER"),
        _inflect(*nouns[3], "NOUN", 9, "nmod"),
        _inflect(*nouns[4], "NOUN", 10, "nmod"),
        _inflect(*nouns[5], "NOUN", 11, "nmod"),
        _inflect(*adj, "ADJ", 12, "amod"),
        _inflect(*verb, "VERB", 0, "root"),
        _punct(12),
    ]
    s = [t.surface for t in tokens]
    tree = (f"(S (NP (NP (NP (NP {s[0]} {s[1]}) (NN {s[2]})) (NN {s[3]})) "
            f"(NN {s[4]})) (NP {s[5]} {s[6]}) (NP (NP {s[7]} {s[8]}) "
            f"(NN {s[9]})) (VP (ADJP {s[10]}) (V {s[11]}) (PUNC {s[12]})))")
    return tokens, tree


def _ele_cycles(offset: int) -> dict:
    return {
        "noun": _Cycle(ELE_NOUNS, offset),
        "adj": _Cycle(ELE_ADJS, offset),
        "verb": _Cycle(ELE_VERBS, offset),
    }


def _int_cycles(offset: int) -> dict:
    return {
        "name": _Cycle(INT_NAMES, offset),
        "noun": _Cycle(_pairs(INT_NOUNS, INT_NOUN_SUFFIXES), offset),
        "adj": _Cycle(_pairs(INT_ADJS, INT_ADJ_SUFFIXES), offset),
        "verb": _Cycle(_pairs(INT_VERBS, INT_VERB_SUFFIXES), offset),
    }


def _adv_cycles(offset: int) -> dict:
    return {
        "loc": _Cycle(ADV_LOC_PAIRS, offset),
        "per": _Cycle(ADV_PER_PAIRS, offset),
        "noun": _Cycle(_pairs(ADV_NOUNS, ADV_NOUN_SUFFIXES), offset * 7),
        "adj": _Cycle(_pairs(ADV_ADJS, ADV_ADJ_SUFFIXES), offset),
        "verb": _Cycle(_pairs(ADV_VERBS, ADV_VERB_SUFFIXES), offset),
    }


_LEVEL_BUILDERS = {
    ReadingLevel.ELE: (_ele_sentence, _ele_cycles),
    ReadingLevel.INT: (_int_sentence, _int_cycles),
    ReadingLevel.ADV: (_adv_sentence, _adv_cycles),
}


def build_toy_document(level: ReadingLevel,
                       doc_index: int) -> tuple[Document, list[str]]:
    build_sentence, make_cycles = _LEVEL_BUILDERS[level]
    cycles = make_cycles(doc_index)
    n_sentences = 5 + doc_index % 3
    sentences = []
    trees = []
    for _ in range(n_sentences):
        tokens, tree = build_sentence(cycles)
        sentences.append(Sentence(tuple(tokens)))
        trees.append(tree)
    doc_id = f"{level.name.lower()}_{doc_index:02d}"
    return Document(doc_id, level, tuple(sentences)), trees


def _lexicon_lines(stems, count: int) -> str:
    return "".join(f"{stem}\t{count}\n" for stem in sorted(stems))


def generate_toy_corpus(out_dir: str | Path,
                        docs_per_level: int = 10) -> Path:
    """Write the corpus under out_dir; returns the manifest path."""
    out_dir = Path(out_dir)
    (out_dir / "docs").mkdir(parents=True, exist_ok=True)
    (out_dir / "trees").mkdir(parents=True, exist_ok=True)
    (out_dir / "lexicons").mkdir(parents=True, exist_ok=True)

    manifest_lines = ["doc_id,level,conllu_path,trees_path"]
    for level in (ReadingLevel.ELE, ReadingLevel.INT, ReadingLevel.ADV):
        for doc_index in range(docs_per_level):
            document, trees = build_toy_document(level, doc_index)
            conllu_rel = f"docs/{document.doc_id}.conllu"
            trees_rel = f"trees/{document.doc_id}.trees"
            (out_dir / conllu_rel).write_text(document_to_conllu(document),
                                              encoding="utf-8")
            (out_dir / trees_rel).write_text("\n".join(trees) + "\n",
                                             encoding="utf-8")
            manifest_lines.append(
                f"{document.doc_id},{level.name},{conllu_rel},{trees_rel}")
    manifest_path = out_dir / "manifest.csv"
    manifest_path.write_text("\n".join(manifest_lines) + "\n",
                             encoding="utf-8")

    easy_stems = set(ELE_NOUNS) | set(ELE_ADJS) | set(ELE_VERBS)
    mid_stems = set(INT_NOUNS) | set(INT_ADJS) | set(INT_VERBS)
    (out_dir / "lexicons/early.tsv").write_text(
        _lexicon_lines(easy_stems, 1000), encoding="utf-8")
    (out_dir / "lexicons/late.tsv").write_text(
        _lexicon_lines(mid_stems, 1000), encoding="utf-8")
    (out_dir / "lexicons/basic.txt").write_text(
        "".join(stem + "\n" for stem in sorted(easy_stems)), encoding="utf-8")

    config = (
        '{\n'
        '  "lexicons": {\n'
        '    "early": "lexicons/early.tsv",\n'
        '    "late": "lexicons/late.tsv",\n'
        '    "basic_words": "lexicons/basic.txt"\n'
        '  },\n'
        '  "lxsm": {"mattr_window": 20}\n'
        '}\n'
    )
    (out_dir / "config.json").write_text(config, encoding="utf-8")
    return manifest_path
