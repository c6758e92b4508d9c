"""Document model: CoNLL-U parsing, bracketed trees, syllables, manifests.

Documents are immutable after loading and safe to share across workers.
Entity annotations travel in the CoNLL-U MISC column as ``NE=<BIO-tag>``.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from enum import IntEnum
from pathlib import Path
from typing import IO, Iterable

from .errors import ConlluParseError, ManifestError, TreeParseError

#: The fixed Universal POS inventory (17 tags).
UPOS_TAGS = (
    "ADJ", "ADP", "ADV", "AUX", "CCONJ", "DET", "INTJ", "NOUN", "NUM",
    "PART", "PRON", "PROPN", "PUNCT", "SCONJ", "SYM", "VERB", "X",
)
_UPOS_SET = frozenset(UPOS_TAGS)

#: UPOS tags excluded from the word-token basis of per-word features.
NON_WORD_UPOS = frozenset({"PUNCT", "SYM"})

# Turkish vowels in both cases, including circumflexed forms. One vowel per
# syllable holds in Turkish orthography, so counting vowels counts syllables.
_VOWELS = frozenset("aeıioöuü" "âîû" "AEIİOÖUÜ" "ÂÎÛ")

_TR_CASE_MAP = str.maketrans({"I": "ı", "İ": "i"})


def turkish_lower(text: str) -> str:
    """Lowercase with Turkish dotted/dotless i handling (I→ı, İ→i)."""
    return text.translate(_TR_CASE_MAP).lower()


def syllable_count(word: str) -> int:
    """Number of syllables in a Turkish word, counted as vowel letters.

    Vowel-less tokens (abbreviations, digit strings) count as one syllable.
    """
    n = sum(1 for ch in word if ch in _VOWELS)
    return n if n > 0 else 1


class ReadingLevel(IntEnum):
    """Reading difficulty levels; the ordinal encodes difficulty order."""

    ELE = 0
    INT = 1
    ADV = 2

    @classmethod
    def from_string(cls, name: str) -> "ReadingLevel":
        try:
            return cls[name]
        except KeyError:
            raise ManifestError(f"unknown level: {name}") from None


@dataclass(frozen=True)
class Token:
    surface: str
    lemma: str
    upos: str
    head: int  # 0 = sentence root, otherwise 1-based index into the sentence
    deprel: str
    entity_tag: str = "O"


@dataclass(frozen=True)
class ConstituencyNode:
    """A node has either children or a leaf surface, never both."""

    label: str
    children: tuple["ConstituencyNode", ...] = ()
    leaf_surface: str | None = None

    def depth(self) -> int:
        """Longest root-to-leaf path counted in nodes (leaf-only root = 1)."""
        if not self.children:
            return 1
        return 1 + max(child.depth() for child in self.children)

    def leaf_count(self) -> int:
        if self.leaf_surface is not None:
            return len(self.leaf_surface.split())
        return sum(child.leaf_count() for child in self.children)


@dataclass(frozen=True)
class Sentence:
    tokens: tuple[Token, ...]
    const_tree: ConstituencyNode | None = None


@dataclass(frozen=True)
class Document:
    doc_id: str
    level: ReadingLevel | None  # None only for prediction-time documents
    sentences: tuple[Sentence, ...]


@dataclass(frozen=True)
class ManifestRow:
    doc_id: str
    level: ReadingLevel
    conllu_path: Path
    trees_path: Path | None = None


@dataclass(frozen=True)
class CorpusManifest:
    path: Path
    rows: tuple[ManifestRow, ...]

    def level_counts(self) -> dict[ReadingLevel, int]:
        counts = {level: 0 for level in ReadingLevel}
        for row in self.rows:
            counts[row.level] += 1
        return counts


def _is_range_id(field_value: str) -> bool:
    return "-" in field_value


def _is_empty_node_id(field_value: str) -> bool:
    return "." in field_value


def _entity_tag_from_misc(misc: str) -> str:
    if misc == "_":
        return "O"
    for part in misc.split("|"):
        if part.startswith("NE="):
            return part[3:]
    return "O"


def parse_conllu(source: str | IO[str] | Iterable[str]) -> list[Sentence]:
    """Parse CoNLL-U text into sentences.

    Range lines (``3-4``) and empty nodes (``3.1``) are skipped; entity tags
    are read from MISC ``NE=<tag>`` and default to ``O``.  Errors report the
    1-based line number of the offending line.
    """
    if isinstance(source, str):
        lines: Iterable[str] = source.splitlines()
    else:
        lines = source

    sentences: list[Sentence] = []
    current: list[tuple] = []  # (id, form, lemma, upos, head, deprel, entity, line)

    def flush() -> None:
        if not current:
            return
        # token ids must be 1..n in order
        for expected, row in enumerate(current, start=1):
            if row[0] != expected:
                raise ConlluParseError(
                    f"unexpected token id {row[0]} (expected {expected})",
                    row[-1])
        tokens = _validate_tokens(current)
        sentences.append(Sentence(tokens=tokens))
        current.clear()

    for lineno, line in enumerate(lines, start=1):
        line = line.rstrip("\n")
        if line == "":
            flush()
            continue
        if line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 10:
            raise ConlluParseError(
                f"expected 10 tab-separated columns, got {len(cols)}", lineno)
        tid_field = cols[0]
        if _is_range_id(tid_field) or _is_empty_node_id(tid_field):
            continue
        try:
            tid = int(tid_field)
        except ValueError:
            raise ConlluParseError(f"non-integer token id {tid_field!r}",
                                   lineno) from None
        try:
            head = int(cols[6])
        except ValueError:
            raise ConlluParseError(f"non-integer HEAD {cols[6]!r}",
                                   lineno) from None
        upos = cols[3]
        if upos not in _UPOS_SET:
            raise ConlluParseError(f"unknown UPOS tag {upos!r}", lineno)
        entity = _entity_tag_from_misc(cols[9])
        current.append((tid, cols[1], cols[2], upos, head, cols[7], entity,
                        lineno))
    flush()
    return sentences


def _validate_tokens(raw: list[tuple]) -> tuple[Token, ...]:
    n = len(raw)
    heads: dict[int, int] = {}
    lines = {row[0]: row[-1] for row in raw}
    root_seen = False
    for tid, _, _, _, head, _, _, _ in raw:
        if head < 0 or head > n:
            raise ConlluParseError("head out of range", lines[tid])
        if head == tid:
            raise ConlluParseError("token is its own head", lines[tid])
        heads[tid] = head
        if head == 0:
            if root_seen:
                raise ConlluParseError("multiple roots", lines[tid])
            root_seen = True
    if not root_seen:
        raise ConlluParseError("no root token", lines[raw[0][0]])
    for tid in heads:
        current, steps = tid, 0
        while current != 0:
            current = heads[current]
            steps += 1
            if steps > n:
                raise ConlluParseError("cyclic head links", lines[tid])
    return tuple(
        Token(surface=form, lemma=lemma, upos=upos, head=head,
              deprel=deprel, entity_tag=entity)
        for tid, form, lemma, upos, head, deprel, entity, _ in raw
    )


def sentence_to_conllu(sentence: Sentence) -> str:
    """Serialize one sentence back to CoNLL-U (10 columns, trailing blank)."""
    out = []
    for i, tok in enumerate(sentence.tokens, start=1):
        misc = f"NE={tok.entity_tag}" if tok.entity_tag != "O" else "_"
        out.append("\t".join((
            str(i), tok.surface, tok.lemma, tok.upos, "_", "_",
            str(tok.head), tok.deprel, "_", misc,
        )))
    return "\n".join(out) + "\n"


def document_to_conllu(document: Document) -> str:
    return "\n".join(sentence_to_conllu(s) for s in document.sentences)


def parse_bracketed_tree(line: str) -> ConstituencyNode:
    """Parse one parenthesized constituency tree, e.g. ``(S (NP (N ev)))``.

    Bare tokens directly under a label become that node's leaf surface; a
    node may not mix child subtrees with bare tokens.
    """
    pos = 0
    n = len(line)

    def skip_ws() -> None:
        nonlocal pos
        while pos < n and line[pos].isspace():
            pos += 1

    def parse_node() -> ConstituencyNode:
        nonlocal pos
        skip_ws()
        if pos >= n or line[pos] != "(":
            raise TreeParseError("expected '('", pos)
        open_offset = pos
        pos += 1
        skip_ws()
        label_start = pos
        while pos < n and not line[pos].isspace() and line[pos] not in "()":
            pos += 1
        label = line[label_start:pos]
        if not label:
            raise TreeParseError("empty node label", label_start)
        children: list[ConstituencyNode] = []
        leaves: list[str] = []
        while True:
            skip_ws()
            if pos >= n:
                raise TreeParseError("unbalanced parentheses", open_offset)
            ch = line[pos]
            if ch == ")":
                pos += 1
                break
            if ch == "(":
                children.append(parse_node())
            else:
                start = pos
                while pos < n and not line[pos].isspace() and line[pos] not in "()":
                    pos += 1
                leaves.append(line[start:pos])
        if children and leaves:
            raise TreeParseError("mixed node content", open_offset)
        if not children and not leaves:
            raise TreeParseError("empty node", open_offset)
        if leaves:
            return ConstituencyNode(label=label, leaf_surface=" ".join(leaves))
        return ConstituencyNode(label=label, children=tuple(children))

    root = parse_node()
    skip_ws()
    if pos != n:
        raise TreeParseError("unbalanced parentheses", pos)
    return root


def word_tokens(document: Document) -> list[Token]:
    """All tokens except PUNCT/SYM, in document order.

    This is the universal token basis for per-word features.
    """
    return [tok for sent in document.sentences for tok in sent.tokens
            if tok.upos not in NON_WORD_UPOS]


def sentence_word_tokens(sentence: Sentence) -> list[Token]:
    return [tok for tok in sentence.tokens if tok.upos not in NON_WORD_UPOS]


def load_document(doc_id: str, level: ReadingLevel | None, conllu_path: Path,
                  trees_path: Path | None = None) -> Document:
    """Load one document, attaching constituency trees when supplied.

    The trees file holds one bracketed tree per line, the i-th line for the
    i-th sentence; a blank line means no tree for that sentence.
    """
    with open(conllu_path, encoding="utf-8") as handle:
        sentences = parse_conllu(handle)
    if not sentences or not any(s.tokens for s in sentences):
        raise ManifestError(f"document {doc_id}: no sentences in {conllu_path}")
    if trees_path is not None:
        tree_lines = Path(trees_path).read_text(encoding="utf-8").splitlines()
        if len(tree_lines) > len(sentences):
            raise ManifestError(
                f"document {doc_id}: {len(tree_lines)} trees for "
                f"{len(sentences)} sentences")
        updated = list(sentences)
        for i, tree_line in enumerate(tree_lines):
            if not tree_line.strip():
                continue
            tree = parse_bracketed_tree(tree_line)
            updated[i] = Sentence(tokens=sentences[i].tokens, const_tree=tree)
        sentences = updated
    return Document(doc_id=doc_id, level=level, sentences=tuple(sentences))


MANIFEST_HEADER = ["doc_id", "level", "conllu_path", "trees_path"]


def load_manifest(path: str | Path) -> tuple[CorpusManifest, list[Document]]:
    """Load a manifest CSV and every document it references.

    Columns: ``doc_id,level,conllu_path,trees_path`` with levels in
    {ELE,INT,ADV}; relative paths resolve against the manifest location.
    """
    path = Path(path)
    rows: list[ManifestRow] = []
    seen: set[str] = set()
    problems: list[str] = []
    with open(path, encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise ManifestError(f"empty manifest: {path}") from None
        if header != MANIFEST_HEADER:
            raise ManifestError(
                f"bad manifest header {header!r}, expected {MANIFEST_HEADER!r}")
        for rowno, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != 4:
                problems.append(f"row {rowno}: expected 4 columns, got {len(row)}")
                continue
            doc_id, level_str, conllu_rel, trees_rel = (cell.strip() for cell in row)
            if doc_id in seen:
                problems.append(f"row {rowno}: duplicate doc_id {doc_id}")
                continue
            seen.add(doc_id)
            try:
                level = ReadingLevel.from_string(level_str)
            except ManifestError as exc:
                problems.append(f"row {rowno}: {exc}")
                continue
            conllu_path = (path.parent / conllu_rel).resolve()
            trees_path = (path.parent / trees_rel).resolve() if trees_rel else None
            if not conllu_path.is_file():
                problems.append(f"row {rowno}: unreadable file {conllu_path}")
                continue
            if trees_path is not None and not trees_path.is_file():
                problems.append(f"row {rowno}: unreadable file {trees_path}")
                continue
            rows.append(ManifestRow(doc_id, level, conllu_path, trees_path))
    if problems:
        raise ManifestError("manifest errors: " + "; ".join(problems))
    if not rows:
        raise ManifestError(f"empty manifest: {path}")
    documents = [
        load_document(row.doc_id, row.level, row.conllu_path, row.trees_path)
        for row in rows
    ]
    return CorpusManifest(path=path, rows=tuple(rows)), documents
