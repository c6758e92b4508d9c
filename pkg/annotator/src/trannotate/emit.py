"""Serialization to the corpus file formats downstream tools read.

CoNLL-U: ten tab-separated columns per token, ``# text`` comment per
sentence, entity BIO tags in MISC as ``NE=<tag>``, blank line after each
sentence.  Trees: one bracketed line per sentence, blank when absent.
Manifest: ``doc_id,level,conllu_path,trees_path`` with paths relative to
the manifest.  All files are written atomically (temp then rename).
"""

from __future__ import annotations

import csv
import os
from pathlib import Path

from .pipeline import AnnotatedSentence

MANIFEST_HEADER = ("doc_id", "level", "conllu_path", "trees_path")


def atomic_write_text(path: Path, content: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(content, encoding="utf-8")
    os.replace(tmp, path)


def sentence_to_conllu(sentence: AnnotatedSentence) -> str:
    lines = [f"# text = {sentence.text}"]
    for i, token in enumerate(sentence.tokens, start=1):
        misc = f"NE={token.entity}" if token.entity != "O" else "_"
        lines.append("\t".join((
            str(i), token.surface, token.lemma, token.upos, "_", "_",
            str(token.head), token.deprel, "_", misc,
        )))
    return "\n".join(lines) + "\n"


def document_to_conllu(sentences: list[AnnotatedSentence]) -> str:
    return "\n".join(sentence_to_conllu(s) for s in sentences)


def write_manifest(path: Path, rows: list[tuple[str, str, str, str]]) -> None:
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(MANIFEST_HEADER)
        writer.writerows(rows)
    os.replace(tmp, path)
