"""Batch job orchestration: directory walk, validation, output layout.

Input layout is ``<in>/{ELE,INT,ADV}/*.txt``; the directory name is the
document's level.  Output layout is::

    <out>/docs/<doc_id>.conllu
    <out>/trees/<doc_id>.trees      (with emit_trees)
    <out>/manifest.csv
    <out>/metadata.json
    <out>/errors.log

Files are processed in sorted order so two runs over the same input are
byte-identical.  A file the pipeline cannot handle is skipped, listed in
``errors.log``, and left out of the manifest.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .emit import atomic_write_text, document_to_conllu, write_manifest
from .errors import AnnotateError, PipelineError
from .pipeline import AnnotatedSentence, get_pipeline
from .trees import bracket

LEVELS = ("ELE", "INT", "ADV")

_NON_WORD_UPOS = frozenset({"PUNCT", "SYM"})


@dataclass(frozen=True)
class AnnotationJob:
    input_dir: Path
    output_dir: Path
    pipeline: str = "rules-v1"
    batch_size: int = 16
    emit_trees: bool = False


@dataclass(frozen=True)
class JobResult:
    manifest_path: Path
    documents: tuple[str, ...]
    skipped: tuple[tuple[str, str], ...]  # (relative input path, reason)
    totals: dict = field(default_factory=dict)


def _validate_sentences(sentences: list[AnnotatedSentence]) -> None:
    """Reject annotations that would not survive a CoNLL-U round trip."""
    if not sentences:
        raise PipelineError("no sentences")
    for sentence in sentences:
        n = len(sentence.tokens)
        roots = [i for i, tok in enumerate(sentence.tokens) if tok.head == 0]
        if len(roots) != 1:
            raise PipelineError(f"{len(roots)} roots in a sentence")
        for i, tok in enumerate(sentence.tokens, start=1):
            if tok.head < 0 or tok.head > n or tok.head == i:
                raise PipelineError(f"invalid head {tok.head} at token {i}")
        for i in range(1, n + 1):
            current, steps = i, 0
            while current != 0:
                current = sentence.tokens[current - 1].head
                steps += 1
                if steps > n:
                    raise PipelineError("cyclic head links")
    words = sum(1 for s in sentences for t in s.tokens
                if t.upos not in _NON_WORD_UPOS)
    if words == 0:
        raise PipelineError("no word tokens")


def _counts(sentences: list[AnnotatedSentence]) -> dict:
    tokens = sum(len(s.tokens) for s in sentences)
    words = sum(1 for s in sentences for t in s.tokens
                if t.upos not in _NON_WORD_UPOS)
    return {"sentences": len(sentences), "tokens": tokens, "words": words}


def _collect_inputs(input_dir: Path) -> list[tuple[str, Path]]:
    found: list[tuple[str, Path]] = []
    for level in LEVELS:
        level_dir = input_dir / level
        if level_dir.is_dir():
            found.extend((level, path)
                         for path in sorted(level_dir.glob("*.txt")))
    return found


def annotate(job: AnnotationJob) -> JobResult:
    input_dir = Path(job.input_dir)
    output_dir = Path(job.output_dir)
    if not input_dir.is_dir():
        raise AnnotateError(f"input directory not found: {input_dir}")
    if job.batch_size < 1:
        raise AnnotateError(f"batch size must be >= 1, got {job.batch_size}")
    pipeline = get_pipeline(job.pipeline)
    inputs = _collect_inputs(input_dir)
    if not inputs:
        raise AnnotateError(
            f"no {'/'.join(LEVELS)}/*.txt files under {input_dir}")

    docs_dir = output_dir / "docs"
    docs_dir.mkdir(parents=True, exist_ok=True)
    trees_dir = output_dir / "trees"
    if job.emit_trees:
        trees_dir.mkdir(parents=True, exist_ok=True)

    manifest_rows: list[tuple[str, str, str, str]] = []
    skipped: list[tuple[str, str]] = []
    per_document: dict[str, dict] = {}
    seen_ids: set[str] = set()

    for start in range(0, len(inputs), job.batch_size):
        for level, path in inputs[start:start + job.batch_size]:
            relative = str(path.relative_to(input_dir))
            doc_id = path.stem
            if doc_id in seen_ids:
                skipped.append((relative, f"duplicate doc_id {doc_id}"))
                continue
            try:
                text = path.read_text(encoding="utf-8")
            except UnicodeDecodeError as exc:
                skipped.append((relative, f"not valid UTF-8: {exc.reason}"))
                continue
            try:
                sentences = pipeline.annotate(text)
                _validate_sentences(sentences)
            except PipelineError as exc:
                skipped.append((relative, str(exc)))
                continue
            seen_ids.add(doc_id)
            atomic_write_text(docs_dir / f"{doc_id}.conllu",
                              document_to_conllu(sentences))
            trees_rel = ""
            if job.emit_trees:
                lines = [bracket(s) or "" for s in sentences]
                atomic_write_text(trees_dir / f"{doc_id}.trees",
                                  "\n".join(lines) + "\n")
                trees_rel = f"trees/{doc_id}.trees"
            manifest_rows.append(
                (doc_id, level, f"docs/{doc_id}.conllu", trees_rel))
            per_document[doc_id] = {"level": level, **_counts(sentences)}

    atomic_write_text(output_dir / "errors.log",
                      "".join(f"{rel}: {reason}\n" for rel, reason in skipped))
    if not manifest_rows:
        raise AnnotateError("every input file failed; see errors.log")

    manifest_path = output_dir / "manifest.csv"
    write_manifest(manifest_path, manifest_rows)
    totals = {
        "documents": len(manifest_rows),
        "skipped": len(skipped),
        "sentences": sum(d["sentences"] for d in per_document.values()),
        "tokens": sum(d["tokens"] for d in per_document.values()),
        "words": sum(d["words"] for d in per_document.values()),
    }
    metadata = {
        "package": "trannotate",
        "package_version": __version__,
        "pipeline": pipeline.NAME,
        "pipeline_version": pipeline.VERSION,
        "emit_trees": job.emit_trees,
        "totals": totals,
        "per_document": per_document,
    }
    atomic_write_text(output_dir / "metadata.json",
                      json.dumps(metadata, ensure_ascii=False, indent=2,
                                 sort_keys=True) + "\n")
    return JobResult(manifest_path=manifest_path,
                     documents=tuple(row[0] for row in manifest_rows),
                     skipped=tuple(skipped),
                     totals=totals)
