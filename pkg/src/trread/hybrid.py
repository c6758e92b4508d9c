"""Fusion of externally produced soft class labels with the handcrafted
feature matrix.

The soft-label CSV may open with `# generated: out_of_fold` or
`# generated: full_fit`; only out-of-fold labels are safe to cross-validate
on, and the provenance travels with the fused matrix so the CLI can refuse
the leaky case.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import SoftLabelError
from .registry import FeatureMatrix, FeatureSchema, HYBRID_GROUP, MatrixRow

HYBRID_FEATURES = ("p_ele", "p_int", "p_adv")

SIMPLEX_TOLERANCE = 1e-6

OUT_OF_FOLD = "out_of_fold"
FULL_FIT = "full_fit"
_PROVENANCES = (OUT_OF_FOLD, FULL_FIT)


@dataclass(frozen=True)
class SoftLabelTable:
    rows: dict[str, tuple[float, float, float]]
    provenance: str | None = None  # from the generated: header, if present

    def __len__(self) -> int:
        return len(self.rows)


def load_soft_labels(path: str | Path) -> SoftLabelTable:
    path = Path(path)
    lines = path.read_text(encoding="utf-8").splitlines()
    provenance = None
    start = 0
    if lines and lines[0].startswith("#"):
        comment = lines[0].lstrip("#").strip()
        if comment.startswith("generated:"):
            provenance = comment.split(":", 1)[1].strip()
            if provenance not in _PROVENANCES:
                raise SoftLabelError(
                    f"{path}: unknown provenance {provenance!r} "
                    f"(expected one of {', '.join(_PROVENANCES)})")
        start = 1
    if start >= len(lines) or lines[start].split(",") != [
            "doc_id", "p_ele", "p_int", "p_adv"]:
        raise SoftLabelError(
            f"{path}: header must be doc_id,p_ele,p_int,p_adv")

    rows: dict[str, tuple[float, float, float]] = {}
    problems: list[str] = []
    for lineno, line in enumerate(lines[start + 1:], start=start + 2):
        if not line.strip():
            continue
        cells = line.split(",")
        if len(cells) != 4:
            problems.append(f"line {lineno}: expected 4 cells")
            continue
        doc_id = cells[0]
        if not doc_id:
            problems.append(f"line {lineno}: empty doc_id")
            continue
        if doc_id in rows:
            problems.append(f"line {lineno}: duplicate doc_id {doc_id}")
            continue
        try:
            probs = tuple(float(cell) for cell in cells[1:])
        except ValueError:
            problems.append(f"line {lineno}: non-numeric probability")
            continue
        if min(probs) < 0.0 or abs(sum(probs) - 1.0) > SIMPLEX_TOLERANCE:
            problems.append(
                f"line {lineno}: probabilities for {doc_id} must be "
                f"nonnegative and sum to 1 (got {sum(probs)!r})")
            continue
        rows[doc_id] = probs
    if problems:
        raise SoftLabelError(f"{path}: " + "; ".join(problems))
    if not rows:
        raise SoftLabelError(f"{path}: no soft-label rows")
    return SoftLabelTable(rows=rows, provenance=provenance)


def fuse(matrix: FeatureMatrix, soft: SoftLabelTable) -> FeatureMatrix:
    """Append HYBRID.p_ele/p_int/p_adv columns; original columns untouched."""
    existing_groups = {group for _, group in matrix.schema.entries}
    if HYBRID_GROUP in existing_groups:
        raise SoftLabelError("matrix already carries HYBRID columns; "
                             "refusing to fuse twice")
    missing = [doc_id for doc_id in matrix.doc_ids if doc_id not in soft.rows]
    if missing:
        raise SoftLabelError("soft-label table lacks doc_ids: "
                             + ", ".join(missing))
    entries = matrix.schema.entries + tuple(
        (f"{HYBRID_GROUP}.{name}", HYBRID_GROUP) for name in HYBRID_FEATURES)
    schema = FeatureSchema(entries, matrix.schema.schema_version)
    rows = []
    for row in matrix.rows:
        probs = soft.rows[row.doc_id]
        rows.append(MatrixRow(
            row.doc_id, row.level,
            np.concatenate([row.values, np.array(probs, dtype=float)]),
            np.concatenate([row.absent, np.zeros(3, dtype=bool)])))
    meta = dict(matrix.meta)
    meta["hybrid_provenance"] = soft.provenance
    return FeatureMatrix(schema, rows, meta)
