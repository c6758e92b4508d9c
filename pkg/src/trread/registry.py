"""Canonical feature schema, per-document assembly, and matrix CSV IO.

Feature columns are qualified as `GROUP.name` (e.g. `SYNX.mean_dep_depth`)
and keep a fixed order: group order TRAD, LXSM, SYNX, MORPH, DISCO (HYBRID
appended only by label fusion), module order within a group. Absent cells
(no constituency trees, empty exponent inventories) carry a mask bit and a
0 sentinel; imputation replaces them with training-fold column means.
"""

from __future__ import annotations

import json
import logging
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .config import RunConfig
from .corpus import Document, ReadingLevel
from .errors import ConfigError, DegenerateInputError, SchemaError
from .features import disco, lxsm, morph, synx, trad
from .lexicon import Lexicon, load_frequency_lexicon, load_word_list

log = logging.getLogger(__name__)

SCHEMA_VERSION = "1"

GROUP_ORDER = ("TRAD", "LXSM", "SYNX", "MORPH", "DISCO")
ALL_GROUPS = frozenset(GROUP_ORDER)
HYBRID_GROUP = "HYBRID"
KNOWN_GROUPS = ALL_GROUPS | {HYBRID_GROUP}

_GROUP_FEATURES = {
    "TRAD": trad.FEATURE_NAMES,
    "LXSM": lxsm.FEATURE_NAMES,
    "SYNX": synx.FEATURE_NAMES,
    "MORPH": morph.FEATURE_NAMES,
    "DISCO": disco.FEATURE_NAMES,
}


@dataclass(frozen=True)
class FeatureSchema:
    entries: tuple[tuple[str, str], ...]  # (qualified name, group)
    schema_version: str = SCHEMA_VERSION

    def __post_init__(self) -> None:
        names = [name for name, _ in self.entries]
        if len(set(names)) != len(names):
            raise SchemaError("duplicate feature names in schema")
        for name, group in self.entries:
            if group not in KNOWN_GROUPS:
                raise SchemaError(f"unknown feature group: {group}")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.entries)

    @property
    def groups(self) -> tuple[str, ...]:
        seen: list[str] = []
        for _, group in self.entries:
            if group not in seen:
                seen.append(group)
        return tuple(seen)

    def __len__(self) -> int:
        return len(self.entries)

    def index_of(self, name: str) -> int:
        for i, (entry_name, _) in enumerate(self.entries):
            if entry_name == name:
                return i
        raise SchemaError(f"unknown feature: {name}")

    def subset_indices(self, groups: Iterable[str]) -> list[int]:
        wanted = set(groups)
        unknown = wanted - KNOWN_GROUPS
        if unknown:
            raise SchemaError(f"unknown feature group: {', '.join(sorted(unknown))}")
        return [i for i, (_, group) in enumerate(self.entries) if group in wanted]


def build_schema(groups: Iterable[str] = GROUP_ORDER) -> FeatureSchema:
    wanted = set(groups)
    if not wanted:
        raise SchemaError("no feature groups requested")
    unknown = wanted - ALL_GROUPS
    if unknown:
        raise SchemaError(f"unknown feature group: {', '.join(sorted(unknown))}")
    entries = []
    for group in GROUP_ORDER:
        if group in wanted:
            entries.extend((f"{group}.{name}", group)
                           for name in _GROUP_FEATURES[group])
    return FeatureSchema(tuple(entries))


@dataclass
class MatrixRow:
    doc_id: str
    level: ReadingLevel
    values: np.ndarray
    absent: np.ndarray  # bool mask, True where the value is a sentinel


@dataclass
class FeatureMatrix:
    schema: FeatureSchema
    rows: list[MatrixRow]
    meta: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        width = len(self.schema)
        for row in self.rows:
            if len(row.values) != width or len(row.absent) != width:
                raise SchemaError(
                    f"row {row.doc_id}: expected {width} values")

    @property
    def doc_ids(self) -> list[str]:
        return [row.doc_id for row in self.rows]

    def values_array(self) -> np.ndarray:
        return np.array([row.values for row in self.rows], dtype=float)

    def absent_array(self) -> np.ndarray:
        return np.array([row.absent for row in self.rows], dtype=bool)

    def levels_array(self) -> np.ndarray:
        return np.array([int(row.level) for row in self.rows], dtype=int)

    def group_subset(self, groups: Iterable[str]) -> "FeatureMatrix":
        idx = self.schema.subset_indices(groups)
        if not idx:
            raise SchemaError("requested groups select no features")
        schema = FeatureSchema(
            tuple(self.schema.entries[i] for i in idx),
            self.schema.schema_version)
        rows = [MatrixRow(row.doc_id, row.level,
                          row.values[idx].copy(), row.absent[idx].copy())
                for row in self.rows]
        return FeatureMatrix(schema, rows, dict(self.meta))


def _load_lexicons(config: RunConfig) -> tuple[Lexicon, Lexicon, Lexicon]:
    paths = {name: config.lexicon_path(name)
             for name in ("early", "late", "basic_words")}
    missing = [name for name, path in paths.items() if path is None]
    if missing:
        raise ConfigError(
            "lexical features need lexicon paths in the config; "
            f"missing: {', '.join(missing)}")
    early = load_frequency_lexicon(paths["early"], name="early")
    late = load_frequency_lexicon(paths["late"], name="late")
    basic = load_word_list(paths["basic_words"], name="basic_words")
    return early, late, basic


def extract_vector(
    document: Document,
    config: RunConfig,
    groups: Iterable[str],
    base_seed: int = 0,
    lexicons: tuple | None = None,
) -> tuple[list[float], list[bool], dict]:
    """Feature vector for one document in canonical column order.

    Returns (values, absent_mask, per-document detail). Levels are not
    needed, so this also serves single-document prediction.
    """
    groups = set(groups)
    if lexicons is None:
        lexicons = _load_lexicons(config) if "LXSM" in groups else (None,) * 3
    _, values, mask, detail = _extract_row(
        (document, config, groups, base_seed, lexicons))
    return values, mask, detail


def _extract_row(args: tuple) -> tuple[str, list[float], list[bool], dict]:
    """Per-document worker; module-level so process pools can pickle it."""
    document, config, groups, base_seed, lexicons = args
    values: list[float] = []
    absent_names: set[str] = set()
    detail: dict = {}
    for group in GROUP_ORDER:
        if group not in groups:
            continue
        if group == "TRAD":
            feats = trad.extract_trad(document, config)
        elif group == "LXSM":
            early, late, basic = lexicons
            feats = lxsm.extract_lxsm(document, early, late, basic,
                                      mattr_window=config.mattr_window)
        elif group == "SYNX":
            feats = synx.extract_synx(document, config)
            detail["phrase_source"] = feats.phrase_source
        elif group == "MORPH":
            feats = morph.extract_morph(document, config, base_seed)
            if feats.fallbacks:
                detail["mci_fallbacks"] = sorted(feats.fallbacks)
        else:
            feats = disco.extract_disco(document)
        group_dict = feats.as_dict()
        values.extend(group_dict.values())
        if hasattr(feats, "absent_names"):
            absent_names.update(f"{group}.{name}"
                                for name in feats.absent_names())
    names = [f"{group}.{name}"
             for group in GROUP_ORDER if group in groups
             for name in _GROUP_FEATURES[group]]
    mask = [name in absent_names for name in names]
    return document.doc_id, values, mask, detail


def extract_all(
    documents: Sequence[Document],
    config: RunConfig | None = None,
    groups: Iterable[str] = GROUP_ORDER,
    base_seed: int = 0,
    jobs: int = 1,
) -> FeatureMatrix:
    """Extract the requested feature groups for every document.

    Deterministic given (documents, config, base_seed) regardless of
    `jobs`; any per-document failure aborts with the failing doc ids.
    """
    config = config or RunConfig.default()
    schema = build_schema(groups)
    wanted = set(schema.groups)
    lexicons = _load_lexicons(config) if "LXSM" in wanted else (None, None, None)
    work = [(doc, config, wanted, base_seed, lexicons) for doc in documents]

    results: dict[str, tuple[list[float], list[bool], dict]] = {}
    failures: list[str] = []
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for doc, outcome in zip(documents,
                                    pool.map(_extract_row_safe, work)):
                if isinstance(outcome, str):
                    failures.append(f"{doc.doc_id}: {outcome}")
                else:
                    doc_id, values, mask, detail = outcome
                    results[doc_id] = (values, mask, detail)
    else:
        for item in work:
            outcome = _extract_row_safe(item)
            if isinstance(outcome, str):
                failures.append(f"{item[0].doc_id}: {outcome}")
            else:
                doc_id, values, mask, detail = outcome
                results[doc_id] = (values, mask, detail)
    if failures:
        raise DegenerateInputError(
            "feature extraction failed for: " + "; ".join(failures))

    rows = []
    details: dict[str, dict] = {}
    for doc in documents:
        values, mask, detail = results[doc.doc_id]
        if doc.level is None:
            raise DegenerateInputError("document has no level",
                                       doc_id=doc.doc_id)
        rows.append(MatrixRow(doc.doc_id, doc.level,
                              np.array(values, dtype=float),
                              np.array(mask, dtype=bool)))
        if detail:
            details[doc.doc_id] = detail
    meta = {"base_seed": base_seed, "groups": sorted(wanted)}
    if details:
        meta["extraction_details"] = details
    return FeatureMatrix(schema, rows, meta)


def _extract_row_safe(args: tuple):
    try:
        return _extract_row(args)
    except DegenerateInputError as exc:
        return str(exc)


def impute_means(matrix: FeatureMatrix,
                 row_indices: Sequence[int] | None = None) -> np.ndarray:
    """Column means over unmasked cells of the chosen rows; all-masked
    columns impute 0 with a warning."""
    values = matrix.values_array()
    absent = matrix.absent_array()
    if row_indices is not None:
        values = values[list(row_indices)]
        absent = absent[list(row_indices)]
    means = np.zeros(values.shape[1])
    for j in range(values.shape[1]):
        present = ~absent[:, j]
        if present.any():
            means[j] = values[present, j].mean()
        elif absent[:, j].any():
            log.warning("feature %s masked in every training row; imputing 0",
                        matrix.schema.names[j])
    return means


def apply_impute(values: np.ndarray, absent: np.ndarray,
                 means: np.ndarray) -> np.ndarray:
    out = values.copy()
    for j in range(values.shape[1]):
        out[absent[:, j], j] = means[j]
    return out


def impute(matrix: FeatureMatrix,
           train_indices: Sequence[int],
           apply_indices: Sequence[int]) -> np.ndarray:
    """Training-fold mean imputation applied to the given rows."""
    means = impute_means(matrix, train_indices)
    values = matrix.values_array()[list(apply_indices)]
    absent = matrix.absent_array()[list(apply_indices)]
    return apply_impute(values, absent, means)


def atomic_write_text(path: str | Path, text: str) -> None:
    """Write via a sibling temp file and rename, so readers never see a
    partial file."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def meta_path(matrix_path: str | Path) -> Path:
    matrix_path = Path(matrix_path)
    return matrix_path.with_name(matrix_path.name + ".meta.json")


def write_matrix(matrix: FeatureMatrix, path: str | Path,
                 config: RunConfig | None = None,
                 seed: int | None = None) -> None:
    """Matrix CSV plus a metadata sidecar (schema, config snapshot, seed)."""
    lines = ["doc_id,level," + ",".join(matrix.schema.names)]
    for row in matrix.rows:
        cells = [row.doc_id, row.level.name]
        for value, masked in zip(row.values, row.absent):
            cells.append("" if masked else repr(float(value)))
        lines.append(",".join(cells))
    atomic_write_text(path, "\n".join(lines) + "\n")

    meta = {
        "schema_version": matrix.schema.schema_version,
        "features": list(matrix.schema.names),
        "groups": [group for _, group in matrix.schema.entries],
    }
    meta.update(matrix.meta)
    if config is not None:
        meta["config"] = config.snapshot()
    if seed is not None:
        meta["seed"] = seed
    atomic_write_text(meta_path(path),
                      json.dumps(meta, ensure_ascii=False, indent=2,
                                 sort_keys=True) + "\n")


def _schema_from_names(names: Sequence[str]) -> FeatureSchema:
    entries = []
    for name in names:
        group = name.split(".", 1)[0]
        if group not in KNOWN_GROUPS or "." not in name:
            raise SchemaError(f"unknown column: {name}")
        entries.append((name, group))
    return FeatureSchema(tuple(entries))


def read_matrix(path: str | Path,
                expected_schema: FeatureSchema | None = None) -> FeatureMatrix:
    """Read a matrix CSV; columns are matched by name, so reordered files
    load into the expected schema when one is given."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    lines = text.splitlines()
    if not lines:
        raise SchemaError(f"{path}: empty matrix file")
    header = lines[0].split(",")
    if header[:2] != ["doc_id", "level"]:
        raise SchemaError(f"{path}: header must start with doc_id,level")
    file_names = header[2:]
    file_schema = _schema_from_names(file_names)
    if expected_schema is not None:
        missing = set(expected_schema.names) - set(file_names)
        extra = set(file_names) - set(expected_schema.names)
        if missing or extra:
            parts = []
            if missing:
                parts.append("missing: " + ", ".join(sorted(missing)))
            if extra:
                parts.append("unexpected: " + ", ".join(sorted(extra)))
            raise SchemaError(f"{path}: schema mismatch ({'; '.join(parts)})")
        order = [file_names.index(name) for name in expected_schema.names]
        schema = expected_schema
    else:
        order = list(range(len(file_names)))
        schema = file_schema

    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        cells = line.split(",")
        if len(cells) != len(file_names) + 2:
            raise SchemaError(
                f"{path}, line {lineno}: expected {len(file_names) + 2} cells")
        level = ReadingLevel.from_string(cells[1])
        raw = cells[2:]
        values = np.zeros(len(order))
        absent = np.zeros(len(order), dtype=bool)
        for out_idx, src_idx in enumerate(order):
            cell = raw[src_idx]
            if cell == "":
                absent[out_idx] = True
            else:
                values[out_idx] = float(cell)
        rows.append(MatrixRow(cells[0], level, values, absent))

    meta: dict = {}
    side = meta_path(path)
    if side.exists():
        meta = json.loads(side.read_text(encoding="utf-8"))
    return FeatureMatrix(schema, rows, meta)
