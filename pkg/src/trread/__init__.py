"""Readability assessment for Turkish text.

Three reading levels, five handcrafted feature groups over annotated
corpora (CoNLL-U plus optional constituency trees), from-scratch random
forest and logistic regression, stratified cross-validation, feature
importance, and soft-label fusion. The `trread` command exposes the full
workflow.
"""

from .config import RunConfig
from .corpus import (
    ConstituencyNode,
    CorpusManifest,
    Document,
    ReadingLevel,
    Sentence,
    Token,
    load_document,
    load_manifest,
    parse_bracketed_tree,
    parse_conllu,
    syllable_count,
    turkish_lower,
    word_tokens,
)
from .errors import (
    ConfigError,
    ConlluParseError,
    DegenerateInputError,
    ManifestError,
    SchemaError,
    SoftLabelError,
    TrainingError,
    TreeParseError,
    TrreadError,
)
from .hybrid import SoftLabelTable, fuse, load_soft_labels
from .registry import (
    FeatureMatrix,
    FeatureSchema,
    build_schema,
    extract_all,
    read_matrix,
    write_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "ConlluParseError",
    "ConstituencyNode",
    "CorpusManifest",
    "DegenerateInputError",
    "Document",
    "FeatureMatrix",
    "FeatureSchema",
    "ManifestError",
    "ReadingLevel",
    "RunConfig",
    "SchemaError",
    "Sentence",
    "SoftLabelError",
    "SoftLabelTable",
    "Token",
    "TrainingError",
    "TreeParseError",
    "TrreadError",
    "build_schema",
    "extract_all",
    "fuse",
    "load_document",
    "load_manifest",
    "load_soft_labels",
    "parse_bracketed_tree",
    "parse_conllu",
    "read_matrix",
    "syllable_count",
    "turkish_lower",
    "word_tokens",
    "write_matrix",
    "__version__",
]
