"""Exception types shared across the package."""


class TrreadError(Exception):
    """Base class for all errors raised by this package."""


class ConlluParseError(TrreadError):
    """Malformed CoNLL-U input; carries the offending line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"{message}, line {line}")
        self.line = line


class TreeParseError(TrreadError):
    """Malformed bracketed tree; carries the character offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class ManifestError(TrreadError):
    """Corpus manifest could not be loaded."""


class DegenerateInputError(TrreadError):
    """A feature was requested on input it is undefined for (e.g. no words)."""

    def __init__(self, message: str, doc_id: str | None = None):
        if doc_id is not None:
            message = f"{message} (doc_id={doc_id})"
        super().__init__(message)
        self.doc_id = doc_id


class ConfigError(TrreadError):
    """Invalid run configuration."""


class SchemaError(TrreadError):
    """Feature schema or model format mismatch."""


class SoftLabelError(TrreadError):
    """Invalid soft-label table."""


class TrainingError(TrreadError):
    """Training preconditions violated (degenerate labels, folds, space)."""
