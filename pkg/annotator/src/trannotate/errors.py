"""Error types for the annotation pipeline."""


class AnnotateError(Exception):
    """Raised for unusable jobs (bad directories, unknown pipeline name)."""


class PipelineError(Exception):
    """Raised when one input file cannot be annotated; the file is skipped."""
