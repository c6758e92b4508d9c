"""Per-document feature extractors, one module per linguistic group."""
