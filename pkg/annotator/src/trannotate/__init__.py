"""Batch annotation of raw Turkish text into CoNLL-U corpora.

The package walks a ``corpus/{ELE,INT,ADV}/*.txt`` directory, runs each
file through a pinned annotation pipeline (sentence split, tokenize,
lemmatize, POS-tag, dependency-parse, named entities), and writes one
``<doc_id>.conllu`` per input plus a ``manifest.csv`` that downstream
readability tooling consumes directly.
"""

__version__ = "0.1.0"
