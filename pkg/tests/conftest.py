"""Shared builders for hand-constructed documents used across the suite."""

from __future__ import annotations

import pytest

from trread.corpus import (
    Document,
    ReadingLevel,
    Sentence,
    Token,
    parse_bracketed_tree,
)


def make_token(surface, lemma=None, upos="NOUN", head=0, deprel="root",
               entity_tag="O"):
    return Token(
        surface=surface,
        lemma=lemma if lemma is not None else surface,
        upos=upos,
        head=head,
        deprel=deprel,
        entity_tag=entity_tag,
    )


def make_sentence(specs, tree=None):
    """Build a sentence from (surface, lemma, upos, head, deprel[, tag])
    tuples; `tree` is an optional bracketed-tree string."""
    tokens = [make_token(*spec) for spec in specs]
    const = parse_bracketed_tree(tree) if tree is not None else None
    return Sentence(tokens=tokens, const_tree=const)


def simple_sentence(surfaces, upos="NOUN"):
    """Chain of tokens where each word hangs off the first (the root)."""
    tokens = [make_token(surfaces[0], upos=upos, head=0, deprel="root")]
    for surface in surfaces[1:]:
        tokens.append(make_token(surface, upos=upos, head=1, deprel="nmod"))
    return Sentence(tokens=tokens)


def make_document(sentences, doc_id="doc", level=ReadingLevel.ELE):
    return Document(doc_id=doc_id, level=level, sentences=sentences)


@pytest.fixture()
def toy_corpus(tmp_path_factory):
    """A generated miniature corpus shared by the tests that need one."""
    from trread.toydata import generate_toy_corpus

    out_dir = tmp_path_factory.mktemp("toy")
    manifest_path = generate_toy_corpus(out_dir, docs_per_level=4)
    return out_dir, manifest_path


# One line per @pytest.mark.criterion test in the terminal summary, so the
# verdicts survive in captured output even when everything passes.
_CRITERION_RESULTS: dict[str, str] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    name = marker.args[0]
    if report.skipped:
        _CRITERION_RESULTS[name] = "SKIP"
    elif report.when == "call":
        _CRITERION_RESULTS[name] = "PASS" if report.passed else "FAIL"
    elif report.failed:  # setup or teardown error
        _CRITERION_RESULTS[name] = "FAIL"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _CRITERION_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, status in _CRITERION_RESULTS.items():
        terminalreporter.write_line(f"{name}: {status}")
