"""Bundled miniature corpus generator: structure, determinism, and the
group-wise signals that make it learnable."""

from __future__ import annotations

import filecmp
import json

import pytest

from trread.config import RunConfig
from trread.corpus import ReadingLevel, load_manifest
from trread.features.disco import extract_disco
from trread.features.synx import extract_synx
from trread.features.trad import extract_trad
from trread.registry import extract_all
from trread.toydata import generate_toy_corpus


class TestLayout:
    def test_files_and_counts(self, toy_corpus):
        out_dir, manifest_path = toy_corpus
        assert manifest_path.name == "manifest.csv"
        assert (out_dir / "config.json").is_file()
        manifest, documents = load_manifest(manifest_path)
        assert len(documents) == 12
        assert manifest.level_counts() == {
            ReadingLevel.ELE: 4, ReadingLevel.INT: 4, ReadingLevel.ADV: 4,
        }
        for doc in documents:
            assert doc.sentences
            assert all(s.const_tree is not None for s in doc.sentences)

    def test_lexicon_paths_resolve(self, toy_corpus):
        out_dir, _ = toy_corpus
        config = RunConfig.load(out_dir / "config.json")
        for name in ("early", "late", "basic_words"):
            path = config.lexicon_path(name)
            assert path is not None and path.is_file()

    def test_config_sets_small_mattr_window(self, toy_corpus):
        out_dir, _ = toy_corpus
        config = RunConfig.load(out_dir / "config.json")
        assert config.mattr_window == 20

    def test_doc_ids_follow_level_prefix(self, toy_corpus):
        _, manifest_path = toy_corpus
        _, documents = load_manifest(manifest_path)
        for doc in documents:
            assert doc.doc_id.startswith(doc.level.name.lower() + "_")


class TestDeterminism:
    def test_two_generations_are_identical(self, tmp_path):
        a = tmp_path / "a"
        b = tmp_path / "b"
        generate_toy_corpus(a, docs_per_level=3)
        generate_toy_corpus(b, docs_per_level=3)
        comparison = filecmp.dircmp(a, b)

        def assert_same(cmp):
            assert not cmp.diff_files, cmp.diff_files
            assert not cmp.left_only and not cmp.right_only
            for sub in cmp.subdirs.values():
                assert_same(sub)

        assert_same(comparison)
        # Byte-level check on a couple of files, since dircmp may use
        # shallow comparison.
        assert (a / "manifest.csv").read_bytes() == (b / "manifest.csv").read_bytes()
        assert (a / "config.json").read_bytes() == (b / "config.json").read_bytes()


@pytest.fixture(scope="module")
def documents(tmp_path_factory):
    out_dir = tmp_path_factory.mktemp("toy_signals")
    manifest_path = generate_toy_corpus(out_dir, docs_per_level=3)
    _, docs = load_manifest(manifest_path)
    by_level = {level: [] for level in ReadingLevel}
    for doc in docs:
        by_level[doc.level].append(doc)
    return by_level


class TestSignals:
    def levels(self):
        return [ReadingLevel.ELE, ReadingLevel.INT, ReadingLevel.ADV]

    def test_sentence_length_grows_with_level(self, documents):
        means = []
        for level in self.levels():
            feats = [extract_trad(doc) for doc in documents[level]]
            means.append(sum(f.mean_sentence_len_words for f in feats)
                         / len(feats))
        assert means[0] < means[1] < means[2]

    def test_dependency_depth_grows_with_level(self, documents):
        maxima = []
        for level in self.levels():
            feats = [extract_synx(doc) for doc in documents[level]]
            maxima.append(max(f.max_dep_depth for f in feats))
        assert maxima[0] < maxima[1] < maxima[2]

    def test_entity_rate_grows_with_level(self, documents):
        rates = []
        for level in self.levels():
            feats = [extract_disco(doc) for doc in documents[level]]
            rates.append(sum(f.entities_per_sentence for f in feats)
                         / len(feats))
        assert rates[0] < rates[1] < rates[2]
        assert rates[0] == 0.0

    def test_every_document_extracts_cleanly(self, tmp_path):
        out_dir = tmp_path / "toy"
        manifest_path = generate_toy_corpus(out_dir, docs_per_level=2)
        config = RunConfig.load(out_dir / "config.json")
        _, documents = load_manifest(manifest_path)
        matrix = extract_all(documents, config=config)
        assert matrix.values_array().shape == (6, 98)
        # Constituency features are present everywhere: nothing masked
        # except possibly morphology slots for missing parts of speech.
        absent = matrix.absent_array()
        names = matrix.schema.names
        for j in range(absent.shape[1]):
            if absent[:, j].any():
                assert names[j].startswith("MORPH."), names[j]


class TestCommittedCopy:
    def test_repository_copy_matches_generator(self, tmp_path):
        """The corpus checked into data/toy must equal a fresh generation."""
        from pathlib import Path

        committed = Path(__file__).resolve().parent.parent / "data" / "toy"
        if not committed.is_dir():
            pytest.skip("no committed toy corpus in this checkout")
        fresh = tmp_path / "toy"
        generate_toy_corpus(fresh, docs_per_level=10)
        for rel in ("manifest.csv", "config.json"):
            assert (committed / rel).read_bytes() == (fresh / rel).read_bytes()
        committed_docs = sorted(p.name for p in (committed / "docs").iterdir())
        fresh_docs = sorted(p.name for p in (fresh / "docs").iterdir())
        assert committed_docs == fresh_docs
        for name in committed_docs:
            assert (committed / "docs" / name).read_bytes() == \
                (fresh / "docs" / name).read_bytes()
