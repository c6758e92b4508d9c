"""Feature registry: schema construction, full-corpus extraction,
imputation, and the CSV matrix round-trip."""

from __future__ import annotations

import json

import numpy as np
import pytest

from trread.config import RunConfig
from trread.corpus import ReadingLevel, load_manifest
from trread.errors import ConfigError, DegenerateInputError, SchemaError
from trread.registry import (
    GROUP_ORDER,
    SCHEMA_VERSION,
    FeatureMatrix,
    MatrixRow,
    build_schema,
    extract_all,
    extract_vector,
    impute,
    impute_means,
    meta_path,
    read_matrix,
    write_matrix,
)

from conftest import make_document, simple_sentence

GROUP_WIDTHS = {"TRAD": 7, "LXSM": 17, "SYNX": 64, "MORPH": 6, "DISCO": 4}


class TestSchema:
    def test_full_schema_layout(self):
        schema = build_schema()
        assert len(schema) == 98
        assert schema.schema_version == SCHEMA_VERSION
        assert schema.groups == GROUP_ORDER
        for group, width in GROUP_WIDTHS.items():
            assert len(schema.subset_indices([group])) == width
        # Names are group-qualified and unique.
        assert schema.names[0] == "TRAD.atesman_score"
        assert len(set(schema.names)) == 98

    def test_group_order_is_canonical_regardless_of_request_order(self):
        shuffled = build_schema(["DISCO", "TRAD", "MORPH"])
        assert shuffled.groups == ("TRAD", "MORPH", "DISCO")
        assert len(shuffled) == 7 + 6 + 4

    def test_subset_indices(self):
        schema = build_schema()
        idx = schema.subset_indices(["LXSM"])
        assert len(idx) == 17
        assert all(schema.entries[i][1] == "LXSM" for i in idx)

    def test_index_of_unknown_feature(self):
        schema = build_schema()
        with pytest.raises(SchemaError):
            schema.index_of("TRAD.nope")

    def test_unknown_group_rejected(self):
        with pytest.raises(SchemaError):
            build_schema(["TRAD", "SHINY"])


class TestExtraction:
    def test_extract_all_over_toy_corpus(self, toy_corpus):
        out_dir, manifest_path = toy_corpus
        config = RunConfig.load(out_dir / "config.json")
        _, documents = load_manifest(manifest_path)
        matrix = extract_all(documents, config=config)
        assert matrix.values_array().shape == (12, 98)
        assert matrix.doc_ids == [doc.doc_id for doc in documents]
        assert matrix.meta["base_seed"] == 0

    def test_jobs_do_not_change_results(self, toy_corpus):
        out_dir, manifest_path = toy_corpus
        config = RunConfig.load(out_dir / "config.json")
        _, documents = load_manifest(manifest_path)
        serial = extract_all(documents, config=config, jobs=1)
        parallel = extract_all(documents, config=config, jobs=3)
        np.testing.assert_array_equal(serial.values_array(),
                                      parallel.values_array())
        np.testing.assert_array_equal(serial.absent_array(),
                                      parallel.absent_array())

    def test_group_subset_extraction_matches_full(self, toy_corpus):
        out_dir, manifest_path = toy_corpus
        config = RunConfig.load(out_dir / "config.json")
        _, documents = load_manifest(manifest_path)
        full = extract_all(documents, config=config)
        trad_only = extract_all(documents, config=config, groups=["TRAD"])
        sub = full.group_subset(["TRAD"])
        np.testing.assert_allclose(trad_only.values_array(),
                                   sub.values_array())
        assert trad_only.schema.names == sub.schema.names

    def test_lxsm_needs_lexicons(self):
        doc = make_document([simple_sentence(["ev", "su"])])
        with pytest.raises(ConfigError, match="lexicon"):
            extract_all([doc], config=RunConfig.default(), groups=["LXSM"])

    def test_groups_without_lexicons_work_on_default_config(self):
        doc = make_document([simple_sentence(["ev", "su"])])
        matrix = extract_all([doc], config=RunConfig.default(),
                             groups=["TRAD", "SYNX", "MORPH", "DISCO"])
        assert matrix.values_array().shape == (1, 7 + 64 + 6 + 4)

    def test_failure_reports_doc_id(self):
        from trread.corpus import Sentence, Token

        bad = make_document(
            [Sentence(tokens=(Token(".", ".", "PUNCT", 0, "root"),))],
            doc_id="broken",
        )
        with pytest.raises(DegenerateInputError, match="broken"):
            extract_all([bad], config=RunConfig.default(), groups=["TRAD"])

    def test_extract_vector_matches_matrix_row(self, toy_corpus):
        out_dir, manifest_path = toy_corpus
        config = RunConfig.load(out_dir / "config.json")
        _, documents = load_manifest(manifest_path)
        matrix = extract_all(documents, config=config)
        values, mask, detail = extract_vector(
            documents[0], config, GROUP_ORDER)
        np.testing.assert_allclose(values, matrix.values_array()[0])
        assert detail.get("phrase_source") == "constituency"


class TestImputation:
    def build_matrix(self):
        schema = build_schema(["DISCO"])
        rows = [
            MatrixRow("a", ReadingLevel.ELE,
                      np.array([1.0, 2.0, 3.0, 4.0]),
                      np.array([False, False, False, False])),
            MatrixRow("b", ReadingLevel.INT,
                      np.array([3.0, 0.0, 5.0, 8.0]),
                      np.array([False, True, False, False])),
            MatrixRow("c", ReadingLevel.ADV,
                      np.array([0.0, 6.0, 7.0, 0.0]),
                      np.array([True, False, False, True])),
        ]
        return FeatureMatrix(schema=schema, rows=rows, meta={})

    def test_means_skip_masked_cells(self):
        matrix = self.build_matrix()
        means = impute_means(matrix)
        np.testing.assert_allclose(means, [2.0, 4.0, 5.0, 6.0])

    def test_train_only_means(self):
        matrix = self.build_matrix()
        means = impute_means(matrix, row_indices=[0, 1])
        np.testing.assert_allclose(means, [2.0, 2.0, 4.0, 6.0])

    def test_impute_fills_only_masked_cells(self):
        matrix = self.build_matrix()
        filled = impute(matrix, train_indices=[0, 1], apply_indices=[2])
        np.testing.assert_allclose(filled, [[2.0, 6.0, 7.0, 6.0]])

    def test_fully_masked_column_imputes_zero(self):
        schema = build_schema(["DISCO"])
        rows = [
            MatrixRow("a", ReadingLevel.ELE,
                      np.array([0.0, 1.0, 1.0, 1.0]),
                      np.array([True, False, False, False])),
            MatrixRow("b", ReadingLevel.INT,
                      np.array([0.0, 2.0, 2.0, 2.0]),
                      np.array([True, False, False, False])),
        ]
        matrix = FeatureMatrix(schema=schema, rows=rows, meta={})
        means = impute_means(matrix)
        assert means[0] == 0.0


class TestMatrixIO:
    def extract(self, toy_corpus):
        out_dir, manifest_path = toy_corpus
        config = RunConfig.load(out_dir / "config.json")
        _, documents = load_manifest(manifest_path)
        return config, extract_all(documents, config=config)

    def test_round_trip_is_exact(self, toy_corpus, tmp_path):
        config, matrix = self.extract(toy_corpus)
        path = tmp_path / "features.csv"
        write_matrix(matrix, path, config=config)
        loaded = read_matrix(path)
        np.testing.assert_array_equal(loaded.values_array(),
                                      matrix.values_array())
        np.testing.assert_array_equal(loaded.absent_array(),
                                      matrix.absent_array())
        assert loaded.doc_ids == matrix.doc_ids
        assert loaded.schema.names == matrix.schema.names
        assert [row.level for row in loaded.rows] == [
            row.level for row in matrix.rows
        ]

    def test_sidecar_metadata(self, toy_corpus, tmp_path):
        config, matrix = self.extract(toy_corpus)
        path = tmp_path / "features.csv"
        write_matrix(matrix, path, config=config, seed=3)
        sidecar = json.loads(meta_path(path).read_text(encoding="utf-8"))
        assert sidecar["schema_version"] == SCHEMA_VERSION
        assert sidecar["seed"] == 3
        assert "config" in sidecar

    def test_rewrites_are_byte_identical(self, toy_corpus, tmp_path):
        config, matrix = self.extract(toy_corpus)
        first = tmp_path / "a.csv"
        second = tmp_path / "b.csv"
        write_matrix(matrix, first, config=config)
        write_matrix(matrix, second, config=config)
        assert first.read_bytes() == second.read_bytes()
        assert meta_path(first).read_bytes() == meta_path(second).read_bytes()

    def test_expected_schema_mismatch(self, toy_corpus, tmp_path):
        config, matrix = self.extract(toy_corpus)
        path = tmp_path / "features.csv"
        write_matrix(matrix.group_subset(["TRAD"]), path, config=config)
        with pytest.raises(SchemaError, match="schema mismatch"):
            read_matrix(path, expected_schema=build_schema())

    def test_reorders_columns_by_name(self, toy_corpus, tmp_path):
        config, matrix = self.extract(toy_corpus)
        path = tmp_path / "features.csv"
        write_matrix(matrix, path, config=config)
        lines = path.read_text(encoding="utf-8").splitlines()
        header = lines[0].split(",")
        # Swap the two final feature columns in every line.
        swapped = [",".join(parts[:-2] + [parts[-1], parts[-2]])
                   for parts in (line.split(",") for line in lines)]
        path.write_text("\n".join(swapped) + "\n", encoding="utf-8")
        loaded = read_matrix(path, expected_schema=matrix.schema)
        np.testing.assert_array_equal(loaded.values_array(),
                                      matrix.values_array())

    def test_unknown_column_rejected(self, tmp_path):
        path = tmp_path / "features.csv"
        path.write_text(
            "doc_id,level,TRAD.atesman_score,WAT.is_this\na,ELE,1.0,2.0\n",
            encoding="utf-8",
        )
        with pytest.raises(SchemaError, match="unknown column"):
            read_matrix(path)

    def test_cell_count_error_carries_line_number(self, tmp_path):
        path = tmp_path / "features.csv"
        path.write_text(
            "doc_id,level,TRAD.atesman_score\na,ELE,1.0\nb,INT\n",
            encoding="utf-8",
        )
        with pytest.raises(SchemaError, match="line 3"):
            read_matrix(path)

    def test_masked_cells_round_trip(self, toy_corpus, tmp_path):
        config, matrix = self.extract(toy_corpus)
        # The toy corpus has trees everywhere, so fabricate a masked cell.
        row = matrix.rows[0]
        absent = row.absent.copy()
        absent[0] = True
        matrix.rows[0] = MatrixRow(row.doc_id, row.level, row.values, absent)
        path = tmp_path / "features.csv"
        write_matrix(matrix, path, config=config)
        loaded = read_matrix(path)
        assert loaded.absent_array()[0, 0]
        assert not loaded.absent_array()[0, 1]
