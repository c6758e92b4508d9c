"""Job-level behaviour: output layout, skipping, determinism, CLI."""

import csv
import filecmp
import json
from pathlib import Path

import pytest

from trannotate.cli import main
from trannotate.errors import AnnotateError
from trannotate.job import AnnotationJob, annotate


def read_manifest(path: Path) -> list[list[str]]:
    with open(path, encoding="utf-8", newline="") as handle:
        return list(csv.reader(handle))


def run(corpus_dir, out_dir, **kwargs):
    job = AnnotationJob(input_dir=corpus_dir, output_dir=out_dir, **kwargs)
    return annotate(job)


class TestOutputs:
    @pytest.fixture(scope="class")
    @staticmethod
    def result_dir(corpus_dir, tmp_path_factory):
        out = tmp_path_factory.mktemp("out")
        result = run(corpus_dir, out)
        return out, result

    def test_one_conllu_per_input(self, result_dir):
        out, result = result_dir
        assert sorted(result.documents) == [
            "bilim", "hayvanlar", "okul", "sehir"]
        for doc_id in result.documents:
            assert (out / "docs" / f"{doc_id}.conllu").is_file()

    def test_manifest_rows_and_levels(self, result_dir):
        out, _ = result_dir
        rows = read_manifest(out / "manifest.csv")
        assert rows[0] == ["doc_id", "level", "conllu_path", "trees_path"]
        by_id = {row[0]: row for row in rows[1:]}
        assert by_id["hayvanlar"][1] == "ELE"
        assert by_id["okul"][1] == "ELE"
        assert by_id["sehir"][1] == "INT"
        assert by_id["bilim"][1] == "ADV"
        assert by_id["okul"][2] == "docs/okul.conllu"
        assert all(row[3] == "" for row in rows[1:])  # no --trees

    def test_no_empty_sentences(self, result_dir):
        out, result = result_dir
        for doc_id in result.documents:
            text = (out / "docs" / f"{doc_id}.conllu").read_text("utf-8")
            for block in text.strip().split("\n\n"):
                token_lines = [line for line in block.splitlines()
                               if line and not line.startswith("#")]
                assert token_lines, f"empty sentence block in {doc_id}"

    def test_errors_log_empty(self, result_dir):
        out, _ = result_dir
        assert (out / "errors.log").read_text("utf-8") == ""

    def test_metadata(self, result_dir):
        out, _ = result_dir
        metadata = json.loads((out / "metadata.json").read_text("utf-8"))
        assert metadata["pipeline"] == "rules-v1"
        assert metadata["totals"]["documents"] == 4
        assert metadata["totals"]["skipped"] == 0
        assert set(metadata["per_document"]) == {
            "bilim", "hayvanlar", "okul", "sehir"}
        for counts in metadata["per_document"].values():
            assert counts["sentences"] > 0
            assert counts["tokens"] >= counts["words"] > 0


class TestTrees:
    def test_trees_emitted_and_referenced(self, corpus_dir, tmp_path):
        out = tmp_path / "out"
        result = run(corpus_dir, out, emit_trees=True)
        rows = read_manifest(out / "manifest.csv")
        for row in rows[1:]:
            assert row[3] == f"trees/{row[0]}.trees"
            tree_path = out / row[3]
            assert tree_path.is_file()
            lines = tree_path.read_text("utf-8").splitlines()
            conllu = (out / row[2]).read_text("utf-8")
            n_sentences = len([b for b in conllu.strip().split("\n\n") if b])
            assert len(lines) == n_sentences
            for line in lines:
                if line:
                    assert line.startswith("(S ")
                    assert line.count("(") == line.count(")")
        assert result.totals["documents"] == 4


class TestDeterminism:
    def test_two_runs_byte_identical(self, corpus_dir, tmp_path):
        first = tmp_path / "first"
        second = tmp_path / "second"
        run(corpus_dir, first, emit_trees=True)
        run(corpus_dir, second, emit_trees=True)
        for relative in ("manifest.csv", "metadata.json", "errors.log"):
            assert (first / relative).read_bytes() == \
                (second / relative).read_bytes()
        comparison = filecmp.dircmp(first / "docs", second / "docs")
        assert not comparison.diff_files
        assert not comparison.left_only and not comparison.right_only

    def test_batch_size_does_not_change_output(self, corpus_dir, tmp_path):
        small = tmp_path / "small"
        large = tmp_path / "large"
        run(corpus_dir, small, batch_size=1)
        run(corpus_dir, large, batch_size=64)
        assert (small / "manifest.csv").read_bytes() == \
            (large / "manifest.csv").read_bytes()
        assert (small / "metadata.json").read_bytes() == \
            (large / "metadata.json").read_bytes()


class TestSkipping:
    @pytest.fixture()
    def messy_corpus(self, tmp_path):
        root = tmp_path / "messy"
        (root / "ELE").mkdir(parents=True)
        (root / "INT").mkdir()
        (root / "ELE" / "iyi.txt").write_text("Kedi geldi.", encoding="utf-8")
        (root / "ELE" / "bos.txt").write_text("\n\n", encoding="utf-8")
        (root / "ELE" / "bozuk.txt").write_bytes(b"\xff\xfe\x00bad")
        (root / "INT" / "iyi.txt").write_text("Ev yandı.", encoding="utf-8")
        return root

    def test_bad_files_skipped_and_logged(self, messy_corpus, tmp_path):
        out = tmp_path / "out"
        result = run(messy_corpus, out)
        assert result.documents == ("iyi",)
        reasons = dict(result.skipped)
        assert "no sentences" in reasons["ELE/bos.txt"]
        assert "not valid UTF-8" in reasons["ELE/bozuk.txt"]
        assert "duplicate doc_id" in reasons["INT/iyi.txt"]
        log = (out / "errors.log").read_text("utf-8")
        assert "ELE/bozuk.txt" in log
        rows = read_manifest(out / "manifest.csv")
        assert [row[0] for row in rows[1:]] == ["iyi"]

    def test_all_files_failing_is_an_error(self, tmp_path):
        root = tmp_path / "allbad"
        (root / "ELE").mkdir(parents=True)
        (root / "ELE" / "bos.txt").write_text("", encoding="utf-8")
        with pytest.raises(AnnotateError, match="every input file failed"):
            run(root, tmp_path / "out")
        assert (tmp_path / "out" / "errors.log").is_file()

    def test_missing_input_dir(self, tmp_path):
        with pytest.raises(AnnotateError, match="input directory not found"):
            run(tmp_path / "nope", tmp_path / "out")

    def test_no_level_dirs(self, tmp_path):
        empty = tmp_path / "empty"
        empty.mkdir()
        with pytest.raises(AnnotateError, match=r"no ELE/INT/ADV"):
            run(empty, tmp_path / "out")

    def test_bad_batch_size(self, corpus_dir, tmp_path):
        with pytest.raises(AnnotateError, match="batch size"):
            run(corpus_dir, tmp_path / "out", batch_size=0)


class TestCli:
    def test_annotate_success(self, corpus_dir, tmp_path, capsys):
        out = tmp_path / "cli_out"
        code = main(["annotate", "--in", str(corpus_dir), "--out", str(out),
                     "--trees"])
        assert code == 0
        assert "annotated 4 documents (0 skipped)" in capsys.readouterr().out
        assert (out / "manifest.csv").is_file()

    def test_unknown_model(self, corpus_dir, tmp_path, capsys):
        code = main(["annotate", "--in", str(corpus_dir),
                     "--out", str(tmp_path / "x"), "--model", "neural-v9"])
        assert code == 1
        assert "error: unknown pipeline model" in capsys.readouterr().err

    def test_missing_input(self, tmp_path, capsys):
        code = main(["annotate", "--in", str(tmp_path / "nope"),
                     "--out", str(tmp_path / "x")])
        assert code == 1
        assert "error:" in capsys.readouterr().err
