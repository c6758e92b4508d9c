"""Command-line interface: every subcommand end to end on the miniature
corpus, reproducibility of outputs, and error handling."""

from __future__ import annotations

import json
import subprocess
import sys

import pytest

from trread.cli import main


@pytest.fixture(scope="module")
def workspace(tmp_path_factory):
    """Toy corpus plus an extracted matrix shared by the command tests.

    Every subcommand's --out names a directory and the files inside use
    fixed names, so reruns are easy to diff.
    """
    root = tmp_path_factory.mktemp("cli")
    corpus = root / "corpus"
    assert main(["make-toy", "--out", str(corpus),
                 "--docs-per-level", "4"]) == 0
    out_dir = root / "features"
    assert main(["extract", str(corpus / "manifest.csv"),
                 "--out", str(out_dir),
                 "--config", str(corpus / "config.json"),
                 "--jobs", "1"]) == 0
    matrix = out_dir / "features.csv"
    return root, corpus, matrix


class TestMakeToy:
    def test_creates_corpus(self, workspace):
        _, corpus, _ = workspace
        assert (corpus / "manifest.csv").is_file()
        assert (corpus / "config.json").is_file()
        docs = list((corpus / "docs").iterdir())
        assert len(docs) == 12


class TestCorpusStats:
    def test_prints_table(self, workspace, capsys):
        _, corpus, _ = workspace
        assert main(["corpus-stats", str(corpus / "manifest.csv"),
                     "--config", str(corpus / "config.json")]) == 0
        out = capsys.readouterr().out
        for level in ("ELE", "INT", "ADV"):
            assert level in out
        assert "atesman" in out

    def test_optional_json_report(self, workspace, tmp_path):
        _, corpus, _ = workspace
        out_dir = tmp_path / "stats"
        assert main(["corpus-stats", str(corpus / "manifest.csv"),
                     "--config", str(corpus / "config.json"),
                     "--out", str(out_dir)]) == 0
        report = json.loads((out_dir / "corpus_stats.json").read_text())
        levels = {entry["level"] for entry in report["levels"]}
        assert levels == {"ELE", "INT", "ADV"}


class TestExtract:
    def test_outputs(self, workspace):
        root, _, matrix = workspace
        assert matrix.is_file()
        assert matrix.with_name("features.csv.meta.json").is_file()
        run_config = json.loads(
            (matrix.parent / "run_config.json").read_text(encoding="utf-8"))
        assert run_config["command"] == "extract"
        assert run_config["groups"] == ["TRAD", "LXSM", "SYNX",
                                        "MORPH", "DISCO"]
        # The destination path stays out of the record so reruns into a
        # different directory produce identical bytes.
        assert "out" not in run_config

    def test_header_schema(self, workspace):
        _, _, matrix = workspace
        header = matrix.read_text(encoding="utf-8").splitlines()[0]
        columns = header.split(",")
        assert columns[:2] == ["doc_id", "level"]
        assert len(columns) == 2 + 98

    def test_reruns_are_byte_identical(self, workspace, tmp_path):
        _, corpus, matrix = workspace
        again = tmp_path / "again"
        assert main(["extract", str(corpus / "manifest.csv"),
                     "--out", str(again),
                     "--config", str(corpus / "config.json"),
                     "--jobs", "2"]) == 0
        assert (again / "features.csv").read_bytes() == matrix.read_bytes()

    def test_group_subset(self, workspace, tmp_path):
        _, corpus, _ = workspace
        out = tmp_path / "trad"
        assert main(["extract", str(corpus / "manifest.csv"),
                     "--out", str(out),
                     "--config", str(corpus / "config.json"),
                     "--groups", "TRAD,DISCO"]) == 0
        header = (out / "features.csv").read_text(
            encoding="utf-8").splitlines()[0]
        assert len(header.split(",")) == 2 + 7 + 4

    def test_unknown_group_fails_cleanly(self, workspace, tmp_path, capsys):
        _, corpus, _ = workspace
        code = main(["extract", str(corpus / "manifest.csv"),
                     "--out", str(tmp_path / "x"),
                     "--groups", "NOPE"])
        assert code == 1
        assert "error:" in capsys.readouterr().err


class TestCv:
    def test_report_files(self, workspace, tmp_path):
        _, _, matrix = workspace
        out_dir = tmp_path / "cv"
        assert main(["cv", str(matrix), "--out", str(out_dir),
                     "--model", "rf", "--k", "4", "--seed", "7",
                     "--params", '{"n_trees": 30}']) == 0
        report = json.loads((out_dir / "cv_report.json").read_text())
        assert report["model"] == "rf"
        assert report["k"] == 4
        assert len(report["folds"]) == 4
        assert (out_dir / "cv_report.txt").is_file()
        assert report["aggregate"]["accuracy"] >= 0.75

    def test_group_restriction(self, workspace, tmp_path):
        _, _, matrix = workspace
        out_dir = tmp_path / "cv_trad"
        assert main(["cv", str(matrix), "--out", str(out_dir),
                     "--model", "rf", "--k", "3",
                     "--groups", "TRAD",
                     "--params", '{"n_trees": 20}']) == 0
        report = json.loads((out_dir / "cv_report.json").read_text())
        assert report["groups"] == ["TRAD"]

    def test_search_writes_trace(self, workspace, tmp_path):
        _, _, matrix = workspace
        out_dir = tmp_path / "cv_search"
        assert main(["cv", str(matrix), "--out", str(out_dir),
                     "--model", "logreg", "--k", "3",
                     "--search", "2"]) == 0
        trace = json.loads((out_dir / "search_trace.json").read_text())
        assert trace["budget"] == 2
        assert trace["trace"]
        report = json.loads((out_dir / "cv_report.json").read_text())
        assert "l2_lambda" in report["params"]

    def test_params_and_search_are_exclusive(self, workspace, tmp_path, capsys):
        _, _, matrix = workspace
        code = main(["cv", str(matrix), "--out", str(tmp_path / "x"),
                     "--params", '{"n_trees": 10}', "--search", "2"])
        assert code == 1
        assert "error:" in capsys.readouterr().err


@pytest.fixture(scope="module")
def model_path(workspace, tmp_path_factory):
    _, _, matrix = workspace
    out_dir = tmp_path_factory.mktemp("model") / "rf"
    assert main(["train", str(matrix), "--out", str(out_dir),
                 "--model", "rf", "--seed", "0",
                 "--params", '{"n_trees": 40}']) == 0
    return out_dir / "model.json"


class TestTrainPredict:
    def test_model_file(self, model_path):
        document = json.loads(model_path.read_text(encoding="utf-8"))
        assert document["kind"] == "random_forest"

    def test_predict_matrix(self, workspace, model_path, tmp_path):
        _, _, matrix = workspace
        out = tmp_path / "pred"
        assert main(["predict", "--model", str(model_path),
                     "--matrix", str(matrix), "--out", str(out)]) == 0
        lines = (out / "predictions.csv").read_text(
            encoding="utf-8").splitlines()
        assert lines[0] == "doc_id,predicted_level,p_ele,p_int,p_adv"
        assert len(lines) == 1 + 12
        for line in lines[1:]:
            doc_id, level, *probs = line.split(",")
            assert level in {"ELE", "INT", "ADV"}
            # Training data is re-predicted correctly on this corpus.
            assert doc_id.split("_")[0].upper() == level
            assert sum(float(p) for p in probs) == pytest.approx(1.0, abs=1e-6)

    def test_predict_single_conllu(self, workspace, model_path, tmp_path):
        _, corpus, _ = workspace
        out = tmp_path / "one"
        conllu = corpus / "docs" / "adv_00.conllu"
        trees = corpus / "trees" / "adv_00.trees"
        assert main(["predict", "--model", str(model_path),
                     "--conllu", str(conllu), "--trees", str(trees),
                     "--config", str(corpus / "config.json"),
                     "--out", str(out)]) == 0
        lines = (out / "predictions.csv").read_text(
            encoding="utf-8").splitlines()
        assert len(lines) == 2
        doc_id, level, *_ = lines[1].split(",")
        assert doc_id == "adv_00"
        assert level == "ADV"

    def test_predict_requires_exactly_one_input(self, workspace, model_path,
                                                tmp_path, capsys):
        _, corpus, matrix = workspace
        code = main(["predict", "--model", str(model_path),
                     "--out", str(tmp_path / "x")])
        assert code == 1
        capsys.readouterr()
        code = main(["predict", "--model", str(model_path),
                     "--matrix", str(matrix),
                     "--conllu", str(corpus / "docs" / "ele_00.conllu"),
                     "--out", str(tmp_path / "y")])
        assert code == 1
        assert "error:" in capsys.readouterr().err


class TestImportanceCorrelate:
    def test_mdi_importance(self, model_path, tmp_path):
        out_dir = tmp_path / "imp"
        assert main(["importance", "--model", str(model_path),
                     "--method", "mdi", "--out", str(out_dir)]) == 0
        report = json.loads((out_dir / "importance.json").read_text())
        assert "mdi" in report
        csv_lines = (out_dir / "importance.csv").read_text().splitlines()
        assert csv_lines[0].startswith("feature,")
        assert len(csv_lines) == 1 + 98

    def test_permutation_importance(self, workspace, model_path, tmp_path):
        _, _, matrix = workspace
        out_dir = tmp_path / "perm"
        assert main(["importance", "--model", str(model_path),
                     "--method", "permutation", "--matrix", str(matrix),
                     "--repeats", "2", "--out", str(out_dir)]) == 0
        report = json.loads((out_dir / "importance.json").read_text())
        assert report["repeats"] == 2

    def test_permutation_needs_matrix(self, model_path, tmp_path, capsys):
        code = main(["importance", "--model", str(model_path),
                     "--method", "permutation",
                     "--out", str(tmp_path / "x")])
        assert code == 1
        assert "error:" in capsys.readouterr().err

    def test_correlate(self, workspace, tmp_path):
        _, _, matrix = workspace
        out_dir = tmp_path / "corr"
        assert main(["correlate", str(matrix), "--top", "5",
                     "--out", str(out_dir)]) == 0
        report = json.loads((out_dir / "correlation.json").read_text())
        assert len(report["entries"]) == 98
        text = (out_dir / "correlation.txt").read_text(encoding="utf-8")
        assert len(text.splitlines()) <= 5 + 3  # header rows + top entries


class TestFuseFlow:
    def soft_labels(self, matrix_path, tmp_path, provenance):
        doc_ids = [line.split(",")[0] for line in
                   matrix_path.read_text().splitlines()[1:]]
        lines = [f"# generated: {provenance}", "doc_id,p_ele,p_int,p_adv"]
        for doc_id in doc_ids:
            level = doc_id.split("_")[0]
            probs = {"ele": "0.9,0.05,0.05", "int": "0.05,0.9,0.05",
                     "adv": "0.05,0.05,0.9"}[level]
            lines.append(f"{doc_id},{probs}")
        path = tmp_path / "soft.csv"
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return path

    def test_fuse_then_cv(self, workspace, tmp_path):
        _, _, matrix = workspace
        soft = self.soft_labels(matrix, tmp_path, "out_of_fold")
        fused_dir = tmp_path / "fused"
        assert main(["fuse", str(matrix), str(soft),
                     "--out", str(fused_dir)]) == 0
        fused = fused_dir / "features.csv"
        header = fused.read_text(encoding="utf-8").splitlines()[0]
        assert header.endswith("HYBRID.p_ele,HYBRID.p_int,HYBRID.p_adv")
        out_dir = tmp_path / "cv"
        assert main(["cv", str(fused), "--out", str(out_dir), "--k", "3",
                     "--params", '{"n_trees": 20}']) == 0

    def test_cv_refuses_full_fit_soft_labels(self, workspace, tmp_path,
                                             capsys):
        _, _, matrix = workspace
        soft = self.soft_labels(matrix, tmp_path, "full_fit")
        fused_dir = tmp_path / "fused"
        assert main(["fuse", str(matrix), str(soft),
                     "--out", str(fused_dir)]) == 0
        code = main(["cv", str(fused_dir / "features.csv"),
                     "--out", str(tmp_path / "cv"),
                     "--k", "3", "--params", '{"n_trees": 10}'])
        assert code == 1
        err = capsys.readouterr().err
        assert "out-of-fold" in err or "out_of_fold" in err


class TestErrorsAndEntryPoint:
    def test_missing_file_is_reported_not_raised(self, tmp_path, capsys):
        code = main(["corpus-stats", str(tmp_path / "nope.csv")])
        assert code == 1
        assert "error:" in capsys.readouterr().err

    def test_console_script_runs(self):
        result = subprocess.run(
            [sys.executable, "-m", "trread.cli", "--help"],
            capture_output=True, text=True, timeout=60,
        )
        assert result.returncode == 0
        assert "corpus-stats" in result.stdout
