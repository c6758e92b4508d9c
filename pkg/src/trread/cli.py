"""Command-line workflow: corpus stats, feature extraction, training,
cross-validation, prediction, importance, correlation, label fusion, and
the bundled toy corpus.

Every file-producing command writes into --out atomically and drops a
run_config.json there with the effective config and seed (never the
output path itself), so rerunning the same command reproduces the
directory byte for byte.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

import numpy as np

from . import hybrid, registry, toydata
from .config import RunConfig
from .corpus import ReadingLevel, load_document, load_manifest, turkish_lower, word_tokens
from .errors import ConfigError, SoftLabelError, TrreadError
from .features import trad
from .learners.analysis import (mdi_importance, permutation_importance,
                                spearman_correlation)
from .learners.evaluate import MODEL_KINDS, evaluate, fit_on_matrix
from .learners.forest import RandomForestModel
from .learners.search import hyperparameter_search
from .learners.serialize import check_model_schema, load_model, save_model

log = logging.getLogger("trread")

RF_PARAM_KEYS = {"n_trees", "mtry", "min_leaf", "max_depth"}
LOGREG_PARAM_KEYS = {"l2_lambda", "max_iter", "tol"}

LEVEL_ORDER = (ReadingLevel.ELE, ReadingLevel.INT, ReadingLevel.ADV)


def _write_json(path: Path, data) -> None:
    registry.atomic_write_text(
        path, json.dumps(data, ensure_ascii=False, indent=2, sort_keys=True)
        + "\n")


def _prepare_out(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _write_run_config(out: Path, command: str, config: RunConfig | None,
                      seed: int | None, extra: dict | None = None) -> None:
    data: dict = {"command": command}
    if config is not None:
        data["config"] = config.snapshot()
    if seed is not None:
        data["seed"] = seed
    if extra:
        data.update(extra)
    _write_json(out / "run_config.json", data)


def _parse_groups(raw: str | None) -> list[str]:
    if raw is None:
        return list(registry.GROUP_ORDER)
    groups = [part.strip().upper() for part in raw.split(",") if part.strip()]
    if not groups:
        raise ConfigError("no feature groups given")
    return groups


def _parse_params(raw: str | None, kind: str) -> dict:
    if raw is None:
        return {}
    try:
        params = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"--params is not valid JSON: {exc}") from exc
    if not isinstance(params, dict):
        raise ConfigError("--params must be a JSON object")
    allowed = RF_PARAM_KEYS if kind == "rf" else LOGREG_PARAM_KEYS
    unknown = set(params) - allowed
    if unknown:
        raise ConfigError(
            f"unknown {kind} parameters: {', '.join(sorted(unknown))} "
            f"(allowed: {', '.join(sorted(allowed))})")
    return params


def _refuse_leaky_cv(matrix: registry.FeatureMatrix) -> None:
    groups = {group for _, group in matrix.schema.entries}
    if registry.HYBRID_GROUP not in groups:
        return
    provenance = matrix.meta.get("hybrid_provenance")
    if provenance != hybrid.OUT_OF_FOLD:
        raise SoftLabelError(
            "refusing to cross-validate a fused matrix whose soft labels "
            f"are not declared out-of-fold (provenance: {provenance!r}); "
            "regenerate the soft-label file with a '# generated: "
            "out_of_fold' header, or drop the HYBRID group")


def _fmt(value: float) -> str:
    return f"{value:.4f}"


def _table(rows: list[list[str]]) -> str:
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(cell.ljust(width) for cell, width in zip(row, widths))
             .rstrip() for row in rows]
    return "\n".join(lines) + "\n"


# --- commands ---------------------------------------------------------------


def cmd_corpus_stats(args) -> int:
    config = RunConfig.load(args.config)
    _, documents = load_manifest(args.manifest)
    by_level: dict[ReadingLevel, list] = {level: [] for level in LEVEL_ORDER}
    for document in documents:
        by_level[document.level].append(document)

    stats = []
    for level in LEVEL_ORDER:
        docs = by_level[level]
        if not docs:
            continue
        word_counts = []
        atesman_scores = []
        cetinkaya_scores = []
        ttrs = []
        for document in docs:
            words = word_tokens(document)
            word_counts.append(len(words))
            features = trad.extract_trad(document, config)
            atesman_scores.append(features.atesman_score)
            cetinkaya_scores.append(features.cetinkaya_score)
            types = len({turkish_lower(tok.surface) for tok in words})
            ttrs.append(types / len(words))
        counts = np.array(word_counts, dtype=float)
        stats.append({
            "level": level.name,
            "documents": len(docs),
            "words_mean": float(counts.mean()),
            "words_std": float(counts.std(ddof=1)) if len(docs) > 1 else 0.0,
            "atesman_mean": float(np.mean(atesman_scores)),
            "cetinkaya_mean": float(np.mean(cetinkaya_scores)),
            "ttr_mean": float(np.mean(ttrs)),
        })

    rows = [["level", "docs", "words_mean", "words_std", "atesman",
             "cetinkaya", "ttr"]]
    for entry in stats:
        rows.append([
            entry["level"], str(entry["documents"]),
            f"{entry['words_mean']:.2f}", f"{entry['words_std']:.2f}",
            f"{entry['atesman_mean']:.2f}", f"{entry['cetinkaya_mean']:.2f}",
            f"{entry['ttr_mean']:.2f}",
        ])
    text = _table(rows)
    sys.stdout.write(text)
    if args.out:
        out = _prepare_out(args)
        _write_json(out / "corpus_stats.json", {"levels": stats})
        registry.atomic_write_text(out / "corpus_stats.txt", text)
        _write_run_config(out, "corpus-stats", config, None)
    return 0


def cmd_extract(args) -> int:
    config = RunConfig.load(args.config)
    groups = _parse_groups(args.groups)
    _, documents = load_manifest(args.manifest)
    matrix = registry.extract_all(documents, config, groups,
                                  base_seed=args.seed, jobs=args.jobs)
    out = _prepare_out(args)
    registry.write_matrix(matrix, out / "features.csv", config=config,
                          seed=args.seed)
    _write_run_config(out, "extract", config, args.seed, {"groups": groups})
    log.info("wrote %d x %d matrix", len(matrix.rows), len(matrix.schema))
    return 0


def _report_text(report) -> str:
    rows = [["fold", "acc", "prec", "rec", "f1"]]
    for fold in report.folds:
        rows.append([str(fold.index), _fmt(fold.accuracy),
                     _fmt(fold.macro_precision), _fmt(fold.macro_recall),
                     _fmt(fold.macro_f1)])
    rows.append(["mean", _fmt(report.accuracy), _fmt(report.macro_precision),
                 _fmt(report.macro_recall), _fmt(report.macro_f1)])
    text = (f"model: {report.model_kind}  k: {report.k}  seed: {report.seed}\n"
            f"groups: {','.join(report.groups)}\n"
            f"params: {json.dumps(report.params, sort_keys=True)}\n\n")
    text += _table(rows)
    text += "\npooled confusion (rows = true, cols = predicted):\n"
    header = ["", *(level.name for level in LEVEL_ORDER)]
    cm_rows = [header]
    for level, row in zip(LEVEL_ORDER, report.pooled_confusion):
        cm_rows.append([level.name, *(str(cell) for cell in row)])
    text += _table(cm_rows)
    text += f"pooled accuracy: {_fmt(report.pooled_accuracy)}\n"
    return text


def _run_search_if_asked(args, matrix, kind, out: Path):
    if args.search is None:
        return _parse_params(args.params, kind), None
    if args.params is not None:
        raise ConfigError("--params and --search are mutually exclusive")
    result = hyperparameter_search(matrix, kind, budget=args.search,
                                   seed=args.seed)
    _write_json(out / "search_trace.json", result.as_dict())
    return dict(result.best_params), result


def cmd_cv(args) -> int:
    matrix = registry.read_matrix(args.matrix)
    if args.groups is not None:
        matrix = matrix.group_subset(_parse_groups(args.groups))
    _refuse_leaky_cv(matrix)
    out = _prepare_out(args)
    params, search = _run_search_if_asked(args, matrix, args.model, out)
    report = evaluate(matrix, args.model, params, k=args.k, seed=args.seed)
    _write_json(out / "cv_report.json", report.as_dict())
    registry.atomic_write_text(out / "cv_report.txt", _report_text(report))
    extra = {"model": args.model, "k": args.k, "params": params,
             "groups": list(dict.fromkeys(matrix.schema.groups))}
    if search is not None:
        extra["search_budget"] = args.search
    _write_run_config(out, "cv", None, args.seed, extra)
    sys.stdout.write(_report_text(report))
    return 0


def cmd_train(args) -> int:
    matrix = registry.read_matrix(args.matrix)
    if args.groups is not None:
        matrix = matrix.group_subset(_parse_groups(args.groups))
    out = _prepare_out(args)
    params, search = _run_search_if_asked(args, matrix, args.model, out)
    model = fit_on_matrix(matrix, args.model, params, seed=args.seed)
    save_model(model, out / "model.json")
    extra = {"model": args.model, "params": params}
    if search is not None:
        extra["search_budget"] = args.search
    _write_run_config(out, "train", None, args.seed, extra)
    log.info("wrote %s", out / "model.json")
    return 0


def _probabilities(model, X: np.ndarray) -> np.ndarray:
    if isinstance(model, RandomForestModel):
        return model.votes(X) / model.n_trees
    return model.predict_proba(X)


def _matrix_in_model_order(model, matrix) -> np.ndarray:
    check_model_schema(model, matrix.schema)
    means = registry.impute_means(matrix)
    X = registry.apply_impute(matrix.values_array(), matrix.absent_array(),
                              means)
    order = [matrix.schema.index_of(name) for name in model.feature_names]
    return X[:, order]


def cmd_predict(args) -> int:
    model = load_model(args.model)
    if (args.matrix is None) == (args.conllu is None):
        raise ConfigError("give exactly one of --matrix or --conllu")
    if args.matrix is not None:
        matrix = registry.read_matrix(args.matrix)
        doc_ids = matrix.doc_ids
        X = _matrix_in_model_order(model, matrix)
    else:
        groups = sorted({name.split(".", 1)[0]
                         for name in model.feature_names})
        if registry.HYBRID_GROUP in groups:
            raise SoftLabelError(
                "hybrid models need a fused matrix; single-document "
                "prediction cannot supply soft labels")
        config = RunConfig.load(args.config)
        doc_id = Path(args.conllu).stem
        document = load_document(doc_id, None, args.conllu, args.trees)
        values, mask, _ = registry.extract_vector(document, config, groups,
                                                  base_seed=args.seed)
        schema = registry.build_schema(groups)
        vector = np.array(values, dtype=float)
        masked = np.array(mask, dtype=bool)
        if masked.any():
            log.warning("imputing 0 for absent features: %s",
                        ", ".join(np.array(schema.names)[masked]))
            vector[masked] = 0.0
        order = [schema.index_of(name) for name in model.feature_names]
        X = vector[order][None, :]
        doc_ids = [doc_id]

    probs = _probabilities(model, X)
    preds = model.predict(X)
    lines = ["doc_id,predicted_level,p_ele,p_int,p_adv"]
    for doc_id, pred, row in zip(doc_ids, preds, probs):
        cells = [doc_id, ReadingLevel(int(pred)).name]
        cells.extend(repr(float(p)) for p in row)
        lines.append(",".join(cells))
    out = _prepare_out(args)
    registry.atomic_write_text(out / "predictions.csv",
                               "\n".join(lines) + "\n")
    _write_run_config(out, "predict", None, args.seed, {"model_kind": model.kind})
    for line in lines[1:]:
        sys.stdout.write(line + "\n")
    return 0


def cmd_importance(args) -> int:
    model = load_model(args.model)
    out = _prepare_out(args)
    if args.method == "mdi":
        if not isinstance(model, RandomForestModel):
            raise ConfigError("MDI importance needs a random forest model")
        report = mdi_importance(model)
        scores = report.ranked("mdi")
    else:
        if args.matrix is None:
            raise ConfigError("permutation importance needs --matrix")
        matrix = registry.read_matrix(args.matrix)
        X = _matrix_in_model_order(model, matrix)
        report = permutation_importance(model, X, matrix.levels_array(),
                                        repeats=args.repeats, seed=args.seed)
        scores = report.ranked("permutation")
    _write_json(out / "importance.json", report.as_dict())
    lines = ["feature,score"]
    lines.extend(f"{name},{repr(score)}" for name, score in scores)
    registry.atomic_write_text(out / "importance.csv", "\n".join(lines) + "\n")
    _write_run_config(out, "importance", None, args.seed,
                      {"method": args.method, "repeats": args.repeats})
    for name, score in scores[:10]:
        sys.stdout.write(f"{name}\t{_fmt(score)}\n")
    return 0


def cmd_correlate(args) -> int:
    matrix = registry.read_matrix(args.matrix)
    report = spearman_correlation(matrix)
    out = _prepare_out(args)
    _write_json(out / "correlation.json", report.as_dict())
    top = report.entries if args.top == 0 else report.entries[:args.top]
    rows = [["rank", "feature", "rho"]]
    for rank, entry in enumerate(top, start=1):
        rho = f"{entry.rho:+.4f}" + (" (zero variance)"
                                     if entry.zero_variance else "")
        rows.append([str(rank), entry.feature, rho])
    text = _table(rows)
    registry.atomic_write_text(out / "correlation.txt", text)
    _write_run_config(out, "correlate", None, None, {"top": args.top})
    sys.stdout.write(text)
    return 0


def cmd_fuse(args) -> int:
    matrix = registry.read_matrix(args.matrix)
    soft = hybrid.load_soft_labels(args.soft_labels)
    fused = hybrid.fuse(matrix, soft)
    out = _prepare_out(args)
    registry.write_matrix(fused, out / "features.csv")
    _write_run_config(out, "fuse", None, None,
                      {"soft_label_provenance": soft.provenance})
    log.info("fused matrix has %d columns", len(fused.schema))
    return 0


def cmd_make_toy(args) -> int:
    out = _prepare_out(args)
    manifest = toydata.generate_toy_corpus(out, args.docs_per_level)
    _write_run_config(out, "make-toy", None, None,
                      {"docs_per_level": args.docs_per_level})
    log.info("wrote %s", manifest)
    return 0


# --- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trread",
        description="Readability assessment for Turkish text: handcrafted "
                    "features over annotated corpora, from-scratch "
                    "classifiers, and reproducible evaluation.")
    parser.add_argument("--verbose", action="store_true",
                        help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    stats = sub.add_parser("corpus-stats",
                           help="per-level descriptive statistics")
    stats.add_argument("manifest")
    stats.add_argument("--config")
    stats.add_argument("--out", help="also write JSON and text reports here")
    stats.set_defaults(func=cmd_corpus_stats)

    extract = sub.add_parser("extract", help="feature matrix from a manifest")
    extract.add_argument("manifest")
    extract.add_argument("--out", required=True)
    extract.add_argument("--groups",
                         help="comma list, e.g. TRAD,LXSM (default: all)")
    extract.add_argument("--config")
    extract.add_argument("--seed", type=int, default=0)
    extract.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    extract.set_defaults(func=cmd_extract)

    cv = sub.add_parser("cv", help="stratified k-fold evaluation")
    cv.add_argument("matrix")
    cv.add_argument("--out", required=True)
    cv.add_argument("--model", choices=MODEL_KINDS, default="rf")
    cv.add_argument("--k", type=int, default=10)
    cv.add_argument("--seed", type=int, default=0)
    cv.add_argument("--groups", help="restrict to these feature groups")
    cv.add_argument("--params", help="model parameters as a JSON object")
    cv.add_argument("--search", type=int, metavar="BUDGET",
                    help="two-stage hyperparameter search before CV")
    cv.set_defaults(func=cmd_cv)

    train = sub.add_parser("train", help="fit a model on the full matrix")
    train.add_argument("matrix")
    train.add_argument("--out", required=True)
    train.add_argument("--model", choices=MODEL_KINDS, default="rf")
    train.add_argument("--seed", type=int, default=0)
    train.add_argument("--groups")
    train.add_argument("--params")
    train.add_argument("--search", type=int, metavar="BUDGET")
    train.set_defaults(func=cmd_train)

    predict = sub.add_parser("predict",
                             help="levels and probabilities from a model")
    predict.add_argument("--model", required=True)
    predict.add_argument("--matrix")
    predict.add_argument("--conllu", help="single annotated document")
    predict.add_argument("--trees", help="constituency trees for --conllu")
    predict.add_argument("--config")
    predict.add_argument("--seed", type=int, default=0)
    predict.add_argument("--out", required=True)
    predict.set_defaults(func=cmd_predict)

    importance = sub.add_parser("importance", help="feature importance")
    importance.add_argument("--model", required=True)
    importance.add_argument("--matrix",
                            help="held-out rows (permutation method)")
    importance.add_argument("--method", choices=("mdi", "permutation"),
                            default="mdi")
    importance.add_argument("--repeats", type=int, default=10)
    importance.add_argument("--seed", type=int, default=0)
    importance.add_argument("--out", required=True)
    importance.set_defaults(func=cmd_importance)

    correlate = sub.add_parser("correlate",
                               help="feature-level rank correlation")
    correlate.add_argument("matrix")
    correlate.add_argument("--top", type=int, default=10,
                           help="rows in the text table (0 = all)")
    correlate.add_argument("--out", required=True)
    correlate.set_defaults(func=cmd_correlate)

    fuse = sub.add_parser("fuse", help="append soft-label columns")
    fuse.add_argument("matrix")
    fuse.add_argument("soft_labels")
    fuse.add_argument("--out", required=True)
    fuse.set_defaults(func=cmd_fuse)

    toy = sub.add_parser("make-toy", help="write the synthetic toy corpus")
    toy.add_argument("--out", required=True)
    toy.add_argument("--docs-per-level", type=int, default=10)
    toy.set_defaults(func=cmd_make_toy)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except TrreadError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
