"""Command line entry point: ``trannotate annotate --in DIR --out DIR``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import AnnotateError
from .job import AnnotationJob, annotate
from .pipeline import PIPELINES, RulePipeline


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trannotate",
        description="Annotate raw Turkish text corpora into CoNLL-U "
                    "with a manifest.")
    sub = parser.add_subparsers(dest="command", required=True)
    cmd = sub.add_parser(
        "annotate",
        help="annotate every <in>/{ELE,INT,ADV}/*.txt file")
    cmd.add_argument("--in", dest="input_dir", required=True,
                     help="corpus root with ELE/INT/ADV subdirectories")
    cmd.add_argument("--out", dest="output_dir", required=True,
                     help="output directory for docs/, manifest.csv, "
                          "metadata.json, errors.log")
    cmd.add_argument("--trees", action="store_true",
                     help="also emit shallow constituency trees")
    cmd.add_argument("--model", default=RulePipeline.NAME,
                     help="pipeline model identifier "
                          f"(available: {', '.join(sorted(PIPELINES))})")
    cmd.add_argument("--batch-size", type=int, default=16,
                     help="files read per batch")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    job = AnnotationJob(
        input_dir=Path(args.input_dir),
        output_dir=Path(args.output_dir),
        pipeline=args.model,
        batch_size=args.batch_size,
        emit_trees=args.trees,
    )
    try:
        result = annotate(job)
    except AnnotateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"annotated {len(result.documents)} documents "
          f"({len(result.skipped)} skipped) -> {result.manifest_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
