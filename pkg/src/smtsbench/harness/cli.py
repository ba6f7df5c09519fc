"""Command-line interface for the benchmark harness."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import ExperimentConfig, load_config
from .io import load_labeled_csv, write_dataset_csv
from .report import report
from .runner import build_datasets, execute


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="TOML experiment configuration")
    parser.add_argument("--seed", type=int, help="master seed override")
    parser.add_argument("--replicates", type=int, help="replicate count override")
    parser.add_argument("--out", help="output directory override")
    parser.add_argument("--threads", type=int, help="worker thread count override")


def _config_from(args: argparse.Namespace) -> ExperimentConfig:
    overrides = {
        "seed": args.seed,
        "replicates": args.replicates,
        "out_dir": args.out,
        "threads": args.threads,
    }
    if args.config:
        return load_config(args.config, **overrides)
    return ExperimentConfig(**{k: v for k, v in overrides.items() if v is not None})


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="smtsbench",
        description="Synthetic smart-meter time-series clustering benchmark",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write scenario datasets as CSV + sidecar JSON")
    _add_common(p)

    p = sub.add_parser("stage1", help="1NN accuracy screening of similarity paradigms")
    _add_common(p)

    p = sub.add_parser("stage2", help="clustering evaluation of method combinations")
    _add_common(p)

    p = sub.add_parser("sweep", help="run one scenario sweep")
    p.add_argument(
        "kind",
        choices=("noise", "size", "kcount", "balance", "outliers", "separation", "emulate_real"),
    )
    _add_common(p)

    p = sub.add_parser("validate", help="check a labeled dataset CSV")
    p.add_argument("path", help="dataset CSV (id,label,v0..v47)")

    p = sub.add_parser("report", help="aggregate results.csv into tables and figures")
    _add_common(p)
    p.add_argument("--metric", help="metric to summarize (default: ARI, else acc_overall)")

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)

    if args.command == "validate":
        dataset = load_labeled_csv(args.path)
        dataset.validate()
        k = dataset.meta.get("k", len(set(dataset.labels.tolist()) - {-1}))
        print(f"OK: {len(dataset.series)} series, {k} clusters, 48 samples each")
        return 0

    config = _config_from(args)

    if args.command == "generate":
        out_dir = Path(config.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        for entry in build_datasets(config):
            path = out_dir / f"{entry['scenario']}_{entry['index']:03d}.csv"
            write_dataset_csv(path, entry["dataset"])
            print(f"wrote {path}")
        return 0

    if args.command in ("stage1", "stage2"):
        path = execute(args.command, config)
        print(f"wrote {path}")
        return 0

    if args.command == "sweep":
        path = execute("sweep", config, sweep_kind=args.kind)
        print(f"wrote {path}")
        return 0

    if args.command == "report":
        fig_dir = report(config.out_dir, metric=args.metric)
        print(f"wrote {fig_dir}")
        return 0

    return 2


if __name__ == "__main__":
    sys.exit(main())
