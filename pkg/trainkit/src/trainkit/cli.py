"""Command-line entry point.

    trainkit train --corpus train.jsonl --dev dev.jsonl --out <dir> [--base small]
    trainkit sweep --corpus train.jsonl --dev dev.jsonl --base <model> --seeds 0..4 --out <dir>
    trainkit export --artifact <dir>
    trainkit serve --artifact <dir> --port N
"""

from __future__ import annotations

import argparse
import json
import sys

from .export import ExportParityError, export_artifact
from .train import TrainConfig, TrainDiverged, run_sweep, train


def _parse_seeds(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", maxsplit=1)
        return list(range(int(lo), int(hi) + 1))
    return [int(part) for part in text.split(",") if part != ""]


def _config_from_args(args: argparse.Namespace) -> TrainConfig:
    return TrainConfig(
        base_model=args.base,
        learning_rate=args.lr,
        batch_size=args.batch_size,
        weight_decay=args.weight_decay,
        scheduler=args.scheduler,
        warmup_ratio=args.warmup_ratio,
        seed=args.seed,
        epochs=args.epochs,
    )


def _cmd_train(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    off_grid = config.off_grid_fields()
    if off_grid:
        print(f"note: off-grid fields {off_grid} (recorded in manifest)")
    try:
        artifact = train(config, args.corpus, args.dev, args.out)
    except TrainDiverged as exc:
        print(f"training diverged: {exc}", file=sys.stderr)
        return 1
    print(f"dev accuracy {artifact.manifest['dev_accuracy']:.4f}; "
          f"artifact at {artifact.directory}")
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    base = _config_from_args(args)
    report = run_sweep(base, args.corpus, args.dev, args.out,
                       seeds=_parse_seeds(args.seeds), max_configs=args.max_configs)
    print(f"{report['n_runs']} runs, {report['n_failed']} failed")
    if report["winner"]:
        winner = report["winner"]
        print(f"winner: seed {winner['seed']} config {winner['index']} "
              f"dev accuracy {winner['dev_accuracy']:.4f}")
    return 0


def _cmd_export(args: argparse.Namespace) -> int:
    try:
        report = export_artifact(args.artifact)
    except ExportParityError as exc:
        print(f"export rejected: {exc}", file=sys.stderr)
        print(json.dumps(exc.report, indent=2), file=sys.stderr)
        return 1
    print(f"export accepted: max deviation {report.max_deviation:.2e} "
          f"over {report.n_pairs} probe pairs")
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    from .serve import serve

    serve(args.artifact, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="trainkit", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_train_args(p):
        p.add_argument("--corpus", required=True, help="canonical train corpus")
        p.add_argument("--dev", default=None,
                       help="canonical dev corpus (default: 10 percent holdout of --corpus)")
        p.add_argument("--out", required=True)
        p.add_argument("--base", default="small")
        p.add_argument("--lr", type=float, default=2e-5)
        p.add_argument("--batch-size", type=int, default=16)
        p.add_argument("--weight-decay", type=float, default=0.01)
        p.add_argument("--scheduler", choices=["linear", "cosine"], default="linear")
        p.add_argument("--warmup-ratio", type=float, default=0.06)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--epochs", type=int, default=3)

    train_cmd = sub.add_parser("train", help="train one configuration")
    add_train_args(train_cmd)
    train_cmd.set_defaults(func=_cmd_train)

    sweep_cmd = sub.add_parser("sweep", help="hyperparameter grid sweep")
    add_train_args(sweep_cmd)
    sweep_cmd.add_argument("--seeds", default="0..4")
    sweep_cmd.add_argument("--max-configs", type=int, default=None,
                           help="cap grid points per seed (full grid is 72)")
    sweep_cmd.set_defaults(func=_cmd_sweep)

    export_cmd = sub.add_parser("export", help="TorchScript export with parity gate")
    export_cmd.add_argument("--artifact", required=True)
    export_cmd.set_defaults(func=_cmd_export)

    serve_cmd = sub.add_parser("serve", help="serve /v1/classify")
    serve_cmd.add_argument("--artifact", required=True)
    serve_cmd.add_argument("--host", default="127.0.0.1")
    serve_cmd.add_argument("--port", type=int, default=8081)
    serve_cmd.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
