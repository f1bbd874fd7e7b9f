"""Command-line entry point.

    groundgate corpus ingest --source squad_v2|newsqa|beir --in <paths> --out <file>
    groundgate corpus split --in <file> --ratios R R R --seed N --out-dir <dir>
    groundgate corpus synthesize --scheme containment|relational --n N --out <file>
    groundgate eval run --corpus <file> --backend <id> --seeds 0..4 --out <dir>
    groundgate cost estimate --profile <file>
    groundgate cost breakeven --ft X --enc Y --llm Z
    groundgate cost ledger --check
    groundgate gateway serve --config <file>
    groundgate judge sweep --corpus <file> --endpoint <url> --model <id> --domain qa|ir
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import costmodel
from .classifiers import EmbeddedClassifier, EndpointClassifier, LexicalOverlapClassifier
from .corpus import (
    DatasetDescriptor,
    build_containment_pairs,
    build_relational_pairs,
    build_squad_style_document,
    load_newsqa,
    load_squad_v2,
    parse_beir,
    read_pairs,
    stratified_split,
    write_pairs,
)
from .errors import GroundgateError
from .evaluation import run_eval, write_reports
from .gateway import GatewayConfig, build_gateway, serve
from .judge import ChatEndpoint, SweepPolicy, sweep, templates_for_domain


def _parse_seeds(text: str) -> list[int]:
    """Accept '0..4' ranges or comma lists like '0,1,2'."""
    if ".." in text:
        lo, hi = text.split("..", maxsplit=1)
        return list(range(int(lo), int(hi) + 1))
    return [int(part) for part in text.split(",") if part != ""]


def _build_backend(spec: str, threshold: float):
    if spec == "lexical":
        return LexicalOverlapClassifier(threshold=threshold)
    if spec.startswith("endpoint="):
        return EndpointClassifier(endpoint_url=spec.split("=", 1)[1], threshold=threshold)
    if spec.startswith("embedded="):
        return EmbeddedClassifier(artifact_dir=spec.split("=", 1)[1], threshold=threshold)
    raise SystemExit(
        f"unknown backend {spec!r}; use lexical, endpoint=<url>, or embedded=<dir>")


# -- corpus ------------------------------------------------------------------

def _cmd_corpus_ingest(args: argparse.Namespace) -> int:
    if args.source == "squad_v2":
        if len(args.inputs) != 1:
            raise SystemExit("squad_v2 ingestion takes exactly one input file")
        pairs = load_squad_v2(args.inputs[0], split=args.split)
    elif args.source == "newsqa":
        if len(args.inputs) != 1:
            raise SystemExit("newsqa ingestion takes exactly one input file")
        pairs, report = load_newsqa(args.inputs[0], split=args.split)
        print(f"newsqa: read {report.read}, emitted {report.emitted}, "
              f"skipped {report.skipped} {dict(report.reasons)}")
    elif args.source == "beir":
        if len(args.inputs) != 3:
            raise SystemExit("beir ingestion takes corpus.jsonl queries.jsonl qrels.tsv")
        descriptor = DatasetDescriptor(
            source=args.dataset,
            corpus_path=args.inputs[0],
            queries_path=args.inputs[1],
            qrels_path=args.inputs[2],
            negative_ratio=args.negative_ratio,
            relevance_threshold=args.threshold,
            seed=args.seed,
        )
        pairs = parse_beir(descriptor, split=args.split)
    else:
        raise SystemExit(f"unknown source {args.source!r}")
    write_pairs(pairs, args.out)
    print(f"wrote {len(pairs)} pairs to {args.out}")
    return 0


def _cmd_corpus_split(args: argparse.Namespace) -> int:
    pairs = read_pairs(args.input)
    splits = stratified_split(pairs, args.ratios, seed=args.seed)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, subset in splits.items():
        path = out_dir / f"{name}.jsonl"
        write_pairs(subset, path)
        print(f"{name}: {len(subset)} pairs -> {path}")
    return 0


def _cmd_corpus_synthesize(args: argparse.Namespace) -> int:
    if args.format == "squad_v2":
        document = build_squad_style_document(args.n, seed=args.seed)
        Path(args.out).write_text(json.dumps(document, ensure_ascii=False, indent=1),
                                  encoding="utf-8")
        print(f"wrote squad_v2-format document with {args.n} questions to {args.out}")
        return 0
    if args.scheme == "containment":
        pairs = build_containment_pairs(args.n, seed=args.seed, split=args.split)
    else:
        pairs = build_relational_pairs(args.n, seed=args.seed, split=args.split)
    write_pairs(pairs, args.out)
    print(f"wrote {len(pairs)} synthetic pairs to {args.out}")
    return 0


# -- eval ----------------------------------------------------------------------

def _cmd_eval_run(args: argparse.Namespace) -> int:
    pairs = read_pairs(args.corpus)
    classifier = _build_backend(args.backend, args.threshold)
    report = run_eval(pairs, classifier, seeds=_parse_seeds(args.seeds))
    paths = write_reports(report, args.out)
    print(f"accuracy {report.mean:.4f} +/- {report.std:.4f} over seeds {report.seeds}")
    print(f"reports: {paths['json']} {paths['markdown']}")
    return 0


# -- cost ----------------------------------------------------------------------

def _cmd_cost_estimate(args: argparse.Namespace) -> int:
    payload = json.loads(Path(args.profile).read_text("utf-8"))
    profile = costmodel.ModelCostProfile(**payload)
    print(json.dumps(costmodel.estimate_report(profile), indent=2, sort_keys=True))
    return 0


def _cmd_cost_breakeven(args: argparse.Namespace) -> int:
    queries = costmodel.breakeven_queries(args.ft, args.enc, args.llm)
    print(f"breakeven after {queries:.1f} gated queries")
    return 0


def _cmd_cost_ledger(args: argparse.Namespace) -> int:
    entries = costmodel.load_ledger(args.file)
    if args.check:
        report = costmodel.check_ledger(entries)
        for row in report:
            ratio = "n/a" if row["ratio"] is None else f"{row['ratio']:.2f}"
            print(f"{row['model']:<28} ratio={ratio:<10} {row['status']}")
        print(costmodel.amortization_note(entries))
    else:
        print(costmodel.ledger_to_json(entries))
    return 0


# -- gateway ---------------------------------------------------------------------

def _cmd_gateway_serve(args: argparse.Namespace) -> int:
    config = GatewayConfig.from_file(args.config)
    serve(build_gateway(config), host=args.host, port=args.port)
    return 0


# -- judge -----------------------------------------------------------------------

def _cmd_judge_sweep(args: argparse.Namespace) -> int:
    pairs = read_pairs(args.corpus)
    templates = templates_for_domain(args.domain)
    if args.templates:
        wanted = set(args.templates.split(","))
        templates = [t for t in templates if t.id in wanted]
    client = ChatEndpoint(args.endpoint, args.model)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    policy = SweepPolicy(unparseable=args.unparseable, concurrency=args.concurrency)
    matrix = sweep(templates, client, pairs, log_path=out_dir / "responses.jsonl",
                   policy=policy, matrix_path=out_dir / "matrix.json")
    for template_id, models in sorted(matrix.items()):
        for model_id, cell in sorted(models.items()):
            acc = "n/a" if cell["accuracy"] is None else f"{cell['accuracy']:.4f}"
            print(f"{template_id} {model_id}: accuracy={acc} n={cell['n']} "
                  f"unparseable={cell['unparseable']}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="groundgate", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    top = parser.add_subparsers(dest="command", required=True)

    corpus = top.add_parser("corpus", help="build and manage groundedness corpora")
    corpus_sub = corpus.add_subparsers(dest="subcommand", required=True)

    ingest = corpus_sub.add_parser("ingest", help="convert a source dataset")
    ingest.add_argument("--source", required=True, choices=["squad_v2", "newsqa", "beir"])
    ingest.add_argument("--in", dest="inputs", nargs="+", required=True)
    ingest.add_argument("--out", required=True)
    ingest.add_argument("--split", default="train")
    ingest.add_argument("--dataset", default="trec_covid",
                        choices=["trec_covid", "touche"],
                        help="source tag for beir-format inputs")
    ingest.add_argument("--negative-ratio", type=float, default=1.0)
    ingest.add_argument("--threshold", type=int, default=1,
                        help="qrel grade counted as grounded (beir only)")
    ingest.add_argument("--seed", type=int, default=0)
    ingest.set_defaults(func=_cmd_corpus_ingest)

    split = corpus_sub.add_parser("split", help="stratified train/dev/test split")
    split.add_argument("--in", dest="input", required=True)
    split.add_argument("--ratios", type=float, nargs=3, default=[0.8, 0.1, 0.1])
    split.add_argument("--seed", type=int, default=0)
    split.add_argument("--out-dir", required=True)
    split.set_defaults(func=_cmd_corpus_split)

    synthesize = corpus_sub.add_parser("synthesize", help="deterministic synthetic corpora")
    synthesize.add_argument("--scheme", choices=["containment", "relational"],
                            default="containment")
    synthesize.add_argument("--format", choices=["canonical", "squad_v2"],
                            default="canonical")
    synthesize.add_argument("--n", type=int, required=True)
    synthesize.add_argument("--seed", type=int, default=0)
    synthesize.add_argument("--split", default="train")
    synthesize.add_argument("--out", required=True)
    synthesize.set_defaults(func=_cmd_corpus_synthesize)

    eval_cmd = top.add_parser("eval", help="evaluate a backend on a corpus")
    eval_sub = eval_cmd.add_subparsers(dest="subcommand", required=True)
    run = eval_sub.add_parser("run")
    run.add_argument("--corpus", required=True)
    run.add_argument("--backend", default="lexical",
                     help="lexical | endpoint=<url> | embedded=<dir>")
    run.add_argument("--threshold", type=float, default=0.5)
    run.add_argument("--seeds", default="0..4")
    run.add_argument("--out", required=True)
    run.set_defaults(func=_cmd_eval_run)

    cost = top.add_parser("cost", help="FLOP estimates and amortization")
    cost_sub = cost.add_subparsers(dest="subcommand", required=True)
    estimate = cost_sub.add_parser("estimate")
    estimate.add_argument("--profile", required=True)
    estimate.set_defaults(func=_cmd_cost_estimate)
    breakeven = cost_sub.add_parser("breakeven")
    breakeven.add_argument("--ft", type=float, required=True)
    breakeven.add_argument("--enc", type=float, required=True)
    breakeven.add_argument("--llm", type=float, required=True)
    breakeven.set_defaults(func=_cmd_cost_breakeven)
    ledger = cost_sub.add_parser("ledger")
    ledger.add_argument("--check", action="store_true")
    ledger.add_argument("--file", default=None)
    ledger.set_defaults(func=_cmd_cost_ledger)

    gateway = top.add_parser("gateway", help="run the gate service")
    gateway_sub = gateway.add_subparsers(dest="subcommand", required=True)
    serve_cmd = gateway_sub.add_parser("serve")
    serve_cmd.add_argument("--config", required=True)
    serve_cmd.add_argument("--host", default="127.0.0.1")
    serve_cmd.add_argument("--port", type=int, default=8080)
    serve_cmd.set_defaults(func=_cmd_gateway_serve)

    judge = top.add_parser("judge", help="zero-shot judge sweeps")
    judge_sub = judge.add_subparsers(dest="subcommand", required=True)
    sweep_cmd = judge_sub.add_parser("sweep")
    sweep_cmd.add_argument("--corpus", required=True)
    sweep_cmd.add_argument("--endpoint", required=True)
    sweep_cmd.add_argument("--model", required=True)
    sweep_cmd.add_argument("--domain", choices=["qa", "ir"], default="qa")
    sweep_cmd.add_argument("--templates", default="",
                           help="comma-separated template ids (default: whole domain)")
    sweep_cmd.add_argument("--unparseable", choices=["wrong", "skip", "retry"],
                           default="wrong")
    sweep_cmd.add_argument("--concurrency", type=int, default=1)
    sweep_cmd.add_argument("--out", required=True)
    sweep_cmd.set_defaults(func=_cmd_judge_sweep)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GroundgateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
