"""Command-line interface.

Subcommands: prepare, translate, evaluate, stats, sample, sync, serve.
Exit codes: 0 success, 1 data/runtime errors, 2 usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .catalog import (
    KINDS,
    FormatConfig,
    clean_and_split,
    load_catalog,
    load_ontology,
    load_recipes,
    save_catalog,
    save_ontology_catalog,
)
from .config import AppConfig, load_config, override
from .errors import RuleBridgeError
from .evaluation import (
    compare_methods,
    dataset_stats,
    load_annotations,
    render_summary_table,
    sample_for_annotation,
    score_method,
)
from .formats import batch_to_json, dumps_canonical, result_to_dict
from .pipeline import METHODS, sort_key_value, translate_batch
from .rulestore import RemoteContainerClient, RuleStore, sync_remote

PROG = "rulebridge"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=PROG, description="Translate proprietary "
                                     "trigger/action names to high-level ontology terms.")
    parser.add_argument("--config", help="path to a JSON config file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prepare", help="build catalog files from a recipe dump and ontology")
    p.add_argument("--recipes", required=True)
    p.add_argument("--ontology", required=True)
    p.add_argument("--ontology-format", default="ontology-xml",
                   choices=("ontology-xml", "prepared-json"))
    p.add_argument("--trigger-column")
    p.add_argument("--action-column")
    p.add_argument("--out", help="output directory (default: configured catalog dir)")

    p = sub.add_parser("translate", help="translate one term or the whole catalog")
    p.add_argument("--name", help="single source term")
    p.add_argument("--kind", choices=KINDS)
    p.add_argument("--batch", action="store_true", help="translate every catalog term")
    p.add_argument("--method", choices=METHODS)
    p.add_argument("--top", type=int)
    p.add_argument("--threshold", type=float)
    p.add_argument("--vectors", help="word-vector file path")
    p.add_argument("--catalog-dir")
    p.add_argument("--out", help="write JSON here instead of stdout (batch mode)")
    p.add_argument("--legacy-shapes", action="store_true",
                   help="render embedding results in the keyed-object shape")

    p = sub.add_parser("evaluate", help="score methods against a gold annotation file")
    p.add_argument("--annotations", required=True)
    p.add_argument("--methods", default="all", help="'all' or comma-separated method names")
    p.add_argument("--threshold", type=float)
    p.add_argument("--vectors")
    p.add_argument("--catalog-dir")
    p.add_argument("--json", action="store_true", help="emit JSON instead of the table")

    p = sub.add_parser("stats", help="dataset statistics for a recipe dump")
    p.add_argument("--recipes", required=True)
    p.add_argument("--trigger-column")
    p.add_argument("--action-column")

    p = sub.add_parser("sample", help="draw a reproducible annotation sample")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--catalog-dir")
    p.add_argument("--out", required=True)

    p = sub.add_parser("sync", help="reconcile the local rule store with a remote container")
    p.add_argument("--remote", help="container base URL")
    p.add_argument("--token", help="bearer token")
    p.add_argument("--store")

    p = sub.add_parser("serve", help="run the HTTP API")
    p.add_argument("--host")
    p.add_argument("--port", type=int)
    p.add_argument("--vectors")
    p.add_argument("--catalog-dir")

    return parser


def _format_config(args) -> FormatConfig | None:
    overrides = {}
    if getattr(args, "trigger_column", None):
        overrides["trigger_column"] = args.trigger_column
    if getattr(args, "action_column", None):
        overrides["action_column"] = args.action_column
    return FormatConfig(**overrides) if overrides else None


def _engine(config: AppConfig):
    from .service import TranslationEngine

    return TranslationEngine.from_config(config)


def _score_display(method: str, candidate) -> str:
    scoreless = (candidate.embedding_value is None
                 and candidate.entailment_triple is None
                 and candidate.combined_pct is None)
    return "pinned" if scoreless else f"{sort_key_value(method, candidate):.6f}"


def cmd_prepare(args, config: AppConfig) -> int:
    raw = load_recipes(args.recipes, _format_config(args))
    catalog, report = clean_and_split(raw)
    ontology = load_ontology(args.ontology, format=args.ontology_format)

    out_dir = Path(args.out or config.catalog_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    save_catalog(catalog, out_dir / "catalog.json")
    save_ontology_catalog(ontology, out_dir / "ontology.json")

    stats = dataset_stats(raw, catalog)
    print(f"recipes: {stats.total_recipes}")
    print(f"distinct triggers: {stats.distinct_triggers} (once-only {stats.once_only_triggers})")
    print(f"distinct actions: {stats.distinct_actions} (once-only {stats.once_only_actions})")
    print(f"ontology terms: {len(ontology.triggers)} triggers, {len(ontology.actions)} actions")
    dropped = len(report.dropped_trigger_rows) + len(report.dropped_action_rows)
    if dropped:
        print(f"dropped {dropped} empty-after-cleaning names")
    print(f"wrote {out_dir / 'catalog.json'} and {out_dir / 'ontology.json'}")
    return 0


def cmd_translate(args, config: AppConfig) -> int:
    config = override(
        config,
        method=args.method,
        top_n=args.top,
        threshold=args.threshold,
        vectors_path=args.vectors,
        catalog_dir=args.catalog_dir,
    )
    engine = _engine(config)

    if args.batch:
        outcome = translate_batch(
            engine.catalog,
            engine.ontology,
            engine.pipeline_config(),
            embed_scorer=engine.embed_scorer,
            entail_scorer=engine.entail_scorer,
        )
        text = batch_to_json(outcome.results, legacy_shapes=args.legacy_shapes)
        if args.out:
            Path(args.out).write_text(text, encoding="utf-8")
            print(f"wrote {len(outcome.results)} results to {args.out}")
        else:
            sys.stdout.write(text)
        for error in outcome.errors:
            print(f"error: {error.kind} {error.source_name!r}: {error.message}", file=sys.stderr)
        return 1 if outcome.errors else 0

    if not args.name or not args.kind:
        print(f"{PROG} translate: --name and --kind are required without --batch",
              file=sys.stderr)
        return 2

    result = engine.translate(args.name, args.kind)
    if args.out:
        Path(args.out).write_text(dumps_canonical(result_to_dict(result)), encoding="utf-8")
        return 0
    if result.no_result:
        print("No Result")
        if result.diagnostic:
            print(f"  ({result.diagnostic})")
        return 0
    for candidate in result.presented():
        print(f"{candidate.rank}. {candidate.candidate_name}  "
              f"{_score_display(result.method, candidate)}")
    return 0


def cmd_evaluate(args, config: AppConfig) -> int:
    config = override(
        config,
        threshold=args.threshold,
        vectors_path=args.vectors,
        catalog_dir=args.catalog_dir,
    )
    engine = _engine(config)
    annotations = load_annotations(args.annotations, engine.ontology)
    methods = list(METHODS) if args.methods == "all" else args.methods.split(",")
    for method in methods:
        if method not in METHODS:
            print(f"{PROG} evaluate: unknown method {method!r}", file=sys.stderr)
            return 2

    summaries = []
    for method in methods:
        results = [
            engine.translate(a.source_name, a.kind, method=method) for a in annotations
        ]
        summaries.append(score_method(results, annotations, method))

    ranked = compare_methods(summaries) if len(summaries) > 1 else summaries
    if args.json:
        payload = [
            {
                "method": s.method,
                "first_result": s.first_result,
                "top_five": s.top_five,
                "no_result": s.no_result,
                "ambiguous_excluded": s.ambiguous_excluded,
            }
            for s in ranked
        ]
        sys.stdout.write(dumps_canonical(payload))
    else:
        print(render_summary_table(ranked))
    return 0


def cmd_stats(args, config: AppConfig) -> int:
    raw = load_recipes(args.recipes, _format_config(args))
    catalog, _report = clean_and_split(raw)
    stats = dataset_stats(raw, catalog)
    sys.stdout.write(dumps_canonical(stats.to_dict()))
    return 0


def cmd_sample(args, config: AppConfig) -> int:
    config = override(config, catalog_dir=args.catalog_dir)
    catalog = load_catalog(Path(config.catalog_dir) / "catalog.json")
    terms = sample_for_annotation(catalog, n=args.n, seed=args.seed, kind=args.kind)
    # worksheet stubs: the annotator replaces the null label before evaluate
    lines = [
        json.dumps(
            {"source_name": t.name, "kind": t.kind, "label": None, "best_match": None},
            ensure_ascii=False,
        )
        for t in terms
    ]
    Path(args.out).write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {len(terms)} annotation stubs to {args.out}")
    return 0


def cmd_sync(args, config: AppConfig) -> int:
    config = override(config, remote_container=args.remote, remote_token=args.token,
                      store_path=args.store)
    if not config.remote_container:
        print(f"{PROG} sync: no remote container configured", file=sys.stderr)
        return 2
    store = RuleStore(config.store_path)
    client = RemoteContainerClient(config.remote_container, token=config.remote_token)
    report = sync_remote(store, client)
    sys.stdout.write(dumps_canonical(report.to_dict()))
    return 0


def cmd_serve(args, config: AppConfig) -> int:
    config = override(config, host=args.host, port=args.port,
                      vectors_path=args.vectors, catalog_dir=args.catalog_dir)
    from .service import serve

    serve(config)
    return 0


_COMMANDS = {
    "prepare": cmd_prepare,
    "translate": cmd_translate,
    "evaluate": cmd_evaluate,
    "stats": cmd_stats,
    "sample": cmd_sample,
    "sync": cmd_sync,
    "serve": cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config(args.config)
        return _COMMANDS[args.command](args, config)
    except RuleBridgeError as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        report = getattr(exc, "report", None)
        if report is not None:
            print(json.dumps(report.to_dict()), file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
