"""Command-line entry points: ingest, disambiguate, sample, eval, curve, sweep, serve, synth."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import evaluation
from .corpus import (
    ExampleSet,
    extract_cooccurrence,
    parse_corpus,
    parse_tuples,
    serialize_corpus,
    serialize_tuples,
    split_folds,
    tuples_from_examples,
)
from .database import database_from_labeled, parse_seed_database
from .engine import EngineConfig, disambiguate
from .sampler import Strategy, build_sampler, gold_oracle, initialize_from_scratch, run_loop, serialize_history
from .synthetic import SyntheticConfig, generate_synthetic
from .thesaurus import load_thesaurus, serialize_thesaurus
from .vectors import build_vectors, serialize_vectors


def _read_lines(path: str):
    return Path(path).read_text(encoding="utf-8").splitlines()


def _load_corpus(path: str) -> ExampleSet:
    return parse_corpus(_read_lines(path))


def _engine_config(args, corpus: ExampleSet | None = None) -> EngineConfig:
    thesaurus = load_thesaurus(_read_lines(args.thesaurus))
    opts = dict(
        alpha=args.alpha,
        decision=args.decision,
        certainty_lambda=getattr(args, "lambda_", 0.5),
        smoothing_level=args.smoothing_level,
    )
    if args.similarity == "vsm":
        if getattr(args, "tuples", None):
            counts = parse_tuples(_read_lines(args.tuples))
        elif corpus is not None:
            counts = tuples_from_examples(corpus)
        else:
            raise SystemExit("vsm similarity needs --tuples or a corpus to derive them")
        return EngineConfig.vsm_backend(build_vectors(counts), thesaurus, **opts)
    return EngineConfig.thesaurus_backend(thesaurus, **opts)


def _add_engine_flags(parser: argparse.ArgumentParser, include_lambda: bool = True) -> None:
    parser.add_argument("--thesaurus", required=True, help="thesaurus TSV (code<TAB>word)")
    parser.add_argument("--similarity", choices=("thesaurus", "vsm"), default="thesaurus")
    parser.add_argument("--decision", choices=("weighted", "lexicographic"), default="lexicographic")
    parser.add_argument("--alpha", type=float, default=1.0)
    if include_lambda:
        parser.add_argument("--lambda", dest="lambda_", type=float, default=0.5)
    parser.add_argument("--smoothing-level", type=int, default=5)
    parser.add_argument("--tuples", help="co-occurrence TSV for the vsm backend")


def _add_strategy_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--strategy", choices=("tu", "uncertainty", "committee", "random"), default="tu")
    parser.add_argument("--k", type=int, default=1, help="k-best senses for training utility")
    parser.add_argument("--committee-size", type=int, default=2)
    parser.add_argument("--member-fraction", type=float, default=0.5)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--seed-db", help="seed database JSONL; omitted = from-scratch init")


def _build_state(args, corpus: ExampleSet):
    cfg = _engine_config(args, corpus)
    seed_db = None
    if args.seed_db:
        seed_db = parse_seed_database(_read_lines(args.seed_db))
    state = build_sampler(corpus, cfg, seed_db=seed_db, utility_k=args.k)
    oracle = gold_oracle(corpus)
    if seed_db is None:
        initialize_from_scratch(state, oracle, seed=args.seed)
    return state, oracle


def _make_oracle(args, corpus: ExampleSet):
    if args.oracle == "gold":
        return gold_oracle(corpus)
    import urllib.request

    def http_oracle(example):
        body = json.dumps(example.to_record()).encode("utf-8")
        request = urllib.request.Request(
            args.oracle_url, data=body, headers={"Content-Type": "application/json"}
        )
        with urllib.request.urlopen(request) as response:
            return json.loads(response.read())["sense"]

    return http_oracle


def cmd_ingest(args) -> int:
    summary: dict = {}
    corpus = _load_corpus(args.corpus)
    summary["examples"] = len(corpus)
    summary["verbs"] = corpus.verbs()
    summary["labeled"] = sum(1 for e in corpus if e.gold_sense is not None)
    if args.seed_db:
        db = parse_seed_database(_read_lines(args.seed_db))
        summary["seed_verbs"] = db.verbs()
        summary["seed_senses"] = {v: db.senses(v) for v in db.verbs()}
    if args.thesaurus:
        thesaurus = load_thesaurus(_read_lines(args.thesaurus))
        summary["thesaurus_words"] = len(thesaurus)
        summary["thesaurus_depth"] = thesaurus.depth
    if args.tagged:
        counts = extract_cooccurrence(_read_lines(args.tagged))
        summary["tuples"] = len(counts.counts)
        summary["tuple_tokens"] = counts.total()
        summary["skipped_pairs"] = counts.skipped_pairs
        if args.tuples_out:
            Path(args.tuples_out).write_text(serialize_tuples(counts), encoding="utf-8")
            summary["tuples_out"] = args.tuples_out
        if args.vectors_out:
            table = build_vectors(counts)
            Path(args.vectors_out).write_text(serialize_vectors(table), encoding="utf-8")
            summary["vectors_out"] = args.vectors_out
    print(json.dumps(summary, ensure_ascii=False, indent=2))
    return 0


def cmd_disambiguate(args) -> int:
    inputs = _load_corpus(args.corpus)
    if args.seed_db:
        db = parse_seed_database(_read_lines(args.seed_db))
    elif args.train_corpus:
        db = database_from_labeled(_load_corpus(args.train_corpus))
    else:
        raise SystemExit("disambiguate needs --seed-db or --train-corpus")
    train = _load_corpus(args.train_corpus) if args.train_corpus else inputs
    cfg = _engine_config(args, train)
    for example in inputs:
        report = disambiguate(cfg, db, example)
        print(json.dumps(report.to_dict(), ensure_ascii=False))
    return 0


def cmd_sample(args) -> int:
    corpus = _load_corpus(args.corpus)
    state, _ = _build_state(args, corpus)
    oracle = _make_oracle(args, corpus)
    strategy = Strategy(
        kind=args.strategy,
        seed=args.seed,
        k=args.k,
        committee_size=args.committee_size,
        member_fraction=args.member_fraction,
    )
    budget = args.budget if args.budget is not None else state.pool_size()
    records = run_loop(state, strategy, oracle, budget)
    text = serialize_history(records)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_eval(args) -> int:
    corpus = _load_corpus(args.corpus)
    thesaurus = load_thesaurus(_read_lines(args.thesaurus))
    report = evaluation.cross_validate(
        corpus,
        thesaurus,
        k=args.folds,
        seed=args.seed,
        alpha=args.alpha,
        decision=args.decision,
        certainty_lambda=args.lambda_,
        smoothing_level=args.smoothing_level,
        rb_theta=args.rb_theta,
        nb_level=args.nb_level,
        nb_pseudo=args.nb_pseudo,
    )
    if args.json:
        print(json.dumps(report, indent=2))
        return 0
    print("method\t" + "\t".join(f"fold{i}" for i in range(args.folds)) + "\tmean")
    for method in evaluation.CV_METHODS:
        fold_text = "\t".join(f"{v:.4f}" for v in report["per_fold"][method])
        print(f"{method}\t{fold_text}\t{report['mean'][method]:.4f}")
    return 0


def cmd_curve(args) -> int:
    corpus = _load_corpus(args.corpus)
    cfg = _engine_config(args, corpus)
    seeds = [int(s) for s in args.seeds.split(",")] if args.seeds else [args.seed]
    seed_db = parse_seed_database(_read_lines(args.seed_db)) if args.seed_db else None
    points = evaluation.learning_curve(
        corpus,
        cfg,
        args.strategy,
        seeds,
        init="seed-db" if seed_db is not None else "scratch",
        seed_db=seed_db,
        holdout_fraction=args.holdout_fraction,
        budget=args.budget,
        utility_k=args.k,
        committee_size=args.committee_size,
        member_fraction=args.member_fraction,
    )
    rows = evaluation.aggregate_curve(points)
    text = evaluation.serialize_curve(rows)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_sweep(args) -> int:
    corpus = _load_corpus(args.corpus)
    cfg = _engine_config(args, corpus)
    lambdas = [float(v) for v in args.lambdas.split(",")]
    thresholds = [float(v) for v in args.thresholds.split(",")]
    reports = []
    golds = []
    folds = split_folds(corpus, args.folds, args.seed)
    for index, fold in enumerate(folds):
        train = ExampleSet.concat(*(f for i, f in enumerate(folds) if i != index))
        db = database_from_labeled(train)
        for example in fold:
            reports.append(disambiguate(cfg, db, example))
            golds.append(example.gold_sense)
    rows = evaluation.sweep_lambda_grid(reports, golds, thresholds, lambdas)
    text = evaluation.serialize_sweep(rows)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import Session, create_app, mount_ui

    corpus = _load_corpus(args.corpus)
    state, _ = _build_state(args, corpus)
    strategy = Strategy(
        kind=args.strategy,
        seed=args.seed,
        k=args.k,
        committee_size=args.committee_size,
        member_fraction=args.member_fraction,
    )
    session = Session(state, strategy, corpus)
    app = create_app(session, dump_prefix=args.dump_prefix)
    if args.ui_dir and Path(args.ui_dir).is_dir():
        mount_ui(app, args.ui_dir)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def cmd_synth(args) -> int:
    if args.preset:
        from importlib.resources import files

        preset = json.loads(
            files("senselearn.configs").joinpath(f"{args.preset}.json").read_text()
        )
        configs = [SyntheticConfig.from_dict(c) for c in preset["verbs"]]
    else:
        configs = [
            SyntheticConfig(
                branching=args.branching,
                num_senses=args.senses,
                cases=tuple(args.cases.split(",")),
                examples_per_sense=args.examples_per_sense,
                concept_level=args.concept_level,
                confusion=args.confusion,
                seed=args.seed,
                verb=args.verb,
            )
        ]
    thesaurus = None
    example_sets = []
    for config in configs:
        thesaurus, examples = generate_synthetic(config)
        example_sets.append(examples)
    corpus = ExampleSet.concat(*example_sets)
    Path(args.corpus_out).write_text(serialize_corpus(corpus), encoding="utf-8")
    Path(args.thesaurus_out).write_text(serialize_thesaurus(thesaurus), encoding="utf-8")
    print(
        json.dumps(
            {
                "examples": len(corpus),
                "verbs": corpus.verbs(),
                "corpus_out": args.corpus_out,
                "thesaurus_out": args.thesaurus_out,
            }
        )
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="senselearn",
        description="Example-based verb sense disambiguation with selective sampling",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="validate and summarize input files")
    p.add_argument("--corpus", required=True)
    p.add_argument("--seed-db")
    p.add_argument("--thesaurus")
    p.add_argument("--tagged", help="tagged token stream for co-occurrence extraction")
    p.add_argument("--tuples-out")
    p.add_argument("--vectors-out")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("disambiguate", help="score and choose senses for a corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--seed-db")
    p.add_argument("--train-corpus", help="gold-labeled corpus to build the database from")
    _add_engine_flags(p)
    p.set_defaults(func=cmd_disambiguate)

    p = sub.add_parser("sample", help="run a selective-sampling loop")
    p.add_argument("--corpus", required=True)
    p.add_argument("--budget", type=int)
    p.add_argument("--oracle", choices=("gold", "http"), default="gold")
    p.add_argument("--oracle-url", default="http://localhost:9000/label")
    p.add_argument("--out")
    _add_engine_flags(p)
    _add_strategy_flags(p)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("eval", help="sixfold cross-validation over all methods")
    p.add_argument("--corpus", required=True)
    p.add_argument("--folds", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--rb-theta", type=float, default=0.0)
    p.add_argument("--nb-level", type=int, default=5)
    p.add_argument("--nb-pseudo", type=float, default=1.0)
    p.add_argument("--json", action="store_true")
    _add_engine_flags(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("curve", help="held-out learning curves")
    p.add_argument("--corpus", required=True)
    p.add_argument("--budget", type=int)
    p.add_argument("--seeds", help="comma-separated seed list (overrides --seed)")
    p.add_argument("--holdout-fraction", type=float, default=1.0 / 6.0)
    p.add_argument("--out")
    _add_engine_flags(p)
    _add_strategy_flags(p)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("sweep", help="coverage/accuracy trade-off over lambda grid")
    p.add_argument("--corpus", required=True)
    p.add_argument("--folds", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--lambda",
        dest="lambdas",
        default="0,0.25,0.5,0.75,1",
        help="comma-separated certainty mixing weights to sweep",
    )
    p.add_argument(
        "--thresholds",
        default=",".join(f"{i / 20:g}" for i in range(21)),
    )
    p.add_argument("--out")
    _add_engine_flags(p, include_lambda=False)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("serve", help="start the annotation HTTP service")
    p.add_argument("--corpus", required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--ui-dir", help="static directory with the built annotator UI")
    p.add_argument("--dump-prefix", help="write database/history dumps here on shutdown")
    _add_engine_flags(p)
    _add_strategy_flags(p)
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("synth", help="generate a synthetic thesaurus and corpus")
    p.add_argument("--preset", help="packaged preset name (e.g. trend)")
    p.add_argument("--branching", type=int, default=3)
    p.add_argument("--senses", type=int, default=3)
    p.add_argument("--cases", default="c1,c2")
    p.add_argument("--examples-per-sense", type=int, default=50)
    p.add_argument("--concept-level", type=int, default=2)
    p.add_argument("--confusion", type=float, default=0.15)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--verb", default="v1")
    p.add_argument("--corpus-out", default="synthetic.corpus.jsonl")
    p.add_argument("--thesaurus-out", default="synthetic.thesaurus.tsv")
    p.set_defaults(func=cmd_synth)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BrokenPipeError:
        return 0  # downstream reader (e.g. head) closed the pipe
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
