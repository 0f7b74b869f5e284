"""Command-line surface binding the library into reproducible workflows.

Configuration codes name the eight evaluation setups: the first two letters
pick the learner (DT/RF), the third conjugated vs normalized stanford
labels (C/N), the fourth the plain vs augmented tag alphabet (P/A).  RFCP
is therefore a random forest on conjugated, plain data.

Exit codes: 0 success, 2 usage or configuration error, 3 data/model error.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from collections import defaultdict
from pathlib import Path

from . import analysis, plots, reports
from .corpus import (
    CorpusError,
    IdentifierRecord,
    extract_identifiers,
    parse_corpus,
    read_corpus,
    read_tagged_corpus,
    save_corpus,
    write_tagged_corpus,
    HEADER,
)
from .features import BEST_FEATURES, FEATURE_NAMES, FeatureError
from .learners import (
    Algorithm,
    Criterion,
    Hyperparameters,
    ModelError,
    TaggerModel,
    grid_search,
    kfold_evaluate,
    train_model,
)
from .metrics import (
    evaluate_records,
    drop_column_importance,
    permutation_importance,
)
from .splitter import UnsplittableIdentifier, split
from .taggers import ensure_constituents
from .tagset import Conjugation, DatasetConfiguration, IdentifierContext, Variant

ENV_SEED = "IDPOS_SEED"

CONFIG_CODES = ("DTNA", "RFNA", "DTCA", "RFCA", "DTNP", "RFNP", "DTCP", "RFCP")


class CliUsageError(Exception):
    pass


def decode_config_code(
    code: str, augment_threshold: int = 25
) -> tuple[Algorithm, DatasetConfiguration]:
    """RFCP-style code -> (algorithm, dataset configuration)."""
    code = code.upper()
    if (
        len(code) != 4
        or code[:2] not in ("DT", "RF")
        or code[2] not in "CN"
        or code[3] not in "PA"
    ):
        raise CliUsageError(
            f"bad configuration code {code!r}; expected one of "
            f"{', '.join(CONFIG_CODES)}"
        )
    algorithm = Algorithm.RANDOM_FOREST if code[:2] == "RF" else Algorithm.DECISION_TREE
    config = DatasetConfiguration(
        variant=Variant.AUGMENTED if code[3] == "A" else Variant.PLAIN,
        conjugation=Conjugation.CONJUGATED if code[2] == "C" else Conjugation.NORMALIZED,
        augment_threshold=augment_threshold,
    )
    return algorithm, config


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get(ENV_SEED)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise CliUsageError(f"{ENV_SEED} must be an integer, got {env!r}")
    return 0


def _build_hp(algorithm: Algorithm, args, seed: int) -> Hyperparameters:
    if algorithm is Algorithm.RANDOM_FOREST:
        hp = Hyperparameters.forest_defaults(seed)
    else:
        hp = Hyperparameters.tree_defaults(seed)
    overrides = {}
    if getattr(args, "criterion", None):
        overrides["criterion"] = Criterion(args.criterion)
    if getattr(args, "max_depth", None) is not None:
        overrides["max_depth"] = args.max_depth
    if getattr(args, "n_estimators", None) is not None:
        overrides["n_estimators"] = args.n_estimators
    if getattr(args, "bootstrap", None):
        overrides["bootstrap"] = args.bootstrap == "true"
    if overrides:
        from dataclasses import replace

        hp = replace(hp, **overrides)
    return hp


def _features(args) -> tuple[str, ...]:
    if getattr(args, "features", None):
        return tuple(name.strip() for name in args.features.split(",") if name.strip())
    return BEST_FEATURES


def _load_corpus(args, need_gold: bool = False) -> list[IdentifierRecord]:
    records = read_corpus(args.corpus)
    if need_gold:
        untagged = [r.id for r in records if r.gold is None]
        if untagged:
            raise ModelError(
                f"{len(untagged)} identifiers have no gold tags "
                f"(first: {untagged[0]})"
            )
    return records


def _prepared_records(args, config, subset) -> list[IdentifierRecord]:
    records = _load_corpus(args, need_gold=True)
    if not args.no_standins and any(
        f in subset for f in ("swum", "posse", "stanford")
    ):
        records = ensure_constituents(records, config.conjugation)
    return records


def _run_echo(args, **extra) -> dict:
    run = {"command": args.command}
    for key in ("corpus", "config", "model", "tagged"):
        value = getattr(args, key, None)
        if value:
            run[key] = value
    run.update(extra)
    return run


def _sibling(out: Path, suffix: str) -> Path:
    return out.with_name(out.stem + "." + suffix)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_extract(args) -> int:
    root = Path(args.source)
    if not root.is_dir():
        raise CliUsageError(f"source directory not found: {root}")
    records = extract_identifiers(root)
    save_corpus(records, args.out)
    by_context = defaultdict(int)
    for record in records:
        by_context[record.context.value] += 1
    parts = ", ".join(f"{k}={v}" for k, v in sorted(by_context.items()))
    print(f"extracted {len(records)} identifiers ({parts or 'none'}) -> {args.out}")
    return 0


def cmd_sample(args) -> int:
    records = read_corpus(args.corpus)
    rng = random.Random(_resolve_seed(args))
    chosen: list[IdentifierRecord] = []
    for context in sorted(IdentifierContext, key=lambda c: c.value):
        pool = [r for r in records if r.context is context]
        by_system: dict[str, list[IdentifierRecord]] = defaultdict(list)
        for record in pool:
            by_system[record.system].append(record)
        queues = []
        for system in sorted(by_system):
            rng.shuffle(by_system[system])
            queues.append(by_system[system])
        picked: list[IdentifierRecord] = []
        # Round-robin over systems until the per-category quota is filled.
        while len(picked) < args.per_category and any(queues):
            for queue in queues:
                if queue and len(picked) < args.per_category:
                    picked.append(queue.pop())
        chosen.extend(picked)
    order = {r.id: i for i, r in enumerate(records)}
    chosen.sort(key=lambda r: order[r.id])
    save_corpus(chosen, args.out)
    print(f"sampled {len(chosen)} identifiers -> {args.out}")
    return 0


def cmd_train(args) -> int:
    seed = _resolve_seed(args)
    algorithm, config = decode_config_code(args.config, args.threshold)
    subset = _features(args)
    hp = _build_hp(algorithm, args, seed)
    records = _prepared_records(args, config, subset)
    model = train_model(records, hp, config, subset)
    model.save(args.out)
    predictions = model.predict_records(records, standins=False)
    report = evaluate_records(model.relabel_gold(records), predictions)
    words = sum(len(r.words) for r in records)
    print(f"trained {hp.algorithm} ({args.config.upper()}) on "
          f"{len(records)} identifiers / {words} words")
    print(f"classes: {' '.join(model.classes)}")
    print(f"features: {','.join(subset)}")
    print(f"training accuracy: {report.accuracy:.4f} "
          f"(identifier-level {report.identifier_accuracy:.4f})")
    print(f"model -> {args.out}")
    return 0


def _parse_raw_identifier(line: str, index: int) -> IdentifierRecord:
    parts = [p.strip() for p in line.split(",")]
    if len(parts) < 2:
        raise CorpusError(
            f"raw identifier line {index}: expected NAME,CONTEXT[,TYPE], got {line!r}"
        )
    name, context_name = parts[0], parts[1].upper()
    try:
        context = IdentifierContext(context_name)
    except ValueError:
        raise CorpusError(
            f"raw identifier line {index}: unknown context {parts[1]!r}"
        ) from None
    type_hint = parts[2] if len(parts) > 2 else ""
    words = split(name).words
    return IdentifierRecord(
        id=f"input-{index}",
        system="input",
        context=context,
        type_hint=type_hint,
        raw_name=name,
        words=list(words),
    )


def cmd_tag(args) -> int:
    model = TaggerModel.load(args.model)
    if args.input == "-":
        lines = sys.stdin.read().splitlines()
    else:
        lines = Path(args.input).read_text(encoding="utf-8").splitlines()

    corpus_mode = bool(lines) and lines[0] == HEADER
    if corpus_mode:
        records = parse_corpus(lines)
    else:
        records = [
            _parse_raw_identifier(line, i)
            for i, line in enumerate(lines, start=1)
            if line.strip()
        ]

    predictions = model.predict_records(records, standins=not args.no_standins)

    if corpus_mode:
        if args.out:
            with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
                write_tagged_corpus(records, predictions, fh)
        else:
            write_tagged_corpus(records, predictions, sys.stdout)
    else:
        out_lines = [
            f"{record.raw_name}\t{' '.join(predictions[record.id])}"
            for record in records
        ]
        if args.out:
            Path(args.out).write_text(
                "".join(line + "\n" for line in out_lines), encoding="utf-8"
            )
        else:
            for line in out_lines:
                print(line)
    return 0


def cmd_crossval(args) -> int:
    seed = _resolve_seed(args)
    algorithm, config = decode_config_code(args.config, args.threshold)
    subset = _features(args)
    hp = _build_hp(algorithm, args, seed)
    records = _prepared_records(args, config, subset)
    result = kfold_evaluate(records, args.k, hp, config, subset, seed)
    run = _run_echo(args, k=args.k, seed=seed, features=",".join(subset))
    out = Path(args.out)
    if args.format == "json":
        reports.write_json(
            out,
            reports.crossval_document(result.fold_reports, result.mean_metrics, run),
        )
    else:
        reports.write_crossval_tsv(
            out, result.fold_reports, result.mean_metrics, run
        )
    if not args.no_figures:
        plots.save_fold_metrics(
            result.fold_reports, result.mean_metrics, _sibling(out, "metrics.png")
        )
    for name, label in reports.CROSSVAL_METRICS:
        print(f"{label}: {result.mean_metrics[name]:.4f}")
    print(f"report -> {out}")
    return 0


def cmd_gridsearch(args) -> int:
    seed = _resolve_seed(args)
    algorithm, config = decode_config_code(args.config, args.threshold)
    subset = _features(args)
    base_hp = _build_hp(algorithm, args, seed)
    grid: dict[str, list] = {}
    if args.grid_criterion:
        grid["criterion"] = [Criterion(c) for c in args.grid_criterion.split(",")]
    if args.grid_max_depth:
        grid["max_depth"] = [int(d) for d in args.grid_max_depth.split(",")]
    if args.grid_n_estimators:
        grid["n_estimators"] = [int(n) for n in args.grid_n_estimators.split(",")]
    if args.grid_bootstrap:
        grid["bootstrap"] = [b == "true" for b in args.grid_bootstrap.split(",")]
    if not grid:
        grid = {
            "criterion": [Criterion.GINI, Criterion.ENTROPY],
            "max_depth": [3, 9, 27, 83],
        }
    records = _prepared_records(args, config, subset)
    result = grid_search(
        records, grid, base_hp, args.k, args.metric, config, subset, seed
    )
    run = _run_echo(
        args, k=args.k, seed=seed, metric=args.metric, features=",".join(subset)
    )
    out = Path(args.out)
    if args.format == "json":
        reports.write_json(out, reports.gridsearch_document(result, run))
    else:
        lines = reports.gridsearch_lines(result, args.k, run)
        out.write_text("\n".join(lines) + "\n", encoding="utf-8")
    best = result.best
    print(
        f"evaluated {len(result.rows)} configurations; best: "
        f"criterion={best.criterion} max_depth={best.max_depth} "
        f"n_estimators={best.n_estimators} bootstrap={best.bootstrap}"
    )
    print(f"report -> {out}")
    return 0


def cmd_importance(args) -> int:
    seed = _resolve_seed(args)
    algorithm, config = decode_config_code(args.config, args.threshold)
    subset = _features(args)
    hp = _build_hp(algorithm, args, seed)
    records = _prepared_records(args, config, subset)
    out = Path(args.out)

    if args.mode == "drop-column":
        result = drop_column_importance(records, subset, hp, config, args.k, seed)
        run = _run_echo(
            args, mode=args.mode, k=args.k, seed=seed, features=",".join(subset)
        )
        print(f"evaluated {len(result.rows)} feature subsets")
        if args.format == "json":
            reports.write_json(
                out, reports.dropcolumn_document(result.rows, result.best, run)
            )
        else:
            out.write_text(
                "\n".join(reports.dropcolumn_lines(result.rows, result.best, run))
                + "\n",
                encoding="utf-8",
            )
        if not args.no_figures:
            plots.save_subset_scores(result.rows, _sibling(out, "subsets.png"))
        for metric, best_subset in result.best.items():
            print(f"best {metric}: {','.join(best_subset)}")
    else:
        from .corpus import assign_folds
        from .features import gold_labels, prepare_split, vectorize_all

        folds = assign_folds(records, args.k, seed)
        values: dict[tuple[str, str], list[float]] = defaultdict(list)
        for fold in range(args.k):
            test = [r for r in records if folds.fold_of[r.id] == fold]
            train = [r for r in records if folds.fold_of[r.id] != fold]
            train_prep, test_prep = prepare_split(train, test, config)
            model = train_model(train_prep, hp, config, subset)
            vectors = vectorize_all(test_prep, subset)
            labels = gold_labels(test_prep)
            for metric in ("f1", "accuracy", "balanced_accuracy"):
                for feature in subset:
                    values[(metric, feature)].append(
                        permutation_importance(
                            model,
                            vectors,
                            labels,
                            feature,
                            metric,
                            n_repeats=args.repeats,
                            seed=seed,
                        )
                    )
        rows = [
            (metric, feature, values[(metric, feature)])
            for metric in ("f1", "accuracy", "balanced_accuracy")
            for feature in subset
        ]
        run = _run_echo(
            args, mode=args.mode, k=args.k, seed=seed, features=",".join(subset)
        )
        if args.format == "json":
            reports.write_json(out, reports.permutation_document(rows, run))
        else:
            out.write_text(
                "\n".join(reports.permutation_lines(rows, args.k, run)) + "\n",
                encoding="utf-8",
            )
        if not args.no_figures:
            plots.save_importances(rows, _sibling(out, "importances.png"))
    print(f"report -> {out}")
    return 0


def cmd_analyze(args) -> int:
    seed = _resolve_seed(args)
    if bool(args.model) == bool(args.tagged):
        raise CliUsageError("provide exactly one of --model or --tagged")
    if args.tagged:
        records, predictions = read_tagged_corpus(args.tagged)
    else:
        model = TaggerModel.load(args.model)
        if not args.corpus:
            raise CliUsageError("analyze --model also needs --corpus")
        records = _load_corpus(args, need_gold=True)
        predictions = model.predict_records(records, standins=not args.no_standins)
        records = model.relabel_gold(records)
    for record in records:
        if record.gold is None:
            raise ModelError(f"record {record.id} has no gold tags")

    ranking = analysis.misannotation_ranking(records, predictions, args.top)
    contexts = analysis.per_context_report(records, predictions)
    report = evaluate_records(records, predictions)
    run = _run_echo(args, top=args.top, seed=seed)

    out = Path(args.out)
    if args.format == "json":
        reports.write_json(
            out,
            {
                "run": run,
                "misannotations": reports.misannotation_document(ranking),
                "contexts": reports.context_document(contexts),
                "evaluation": reports.per_tag_document(report),
            },
        )
    else:
        out.write_text(
            "\n".join(reports.misannotation_lines(ranking, run)) + "\n",
            encoding="utf-8",
        )
        _sibling(out, "contexts.tsv").write_text(
            "\n".join(reports.context_lines(contexts, run)) + "\n", encoding="utf-8"
        )
        _sibling(out, "tags.tsv").write_text(
            "\n".join(reports.per_tag_lines(report, run)) + "\n", encoding="utf-8"
        )
    if not args.no_figures:
        if ranking:
            plots.save_misannotation(ranking, _sibling(out, "misannotated.png"))
        plots.save_context_accuracy(contexts, _sibling(out, "contexts.png"))
        plots.save_confusion(report, _sibling(out, "confusion.png"))
        plots.save_per_tag_f1(report, _sibling(out, "f1.png"))
    print(
        f"word accuracy {report.accuracy:.4f}, identifier accuracy "
        f"{report.identifier_accuracy:.4f}, {len(ranking)} ranked patterns"
    )
    print(f"report -> {out}")
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _add_common_model_flags(sub) -> None:
    sub.add_argument("--config", default="RFCP",
                     help="configuration code (DTNA..RFCP)")
    sub.add_argument("--features",
                     help=f"comma list from: {','.join(FEATURE_NAMES)}")
    sub.add_argument("--seed", type=int, default=None,
                     help=f"RNG seed (falls back to ${ENV_SEED}, then 0)")
    sub.add_argument("--threshold", type=int, default=25,
                     help="augmentation frequency threshold")
    sub.add_argument("--criterion", choices=["gini", "entropy"])
    sub.add_argument("--max-depth", type=int, dest="max_depth")
    sub.add_argument("--n-estimators", type=int, dest="n_estimators")
    sub.add_argument("--bootstrap", choices=["true", "false"])
    sub.add_argument("--no-standins", action="store_true",
                     help="fail instead of filling MISSING constituent tags")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="idpos",
        description="Part-of-speech grammar patterns for source-code identifiers",
    )
    commands = parser.add_subparsers(dest="command", metavar="command")

    p = commands.add_parser("extract", help="scan a source tree into a corpus")
    p.add_argument("--source", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_extract)

    p = commands.add_parser("sample", help="round-robin sample per category")
    p.add_argument("--corpus", required=True)
    p.add_argument("--per-category", type=int, default=267, dest="per_category")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sample)

    p = commands.add_parser("train", help="train a tagging model")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    _add_common_model_flags(p)
    p.set_defaults(func=cmd_train)

    p = commands.add_parser("tag", help="tag a corpus or raw identifier list")
    p.add_argument("--model", required=True)
    p.add_argument("--input", required=True,
                   help="corpus file, NAME,CONTEXT[,TYPE] lines, or - for stdin")
    p.add_argument("--out")
    p.add_argument("--no-standins", action="store_true")
    p.set_defaults(func=cmd_tag)

    p = commands.add_parser("crossval", help="k-fold cross-validation report")
    p.add_argument("--corpus", required=True)
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=["tsv", "json"], default="tsv")
    p.add_argument("--no-figures", action="store_true")
    _add_common_model_flags(p)
    p.set_defaults(func=cmd_crossval)

    p = commands.add_parser("gridsearch", help="exhaustive hyperparameter search")
    p.add_argument("--corpus", required=True)
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--metric", default="accuracy",
                   choices=["accuracy", "balanced_accuracy", "f1",
                            "precision", "recall"])
    p.add_argument("--grid-criterion", dest="grid_criterion")
    p.add_argument("--grid-max-depth", dest="grid_max_depth")
    p.add_argument("--grid-n-estimators", dest="grid_n_estimators")
    p.add_argument("--grid-bootstrap", dest="grid_bootstrap")
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=["tsv", "json"], default="tsv")
    _add_common_model_flags(p)
    p.set_defaults(func=cmd_gridsearch)

    p = commands.add_parser("importance", help="feature importance study")
    p.add_argument("--mode", choices=["permutation", "drop-column"],
                   default="permutation")
    p.add_argument("--corpus", required=True)
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--repeats", type=int, default=5)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=["tsv", "json"], default="tsv")
    p.add_argument("--no-figures", action="store_true")
    _add_common_model_flags(p)
    p.set_defaults(func=cmd_importance)

    p = commands.add_parser("analyze", help="mis-annotation and context reports")
    p.add_argument("--corpus")
    p.add_argument("--model")
    p.add_argument("--tagged", help="pre-tagged corpus from the tag command")
    p.add_argument("--top", type=int, default=5)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=["tsv", "json"], default="tsv")
    p.add_argument("--no-figures", action="store_true")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--no-standins", action="store_true")
    p.set_defaults(func=cmd_analyze)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    if not getattr(args, "func", None):
        parser.print_help()
        return 2
    try:
        return args.func(args) or 0
    except CliUsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (CorpusError, ModelError, FeatureError, UnsplittableIdentifier) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
