"""Cross-validation, learning curves, and coverage-accuracy sweeps."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Sequence

from .baselines import (
    induce_rules,
    most_frequent_sense,
    nb_disambiguate,
    nb_train,
    rule_based_disambiguate,
)
from .corpus import Example, ExampleSet, tuples_from_examples
from .database import SenseDatabase, database_from_labeled, inventory_from_corpus
from .engine import EngineConfig, ScoreReport, certainty, disambiguate
from .sampler import SamplerState, Strategy, WsdCache, build_sampler, gold_oracle, initialize_from_scratch
from .thesaurus import Thesaurus
from .vectors import build_vectors


@dataclass(frozen=True)
class CurvePoint:
    labels_used: int
    accuracy: float
    strategy: str
    seed: int
    coverage: float | None = None

    def __post_init__(self) -> None:
        if not 0.0 <= self.accuracy <= 1.0:
            raise ValueError("accuracy must be in [0, 1]")
        if self.coverage is not None and not 0.0 <= self.coverage <= 1.0:
            raise ValueError("coverage must be in [0, 1]")


def accuracy(outputs: Sequence[str], golds: Sequence[str]) -> float:
    """Fraction of outputs equal to their gold label."""
    if len(outputs) != len(golds):
        raise ValueError("outputs and golds must have equal length")
    if not outputs:
        raise ValueError("cannot score an empty output list")
    return sum(o == g for o, g in zip(outputs, golds)) / len(outputs)


CV_METHODS = ("lb", "rb", "nb", "vsm", "thesaurus")


def cross_validate(
    corpus: ExampleSet,
    thesaurus: Thesaurus,
    k: int = 6,
    seed: int = 0,
    *,
    alpha: float = 1.0,
    decision: str = "lexicographic",
    certainty_lambda: float = 0.5,
    smoothing_level: int = 5,
    rb_theta: float = 0.0,
    nb_level: int = 5,
    nb_pseudo: float = 1.0,
) -> dict:
    """Per-fold and mean accuracy for every comparison method.

    Folds come from a seeded shuffle; each fold is scored with a database
    trained on the remaining folds. The vsm column builds its co-occurrence
    vectors from the training folds only.
    """
    if not corpus.fully_labeled():
        raise ValueError("cross-validation needs a fully gold-labeled corpus")
    from .corpus import split_folds

    folds = split_folds(corpus, k, seed)
    per_method: dict[str, list[float]] = {m: [] for m in CV_METHODS}
    engine_opts = dict(
        alpha=alpha,
        decision=decision,
        certainty_lambda=certainty_lambda,
        smoothing_level=smoothing_level,
    )
    for held_out_index, test in enumerate(folds):
        train = ExampleSet.concat(
            *(fold for i, fold in enumerate(folds) if i != held_out_index)
        )
        db = database_from_labeled(train)
        vectors = build_vectors(tuples_from_examples(train))
        cfg_thesaurus = EngineConfig.thesaurus_backend(thesaurus, **engine_opts)
        cfg_vsm = EngineConfig.vsm_backend(vectors, thesaurus, **engine_opts)
        rules = induce_rules(db, thesaurus, rb_theta)
        nb_model = nb_train(db, thesaurus, nb_level, nb_pseudo)

        golds = [example.gold_sense for example in test]
        predictions = {
            "lb": [most_frequent_sense(db, x.verb) for x in test],
            "rb": [rule_based_disambiguate(rules, db, thesaurus, x) for x in test],
            "nb": [nb_disambiguate(nb_model, x) for x in test],
            "vsm": [disambiguate(cfg_vsm, db, x).chosen for x in test],
            "thesaurus": [disambiguate(cfg_thesaurus, db, x).chosen for x in test],
        }
        for method in CV_METHODS:
            per_method[method].append(accuracy(predictions[method], golds))

    return {
        "folds": k,
        "seed": seed,
        "per_fold": per_method,
        "mean": {m: sum(v) / len(v) for m, v in per_method.items()},
    }


def coverage_accuracy_sweep(
    reports: Sequence[ScoreReport],
    golds: Sequence[str],
    thresholds: Sequence[float],
    lam: float,
) -> list[tuple[float, float, float | None]]:
    """(threshold, coverage, accuracy) rows; accuracy is None at zero coverage.

    Certainty is recomputed from each report's top-two scores at the given
    lambda, so one batch of reports serves the whole lambda grid.
    """
    if len(reports) != len(golds):
        raise ValueError("reports and golds must have equal length")
    if list(thresholds) != sorted(thresholds):
        raise ValueError("thresholds must be sorted ascending")
    scored = [
        (certainty(report, lam), report.chosen == gold)
        for report, gold in zip(reports, golds)
    ]
    rows: list[tuple[float, float, float | None]] = []
    total = len(scored)
    for threshold in thresholds:
        covered = [correct for value, correct in scored if value >= threshold]
        coverage = len(covered) / total if total else 0.0
        acc = sum(covered) / len(covered) if covered else None
        rows.append((threshold, coverage, acc))
    return rows


def sweep_lambda_grid(
    reports: Sequence[ScoreReport],
    golds: Sequence[str],
    thresholds: Sequence[float],
    lambdas: Sequence[float] = (0.0, 0.25, 0.5, 0.75, 1.0),
) -> list[tuple[float, float, float, float | None]]:
    rows = []
    for lam in lambdas:
        for threshold, coverage, acc in coverage_accuracy_sweep(
            reports, golds, thresholds, lam
        ):
            rows.append((lam, threshold, coverage, acc))
    return rows


def serialize_sweep(rows: Sequence[tuple[float, float, float, float | None]]) -> str:
    lines = ["lambda\tthreshold\tcoverage\taccuracy"]
    for lam, threshold, coverage, acc in rows:
        acc_text = "" if acc is None else f"{acc:.6f}"
        lines.append(f"{lam:g}\t{threshold:g}\t{coverage:.6f}\t{acc_text}")
    return "\n".join(lines) + "\n"


def holdout_split(
    corpus: ExampleSet, seed: int, fraction: float = 1.0 / 6.0
) -> tuple[ExampleSet, ExampleSet]:
    """Seeded (pool, held-out) split; both preserve corpus order."""
    if not 0.0 < fraction < 1.0:
        raise ValueError("fraction must be in (0, 1)")
    indices = list(range(len(corpus)))
    random.Random(seed).shuffle(indices)
    held = max(1, round(len(corpus) * fraction))
    held_set = set(indices[:held])
    pool = ExampleSet(corpus[i] for i in range(len(corpus)) if i not in held_set)
    holdout = ExampleSet(corpus[i] for i in range(len(corpus)) if i in held_set)
    return pool, holdout


def exhaustive_accuracy(
    pool: ExampleSet,
    holdout: ExampleSet,
    cfg: EngineConfig,
    inventory: SenseDatabase | None = None,
) -> float:
    """Held-out accuracy after committing the entire pool.

    Builds the same database a sampling run ends with (corpus-derived sense
    inventory, verb-wide frames) without running the loop.
    """
    db = (
        inventory.copy()
        if inventory is not None
        else inventory_from_corpus(ExampleSet.concat(pool, holdout))
    )
    for example in pool:
        db.add_example(example, example.gold_sense)
    outputs = [disambiguate(cfg, db, x).chosen for x in holdout]
    return accuracy(outputs, [x.gold_sense for x in holdout])


class HoldoutTracker:
    """Held-out accuracy kept in sync with a sampling run, one pass per commit."""

    def __init__(self, state: SamplerState, holdout: ExampleSet) -> None:
        self.holdout = holdout
        self.cache = WsdCache(state.db, state.cfg, state.ccd, holdout)

    def apply(self, result) -> None:
        self.cache.apply_commit(
            result.example, result.sense, result.added_slots, result.changed_ccd_cases
        )

    def accuracy(self) -> float:
        outputs = [self.cache.predict(x.id) for x in self.holdout]
        return accuracy(outputs, [x.gold_sense for x in self.holdout])


def run_curve(
    state: SamplerState,
    holdout: ExampleSet,
    strategy: Strategy,
    oracle: Callable[[Example], str],
    *,
    budget: int | None = None,
    seed_label: int = 0,
    stop_at_accuracy: float | None = None,
) -> list[CurvePoint]:
    """Drive one sampling run, recording held-out accuracy after each label.

    The x=0 point reflects the state as initialized (seed database or
    from-scratch commits). An optional accuracy target stops the run at the
    first iteration reaching it.
    """
    tracker = HoldoutTracker(state, holdout)
    points = [
        CurvePoint(
            labels_used=0,
            accuracy=tracker.accuracy(),
            strategy=strategy.kind,
            seed=seed_label,
        )
    ]
    if stop_at_accuracy is not None and points[0].accuracy >= stop_at_accuracy:
        return points
    limit = state.pool_size() if budget is None else min(budget, state.pool_size())
    for label_count in range(1, limit + 1):
        example = state.select(strategy)
        sense = oracle(example)
        if sense not in state.db.senses(example.verb):
            raise ValueError(f"oracle returned invalid sense {sense!r}")
        result = state.commit_label(example, sense, strategy=strategy.kind)
        tracker.apply(result)
        points.append(
            CurvePoint(
                labels_used=label_count,
                accuracy=tracker.accuracy(),
                strategy=strategy.kind,
                seed=seed_label,
            )
        )
        if stop_at_accuracy is not None and points[-1].accuracy >= stop_at_accuracy:
            break
    return points


def learning_curve(
    corpus: ExampleSet,
    cfg: EngineConfig,
    strategy_kind: str,
    seeds: Sequence[int],
    *,
    init: str = "scratch",
    seed_db: SenseDatabase | None = None,
    holdout_fraction: float = 1.0 / 6.0,
    budget: int | None = None,
    utility_k: int = 1,
    committee_size: int = 2,
    member_fraction: float = 0.5,
    tu_mode: str = "signed",
    tu_refresh_every: int = 25,
    stop_at_accuracy: float | None = None,
) -> list[CurvePoint]:
    """Held-out learning curves for one strategy, one run per seed."""
    if init not in ("scratch", "seed-db"):
        raise ValueError("init must be 'scratch' or 'seed-db'")
    if init == "seed-db" and seed_db is None:
        raise ValueError("seed-db init needs a seed database")
    points: list[CurvePoint] = []
    oracle = gold_oracle(corpus)
    # the sense inventory is dictionary knowledge: derive it once from the
    # whole corpus so held-out verbs and senses are always known to the store
    scratch_inventory = inventory_from_corpus(corpus) if init == "scratch" else None
    for seed in seeds:
        pool, holdout = holdout_split(corpus, seed, holdout_fraction)
        state = build_sampler(
            pool,
            cfg,
            seed_db=seed_db if init == "seed-db" else scratch_inventory,
            utility_k=utility_k,
            tu_mode=tu_mode,
            tu_refresh_every=tu_refresh_every,
        )
        if init == "scratch":
            initialize_from_scratch(state, oracle, seed=seed)
        strategy = Strategy(
            kind=strategy_kind,
            seed=seed,
            k=utility_k,
            committee_size=committee_size,
            member_fraction=member_fraction,
        )
        points.extend(
            run_curve(
                state,
                holdout,
                strategy,
                oracle,
                budget=budget,
                seed_label=seed,
                stop_at_accuracy=stop_at_accuracy,
            )
        )
    return points


def aggregate_curve(points: Sequence[CurvePoint]) -> list[tuple[str, int, float, float]]:
    """(strategy, labels, mean accuracy, stddev) rows over seeds."""
    grouped: dict[tuple[str, int], list[float]] = {}
    for point in points:
        grouped.setdefault((point.strategy, point.labels_used), []).append(point.accuracy)
    rows = []
    for (strategy, labels), values in sorted(grouped.items()):
        mean = sum(values) / len(values)
        variance = sum((v - mean) ** 2 for v in values) / len(values)
        rows.append((strategy, labels, mean, variance**0.5))
    return rows


def serialize_curve(rows: Sequence[tuple[str, int, float, float]]) -> str:
    lines = ["strategy\tlabels\tmean_acc\tstddev"]
    for strategy, labels, mean, std in rows:
        lines.append(f"{strategy}\t{labels}\t{mean:.6f}\t{std:.6f}")
    return "\n".join(lines) + "\n"


def labels_to_reach(points: Sequence[CurvePoint], target: float) -> int | None:
    """Smallest labels_used whose accuracy meets the target, per the given run."""
    for point in sorted(points, key=lambda p: p.labels_used):
        if point.accuracy >= target:
            return point.labels_used
    return None
