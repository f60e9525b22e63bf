"""Evaluation harness: accuracy, cross-validation, sweeps, learning curves."""

from __future__ import annotations

import pytest

from senselearn.corpus import ExampleSet
from senselearn.engine import EngineConfig
from senselearn.evaluation import (
    accuracy,
    aggregate_curve,
    coverage_accuracy_sweep,
    cross_validate,
    exhaustive_accuracy,
    holdout_split,
    labels_to_reach,
    learning_curve,
    serialize_curve,
    serialize_sweep,
    sweep_lambda_grid,
)
from senselearn.estimators import SenseDisambiguator

from .conftest import make_example, random_instance


class TestAccuracy:
    def test_values(self):
        assert accuracy(["a", "b"], ["a", "b"]) == 1.0
        assert accuracy(["a", "b"], ["b", "a"]) == 0.0
        assert accuracy(["a", "b", "c", "d"], ["a", "b", "c", "x"]) == 0.75

    def test_empty_errors(self):
        with pytest.raises(ValueError):
            accuracy([], [])

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            accuracy(["a"], ["a", "b"])


class TestCrossValidate:
    def test_separable_corpus_perfect_thesaurus_column(self):
        thesaurus, corpus = random_instance(37, confusion=0.0, examples_per_sense=8)
        report = cross_validate(corpus, thesaurus, k=4, seed=0)
        assert report["mean"]["thesaurus"] == 1.0

    def test_lb_equals_majority_rate(self):
        thesaurus, corpus = random_instance(41, confusion=0.3, examples_per_sense=8)
        report = cross_validate(corpus, thesaurus, k=3, seed=5)
        from senselearn.corpus import split_folds
        from senselearn.database import database_from_labeled

        folds = split_folds(corpus, 3, seed=5)
        for index, fold in enumerate(folds):
            train = ExampleSet.concat(*(f for i, f in enumerate(folds) if i != index))
            db = database_from_labeled(train)
            majority = {verb: db.most_frequent_sense(verb) for verb in db.verbs()}
            expected = sum(
                majority[x.verb] == x.gold_sense for x in fold
            ) / len(fold)
            assert report["per_fold"]["lb"][index] == pytest.approx(expected)

    def test_deterministic(self):
        thesaurus, corpus = random_instance(43, examples_per_sense=6)
        a = cross_validate(corpus, thesaurus, k=3, seed=2)
        b = cross_validate(corpus, thesaurus, k=3, seed=2)
        assert a == b

    def test_unlabeled_rejected(self, yameru_thesaurus):
        corpus = ExampleSet([make_example("e1", "v", [("c1", "a")])])
        with pytest.raises(ValueError, match="gold-labeled"):
            cross_validate(corpus, yameru_thesaurus, k=2)


class TestCoverageSweep:
    def reports(self):
        thesaurus, corpus = random_instance(47, confusion=0.3, examples_per_sense=10)
        half = len(corpus) // 2
        train, test = list(corpus)[:half], list(corpus)[half:]
        model = SenseDisambiguator(thesaurus=thesaurus).fit(train)
        return model.predict_report(test), [e.gold_sense for e in test]

    def test_threshold_zero_covers_everything(self):
        reports, golds = self.reports()
        rows = coverage_accuracy_sweep(reports, golds, [0.0], 0.5)
        assert rows[0][1] == 1.0

    def test_above_max_covers_nothing(self):
        reports, golds = self.reports()
        rows = coverage_accuracy_sweep(reports, golds, [1.1], 0.5)
        threshold, coverage, acc = rows[0]
        assert coverage == 0.0 and acc is None

    def test_coverage_monotone_nonincreasing(self):
        reports, golds = self.reports()
        thresholds = [i / 10 for i in range(11)]
        for lam in (0.0, 0.5, 1.0):
            rows = coverage_accuracy_sweep(reports, golds, thresholds, lam)
            coverages = [row[1] for row in rows]
            assert coverages == sorted(coverages, reverse=True)

    def test_unsorted_thresholds_rejected(self):
        reports, golds = self.reports()
        with pytest.raises(ValueError, match="sorted"):
            coverage_accuracy_sweep(reports, golds, [0.5, 0.1], 0.5)

    def test_lambda_grid_table_well_formed(self):
        reports, golds = self.reports()
        rows = sweep_lambda_grid(reports, golds, [0.0, 0.5, 1.0])
        assert len(rows) == 5 * 3
        text = serialize_sweep(rows)
        assert text.startswith("lambda\tthreshold\tcoverage\taccuracy")


class TestLearningCurve:
    def test_zero_point_is_initialized_system(self):
        thesaurus, corpus = random_instance(53, examples_per_sense=8)
        cfg = EngineConfig.thesaurus_backend(thesaurus)
        points = learning_curve(corpus, cfg, "random", seeds=[0], budget=3)
        by_labels = {p.labels_used: p for p in points}
        assert 0 in by_labels and 3 in by_labels

    def test_exhaustion_equality_across_strategies(self):
        thesaurus, corpus = random_instance(59, examples_per_sense=6, confusion=0.2)
        cfg = EngineConfig.thesaurus_backend(thesaurus)
        finals = {}
        for kind in ("tu", "uncertainty", "committee", "random"):
            points = learning_curve(corpus, cfg, kind, seeds=[4])
            finals[kind] = points[-1].accuracy
        assert len(set(finals.values())) == 1

    def test_final_matches_direct_exhaustive_fit(self):
        thesaurus, corpus = random_instance(61, examples_per_sense=7, confusion=0.2)
        cfg = EngineConfig.thesaurus_backend(thesaurus)
        points = learning_curve(corpus, cfg, "random", seeds=[3])
        pool, holdout = holdout_split(corpus, 3)
        direct = exhaustive_accuracy(pool, holdout, cfg)
        assert points[-1].accuracy == pytest.approx(direct)

    def test_mean_over_seeds(self):
        thesaurus, corpus = random_instance(67, examples_per_sense=6)
        cfg = EngineConfig.thesaurus_backend(thesaurus)
        points = learning_curve(corpus, cfg, "random", seeds=[0, 1], budget=2)
        rows = aggregate_curve(points)
        per_seed = {
            (p.seed, p.labels_used): p.accuracy for p in points
        }
        for strategy, labels, mean, _std in rows:
            values = [per_seed[(s, labels)] for s in (0, 1) if (s, labels) in per_seed]
            assert mean == pytest.approx(sum(values) / len(values))
        text = serialize_curve(rows)
        assert text.startswith("strategy\tlabels\tmean_acc\tstddev")

    def test_determinism(self):
        thesaurus, corpus = random_instance(71, examples_per_sense=5)
        cfg = EngineConfig.thesaurus_backend(thesaurus)
        a = learning_curve(corpus, cfg, "committee", seeds=[2], budget=5)
        b = learning_curve(corpus, cfg, "committee", seeds=[2], budget=5)
        assert a == b

    def test_labels_to_reach(self):
        thesaurus, corpus = random_instance(73, examples_per_sense=8, confusion=0.1)
        cfg = EngineConfig.thesaurus_backend(thesaurus)
        points = learning_curve(corpus, cfg, "tu", seeds=[1])
        final = points[-1].accuracy
        needed = labels_to_reach(points, 0.9 * final)
        assert needed is not None
        assert needed <= points[-1].labels_used
        assert labels_to_reach(points, 2.0) is None
