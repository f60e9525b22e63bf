"""Scikit-learn style classifiers over example lists.

X is a sequence of `Example`; y is a sequence of sense ids (or None to use
the examples' gold labels). The wrappers make the disambiguator and its
baselines usable with sklearn tooling (clone, get_params, accuracy scoring).
"""

from __future__ import annotations

from typing import Sequence

from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.exceptions import NotFittedError

from .baselines import (
    NbModel,
    RuleSet,
    induce_rules,
    most_frequent_sense,
    nb_disambiguate,
    nb_train,
    rule_based_disambiguate,
)
from .corpus import Example
from .database import SenseDatabase, database_from_labeled
from .engine import EngineConfig, ScoreReport, disambiguate
from .thesaurus import Thesaurus
from .vectors import VectorTable


def check_examples(X: Sequence[Example]) -> list[Example]:
    """Validate an example batch: correct type, pairwise-distinct ids."""
    examples = list(X)
    seen: set[str] = set()
    for item in examples:
        if not isinstance(item, Example):
            raise TypeError(f"expected Example instances, got {type(item).__name__}")
        if item.id in seen:
            raise ValueError(f"duplicate example id {item.id!r} in batch")
        seen.add(item.id)
    return examples


def resolve_labels(
    examples: Sequence[Example], y: Sequence[str] | None
) -> list[str]:
    """Use y when given, otherwise the examples' gold senses."""
    if y is None:
        labels = [example.gold_sense for example in examples]
        if any(label is None for label in labels):
            raise ValueError("y is None but some examples have no gold sense")
        return labels  # type: ignore[return-value]
    labels = list(y)
    if len(labels) != len(examples):
        raise ValueError("X and y must have equal length")
    return labels


def _labeled_copy(examples: list[Example], labels: list[str]) -> list[Example]:
    return [
        Example(id=e.id, verb=e.verb, slots=e.slots, gold_sense=label)
        for e, label in zip(examples, labels)
    ]


class _SenseClassifier(ClassifierMixin, BaseEstimator):
    """Shared fit plumbing: build a sense database from labeled examples."""

    db_: SenseDatabase

    def fit(self, X: Sequence[Example], y: Sequence[str] | None = None):
        examples = check_examples(X)
        if not examples:
            raise ValueError("cannot fit on an empty example list")
        labels = resolve_labels(examples, y)
        self.db_ = database_from_labeled(_labeled_copy(examples, labels))
        self._post_fit()
        return self

    def _post_fit(self) -> None:
        pass

    def _check_fitted(self) -> None:
        if not hasattr(self, "db_"):
            raise NotFittedError(f"{type(self).__name__} is not fitted yet")

    def predict(self, X: Sequence[Example]) -> list[str]:
        self._check_fitted()
        return [self._predict_one(example) for example in check_examples(X)]

    def _predict_one(self, example: Example) -> str:
        raise NotImplementedError


class SenseDisambiguator(_SenseClassifier):
    """Nearest-neighbor disambiguator with case-contribution weighting.

    Parameters mirror the engine configuration; `similarity` picks the
    thesaurus path backend or the TF-IDF cosine backend (which additionally
    needs `vectors`). The thesaurus is always required for smoothing.
    """

    def __init__(
        self,
        thesaurus: Thesaurus | None = None,
        vectors: VectorTable | None = None,
        similarity: str = "thesaurus",
        alpha: float = 1.0,
        decision: str = "lexicographic",
        certainty_lambda: float = 0.5,
        smoothing_level: int = 5,
    ) -> None:
        self.thesaurus = thesaurus
        self.vectors = vectors
        self.similarity = similarity
        self.alpha = alpha
        self.decision = decision
        self.certainty_lambda = certainty_lambda
        self.smoothing_level = smoothing_level

    def _engine_config(self) -> EngineConfig:
        if self.thesaurus is None:
            raise ValueError("SenseDisambiguator needs a thesaurus")
        opts = dict(
            alpha=self.alpha,
            decision=self.decision,
            certainty_lambda=self.certainty_lambda,
            smoothing_level=self.smoothing_level,
        )
        if self.similarity == "thesaurus":
            return EngineConfig.thesaurus_backend(self.thesaurus, **opts)
        if self.similarity == "vsm":
            if self.vectors is None:
                raise ValueError("vsm similarity needs a vector table")
            return EngineConfig.vsm_backend(self.vectors, self.thesaurus, **opts)
        raise ValueError(f"similarity must be 'thesaurus' or 'vsm', got {self.similarity!r}")

    def _post_fit(self) -> None:
        self.cfg_ = self._engine_config()

    def _predict_one(self, example: Example) -> str:
        return disambiguate(self.cfg_, self.db_, example).chosen

    def predict_report(self, X: Sequence[Example]) -> list[ScoreReport]:
        """Full per-example reports (scores, per-case sims, certainty)."""
        self._check_fitted()
        return [disambiguate(self.cfg_, self.db_, x) for x in check_examples(X)]


class MostFrequentSense(_SenseClassifier):
    """Majority-sense lower bound."""

    def _predict_one(self, example: Example) -> str:
        return most_frequent_sense(self.db_, example.verb)


class ResnikRuleClassifier(_SenseClassifier):
    """Selectional restrictions from thresholded class associations."""

    rules_: RuleSet

    def __init__(self, thesaurus: Thesaurus | None = None, theta: float = 0.0) -> None:
        self.thesaurus = thesaurus
        self.theta = theta

    def _post_fit(self) -> None:
        if self.thesaurus is None:
            raise ValueError("ResnikRuleClassifier needs a thesaurus")
        self.rules_ = induce_rules(self.db_, self.thesaurus, self.theta)

    def _predict_one(self, example: Example) -> str:
        return rule_based_disambiguate(self.rules_, self.db_, self.thesaurus, example)


class NaiveBayesSense(_SenseClassifier):
    """Naive Bayes over thesaurus-generalized case fillers."""

    model_: NbModel

    def __init__(
        self, thesaurus: Thesaurus | None = None, level: int = 5, pseudo: float = 1.0
    ) -> None:
        self.thesaurus = thesaurus
        self.level = level
        self.pseudo = pseudo

    def _post_fit(self) -> None:
        if self.thesaurus is None:
            raise ValueError("NaiveBayesSense needs a thesaurus")
        self.model_ = nb_train(self.db_, self.thesaurus, self.level, self.pseudo)

    def _predict_one(self, example: Example) -> str:
        return nb_disambiguate(self.model_, example)
