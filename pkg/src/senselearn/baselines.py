"""Comparison methods: majority sense, association-rule filtering, Naive Bayes."""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field

from .corpus import Example
from .database import SenseDatabase
from .thesaurus import Thesaurus


def most_frequent_sense(db: SenseDatabase, verb: str) -> str:
    """Majority sense of the database (lowest id on ties)."""
    return db.most_frequent_sense(verb)


@dataclass
class RuleSet:
    """Selectional restrictions: accepted thesaurus classes per (verb, sense, case)."""

    theta: float
    rules: dict[tuple[str, str, str], dict[str, float]] = field(default_factory=dict)

    def accepted(self, verb: str, sense: str, case: str) -> dict[str, float]:
        return self.rules.get((verb, sense, case), {})

    def covers(self, thesaurus: Thesaurus, verb: str, sense: str, case: str, noun: str) -> bool:
        return any(
            thesaurus.dominates(cls, noun) for cls in self.accepted(verb, sense, case)
        )

    def to_dict(self) -> dict:
        return {
            "theta": self.theta,
            "rules": [
                {"verb": v, "sense": s, "case": c, "classes": dict(sorted(classes.items()))}
                for (v, s, c), classes in sorted(self.rules.items())
            ],
        }


def induce_rules(db: SenseDatabase, thesaurus: Thesaurus, theta: float) -> RuleSet:
    """Keep classes whose association with a (sense, case) reaches theta.

    Association is the empirical ``P(r|s,c) * ln(P(r|s,c) / P(r|c))`` over
    filler tokens, with candidate classes drawn from every tree level.
    Unknown nouns are dominated by no class: they count in the denominators
    only.
    """
    ruleset = RuleSet(theta=theta)
    for verb in db.verbs():
        for case in sorted(db.cases(verb)):
            senses = [s for s in db.senses(verb) if case in db.frame(verb, s)]
            per_sense_tokens: dict[str, int] = {}
            per_sense_dominated: dict[str, Counter] = {}
            case_dominated: Counter = Counter()
            case_tokens = 0
            for sense in senses:
                fillers = db.fillers(verb, sense, case)
                tokens = sum(fillers.values())
                dominated: Counter = Counter()
                for noun, freq in fillers.items():
                    for code in thesaurus.codes(noun):
                        for level in range(1, thesaurus.depth + 1):
                            dominated[code[:level]] += freq
                per_sense_tokens[sense] = tokens
                per_sense_dominated[sense] = dominated
                case_dominated.update(dominated)
                case_tokens += tokens
            if case_tokens == 0:
                continue
            for sense in senses:
                tokens = per_sense_tokens[sense]
                if tokens == 0:
                    continue
                accepted: dict[str, float] = {}
                for cls, count in per_sense_dominated[sense].items():
                    p_given_sense = count / tokens
                    p_given_case = case_dominated[cls] / case_tokens
                    assoc = p_given_sense * math.log(p_given_sense / p_given_case)
                    if assoc >= theta:
                        accepted[cls] = assoc
                if accepted:
                    ruleset.rules[(verb, sense, case)] = accepted
    return ruleset


def rule_based_disambiguate(
    rules: RuleSet, db: SenseDatabase, thesaurus: Thesaurus, x: Example
) -> str:
    """Pick the unique sense whose restrictions cover every input filler.

    Zero or multiple qualifying senses fall back to the majority sense.
    """
    if x.verb not in db:
        raise ValueError(f"unknown verb {x.verb!r}")
    qualifying = [
        sense
        for sense in db.senses(x.verb)
        if all(rules.covers(thesaurus, x.verb, sense, case, noun) for case, noun in x.slots)
    ]
    if len(qualifying) == 1:
        return qualifying[0]
    return db.most_frequent_sense(x.verb)


@dataclass
class NbModel:
    """Naive Bayes over generalized filler classes."""

    level: int
    pseudo: float
    priors: dict[str, dict[str, float]]  # verb -> sense -> P(s)
    likelihoods: dict[tuple[str, str, str], dict[str, float]]  # (verb, sense, case) -> class -> P
    vocab: dict[tuple[str, str], frozenset[str]]  # (verb, case) -> observed classes
    token_totals: dict[tuple[str, str, str], int]
    fallback: dict[str, str]  # verb -> majority sense
    thesaurus: Thesaurus

    def class_prob(self, verb: str, sense: str, case: str, cls: str) -> float:
        """Smoothed P(class | sense, case); classes outside the vocabulary get pseudo mass."""
        table = self.likelihoods.get((verb, sense, case), {})
        if cls in table:
            return table[cls]
        total = self.token_totals.get((verb, sense, case), 0)
        vocab_size = len(self.vocab.get((verb, case), frozenset()))
        denom = total + self.pseudo * vocab_size
        if denom == 0.0:
            return 0.0
        return self.pseudo / denom

    def to_dict(self) -> dict:
        return {
            "level": self.level,
            "pseudo": self.pseudo,
            "priors": self.priors,
            "likelihoods": [
                {"verb": v, "sense": s, "case": c, "table": dict(sorted(t.items()))}
                for (v, s, c), t in sorted(self.likelihoods.items())
            ],
        }

    def serialize(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2)


def nb_train(
    db: SenseDatabase, thesaurus: Thesaurus, level: int = 5, pseudo: float = 1.0
) -> NbModel:
    """Estimate priors from sense frequencies and smoothed class likelihoods.

    The class vocabulary is shared per (verb, case) across senses; each
    (sense, case) table is additively smoothed over that vocabulary and sums
    to one. All-zero sense frequencies fall back to uniform priors.
    """
    if pseudo < 0:
        raise ValueError(f"pseudo must be >= 0, got {pseudo}")
    priors: dict[str, dict[str, float]] = {}
    likelihoods: dict[tuple[str, str, str], dict[str, float]] = {}
    vocab: dict[tuple[str, str], frozenset[str]] = {}
    token_totals: dict[tuple[str, str, str], int] = {}
    fallback: dict[str, str] = {}

    for verb in db.verbs():
        senses = db.senses(verb)
        freqs = {s: db.sense_freq(verb, s) for s in senses}
        total_freq = sum(freqs.values())
        if total_freq > 0:
            priors[verb] = {s: freqs[s] / total_freq for s in senses}
        else:
            priors[verb] = {s: 1.0 / len(senses) for s in senses}
        fallback[verb] = db.most_frequent_sense(verb)

        for case in sorted(db.cases(verb)):
            counts: dict[str, Counter] = {}
            observed: set[str] = set()
            for sense in senses:
                if case not in db.frame(verb, sense):
                    continue
                counter: Counter = Counter()
                for noun, freq in db.fillers(verb, sense, case).items():
                    for cls in thesaurus.generalize(noun, level):
                        counter[cls] += freq
                counts[sense] = counter
                observed |= set(counter)
            vocab[(verb, case)] = frozenset(observed)
            for sense, counter in counts.items():
                total = sum(counter.values())
                token_totals[(verb, sense, case)] = total
                denom = total + pseudo * len(observed)
                if denom == 0.0:
                    likelihoods[(verb, sense, case)] = {}
                    continue
                likelihoods[(verb, sense, case)] = {
                    cls: (counter[cls] + pseudo) / denom for cls in observed
                }
    return NbModel(
        level=level,
        pseudo=pseudo,
        priors=priors,
        likelihoods=likelihoods,
        vocab=vocab,
        token_totals=token_totals,
        fallback=fallback,
        thesaurus=thesaurus,
    )


def nb_joint_scores(model: NbModel, x: Example) -> dict[str, float]:
    """Unnormalized P(s) * prod_c P(class(n_c) | s, c) over the input cases."""
    if x.verb not in model.priors:
        raise ValueError(f"unknown verb {x.verb!r}")
    scores: dict[str, float] = {}
    for sense, prior in model.priors[x.verb].items():
        value = prior
        for case, noun in x.slots:
            classes = model.thesaurus.generalize(noun, model.level)
            value *= sum(model.class_prob(x.verb, sense, case, cls) for cls in classes)
        scores[sense] = value
    return scores


def nb_posteriors(model: NbModel, x: Example) -> dict[str, float]:
    """Joint scores normalized to sum to one (uniform when all joints are zero)."""
    joint = nb_joint_scores(model, x)
    total = sum(joint.values())
    if total == 0.0:
        return {s: 1.0 / len(joint) for s in joint}
    return {s: v / total for s, v in joint.items()}


def nb_disambiguate(model: NbModel, x: Example) -> str:
    """Argmax of the joint score; ties fall back to the majority sense."""
    joint = nb_joint_scores(model, x)
    top = max(joint.values())
    tied = sorted(s for s, v in joint.items() if v == top)
    if len(tied) == 1:
        return tied[0]
    return model.fallback[x.verb]
