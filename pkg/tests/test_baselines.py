"""Baseline methods: majority sense, association rules, Naive Bayes."""

from __future__ import annotations

import math

import pytest

from senselearn.baselines import (
    induce_rules,
    most_frequent_sense,
    nb_disambiguate,
    nb_joint_scores,
    nb_posteriors,
    nb_train,
    rule_based_disambiguate,
)
from senselearn.corpus import Example
from senselearn.database import SenseDatabase

from .conftest import make_example, thesaurus_from_codes

THESAURUS = thesaurus_from_codes(
    {
        "a1": "111111",
        "a2": "111112",
        "a3": "111121",
        "b1": "222111",
        "b2": "222112",
        "c1": "333111",
    }
)


def build_db(rows):
    """rows: (sense, case, nouns) with freq bumps counted per example."""
    db = SenseDatabase()
    for sense, case, _ in rows:
        db.declare_sense("v", sense, [case])
    for sense, case, nouns in rows:
        for noun in nouns:
            db.add_example(Example(id=f"{sense}-{case}-{noun}-{id(nouns)}", verb="v",
                                   slots=((case, noun),)), sense)
    return db


class TestMostFrequent:
    def test_plain_majority(self):
        db = build_db([("s1", "c1", ["a1"] * 5), ("s2", "c1", ["b1"] * 3)])
        assert most_frequent_sense(db, "v") == "s1"

    def test_tie_uses_id_order(self):
        db = build_db([("s1", "c1", ["a1"] * 2), ("s2", "c1", ["b1"] * 2)])
        assert most_frequent_sense(db, "v") == "s1"


class TestInduceRules:
    def test_zero_association_when_class_is_uninformative(self):
        # both senses draw from the same class: P(r|s,c) == P(r|c) -> A == 0
        db = build_db([("s1", "c1", ["a1", "a2"]), ("s2", "c1", ["a2", "a1"])])
        rules = induce_rules(db, THESAURUS, theta=-1.0)
        for cls, assoc in rules.accepted("v", "s1", "c1").items():
            assert assoc == pytest.approx(0.0)

    def test_hand_association_value(self):
        # class 2221 dominates all of s1's fillers and half of the tokens overall
        db = build_db([("s1", "c1", ["b1", "b2"]), ("s2", "c1", ["a1", "c1"])])
        rules = induce_rules(db, THESAURUS, theta=0.0)
        assert rules.accepted("v", "s1", "c1")["2221"] == pytest.approx(math.log(2))

    def test_infinite_threshold_empties_ruleset(self):
        db = build_db([("s1", "c1", ["b1"]), ("s2", "c1", ["a1"])])
        rules = induce_rules(db, THESAURUS, theta=math.inf)
        assert rules.rules == {}

    def test_monotone_shrinking_in_theta(self):
        db = build_db(
            [("s1", "c1", ["b1", "b2", "a1"]), ("s2", "c1", ["a1", "a2", "c1"])]
        )
        low = induce_rules(db, THESAURUS, theta=0.0)
        high = induce_rules(db, THESAURUS, theta=0.3)
        for key, classes in high.rules.items():
            assert set(classes) <= set(low.rules.get(key, {}))


class TestRuleBased:
    def test_unique_qualifier_wins(self):
        db = build_db([("s1", "c1", ["b1", "b2"]), ("s2", "c1", ["a1", "a2"])])
        rules = induce_rules(db, THESAURUS, theta=0.1)
        x = make_example("q", "v", [("c1", "b1")])
        assert rule_based_disambiguate(rules, db, THESAURUS, x) == "s1"

    def test_empty_ruleset_falls_back(self):
        db = build_db([("s1", "c1", ["b1"] * 3), ("s2", "c1", ["a1"])])
        rules = induce_rules(db, THESAURUS, theta=math.inf)
        x = make_example("q", "v", [("c1", "b1")])
        assert rule_based_disambiguate(rules, db, THESAURUS, x) == "s1"  # majority

    def test_multiple_qualifiers_fall_back(self):
        db = build_db(
            [("s1", "c1", ["a1", "a1", "a1"]), ("s2", "c1", ["a2"])]
        )
        rules = induce_rules(db, THESAURUS, theta=-10.0)  # accept everything
        x = make_example("q", "v", [("c1", "a1")])
        assert rule_based_disambiguate(rules, db, THESAURUS, x) == "s1"

    def test_unknown_verb(self):
        db = build_db([("s1", "c1", ["a1"]), ("s2", "c1", ["b1"])])
        rules = induce_rules(db, THESAURUS, theta=0.0)
        with pytest.raises(ValueError, match="unknown verb"):
            rule_based_disambiguate(rules, db, THESAURUS, make_example("q", "zzz", [("c1", "a1")]))


class TestNaiveBayes:
    def test_identical_likelihoods_pick_prior(self):
        db = build_db(
            [("s1", "c1", ["a1", "a1", "a1"]), ("s2", "c1", ["a1"])]
        )
        model = nb_train(db, THESAURUS, level=5, pseudo=1.0)
        x = make_example("q", "v", [("c1", "a1")])
        assert nb_disambiguate(model, x) == "s1"

    def test_hand_product_with_unsmoothed_tables(self):
        # priors 0.5/0.5; class 11111 likelihoods 0.8 vs 0.2
        db = build_db(
            [
                ("s1", "c1", ["a1", "a1", "a2", "a2", "b1"]),
                ("s2", "c1", ["a1", "b1", "b2", "b2", "b1"]),
            ]
        )
        model = nb_train(db, THESAURUS, level=5, pseudo=0.0)
        assert model.priors["v"] == {"s1": 0.5, "s2": 0.5}
        assert model.class_prob("v", "s1", "c1", "11111") == pytest.approx(0.8)
        assert model.class_prob("v", "s2", "c1", "11111") == pytest.approx(0.2)
        x = make_example("q", "v", [("c1", "a1")])
        joint = nb_joint_scores(model, x)
        assert joint["s1"] == pytest.approx(0.5 * 0.8)
        assert joint["s2"] == pytest.approx(0.5 * 0.2)
        assert nb_disambiguate(model, x) == "s1"

    def test_unseen_class_stays_positive(self):
        db = build_db([("s1", "c1", ["a1"]), ("s2", "c1", ["b1"])])
        model = nb_train(db, THESAURUS, level=5, pseudo=1.0)
        x = make_example("q", "v", [("c1", "zzz-unknown")])
        joint = nb_joint_scores(model, x)
        assert all(value > 0.0 for value in joint.values())

    def test_posteriors_normalize(self):
        db = build_db(
            [("s1", "c1", ["a1", "b1"]), ("s2", "c1", ["a2", "c1"]), ("s3", "c1", ["b2"])]
        )
        model = nb_train(db, THESAURUS, level=5, pseudo=1.0)
        for noun in ("a1", "b1", "zzz"):
            posterior = nb_posteriors(model, make_example("q", "v", [("c1", noun)]))
            assert sum(posterior.values()) == pytest.approx(1.0, abs=1e-9)

    def test_likelihood_tables_normalize_over_vocabulary(self):
        db = build_db(
            [("s1", "c1", ["a1", "b1", "b1"]), ("s2", "c1", ["a2", "c1"])]
        )
        model = nb_train(db, THESAURUS, level=5, pseudo=1.0)
        for key, table in model.likelihoods.items():
            assert sum(table.values()) == pytest.approx(1.0, abs=1e-9)
