"""Deterministic synthetic corpus and thesaurus generation.

Substitute for unavailable hand-built resources: a complete coded tree plus a
corpus whose case fillers are drawn from per-(sense, case) concept subtrees,
with a configurable confusion probability that swaps in another sense's
concept.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .corpus import Example, ExampleSet
from .thesaurus import Thesaurus

_DIGITS = "0123456789"


@dataclass(frozen=True)
class SyntheticConfig:
    branching: int
    num_senses: int
    cases: tuple[str, ...]
    examples_per_sense: int
    concept_level: int
    confusion: float
    seed: int
    verb: str = "v1"
    depth: int = 6
    concepts_per_sense: int = 1

    def __post_init__(self) -> None:
        if not 2 <= self.branching <= len(_DIGITS):
            raise ValueError(f"branching must be in [2, {len(_DIGITS)}]")
        if self.num_senses < 2:
            raise ValueError("num_senses must be >= 2")
        if not self.cases:
            raise ValueError("cases must be non-empty")
        if self.examples_per_sense < 1:
            raise ValueError("examples_per_sense must be >= 1")
        if not 1 <= self.concept_level <= self.depth:
            raise ValueError(f"concept_level must be in [1, {self.depth}]")
        if not 0.0 <= self.confusion <= 1.0:
            raise ValueError("confusion must be in [0, 1]")
        if self.concepts_per_sense < 1:
            raise ValueError("concepts_per_sense must be >= 1")

    def sense_ids(self) -> list[str]:
        return [f"s{i:02d}" for i in range(1, self.num_senses + 1)]

    @classmethod
    def from_dict(cls, data: dict) -> "SyntheticConfig":
        return cls(
            branching=data["branching"],
            num_senses=data["num_senses"],
            cases=tuple(data["cases"]),
            examples_per_sense=data["examples_per_sense"],
            concept_level=data["concept_level"],
            confusion=data["confusion"],
            seed=data["seed"],
            verb=data.get("verb", "v1"),
            depth=data.get("depth", 6),
            concepts_per_sense=data.get("concepts_per_sense", 1),
        )


def synthetic_thesaurus(branching: int, depth: int = 6) -> Thesaurus:
    """Complete tree of the given branching; one noun ``n<code>`` per leaf."""
    alphabet = _DIGITS[:branching]
    word_codes = {
        "n" + "".join(leaf): frozenset({"".join(leaf)})
        for leaf in itertools.product(alphabet, repeat=depth)
    }
    return Thesaurus(word_codes, depth)


def generate_synthetic(cfg: SyntheticConfig) -> tuple[Thesaurus, ExampleSet]:
    """Build the thesaurus and a gold-labeled corpus; byte-stable per seed.

    Each (sense, case) owns `concepts_per_sense` disjoint concept subtrees;
    an example picks one cluster index for all of its slots (sense clusters
    are coherent across cases), then draws each noun from the matching
    subtree, or with probability `confusion` from a random concept of a
    different sense.
    """
    thesaurus = synthetic_thesaurus(cfg.branching, cfg.depth)
    alphabet = _DIGITS[: cfg.branching]
    concept_nodes = ["".join(p) for p in itertools.product(alphabet, repeat=cfg.concept_level)]
    senses = cfg.sense_ids()
    needed = cfg.num_senses * cfg.concepts_per_sense
    if len(concept_nodes) < needed:
        raise ValueError(
            f"only {len(concept_nodes)} concept subtrees at level {cfg.concept_level}, "
            f"need {needed}"
        )

    rng = random.Random(cfg.seed)
    concepts: dict[tuple[str, str], list[str]] = {}
    for case in cfg.cases:
        chosen = rng.sample(concept_nodes, needed)
        for index, sense in enumerate(senses):
            start = index * cfg.concepts_per_sense
            concepts[(sense, case)] = chosen[start : start + cfg.concepts_per_sense]

    suffix_len = cfg.depth - cfg.concept_level

    def draw_noun(sense: str, case: str, cluster: int) -> str:
        source, source_cluster = sense, cluster
        if cfg.confusion > 0 and rng.random() < cfg.confusion:
            source = rng.choice([s for s in senses if s != sense])
            source_cluster = rng.randrange(cfg.concepts_per_sense)
        suffix = "".join(rng.choice(alphabet) for _ in range(suffix_len))
        return "n" + concepts[(source, case)][source_cluster] + suffix

    examples = []
    counter = 0
    for _round in range(cfg.examples_per_sense):
        for sense in senses:
            counter += 1
            cluster = rng.randrange(cfg.concepts_per_sense)
            slots = tuple((case, draw_noun(sense, case, cluster)) for case in cfg.cases)
            examples.append(
                Example(
                    id=f"{cfg.verb}-x{counter:04d}",
                    verb=cfg.verb,
                    slots=slots,
                    gold_sense=sense,
                )
            )
    return thesaurus, ExampleSet(examples)
