"""Shared fixtures: hand-built thesauri/databases and synthetic instances."""

from __future__ import annotations

import random

import pytest

from senselearn.corpus import Example, ExampleSet
from senselearn.database import SenseDatabase
from senselearn.engine import EngineConfig
from senselearn.sampler import SamplerState, build_sampler
from senselearn.synthetic import SyntheticConfig, generate_synthetic
from senselearn.thesaurus import Thesaurus

# A small noun taxonomy for the "toru"-style reservation corpus. Humans sit
# under 11xxxx; vehicles, money, certificates, publications, tickets, places,
# and abstractions under separate top-level branches.
TORU_CODES = {
    "kare": "111111",
    "kanojo": "111112",
    "ani": "111211",
    "chichi": "111212",
    "suri": "112111",
    "gakusei": "113111",
    "joshu": "113112",
    "hisho": "113113",
    "kyaku": "113211",
    "ryokoukyaku": "113212",
    "dantai": "121111",
    "otoko": "114111",
    "uma": "211111",
    "hikouki": "221111",
    "shindaisha": "221112",
    "kane": "311111",
    "saifu": "311112",
    "menkyoshou": "411111",
    "shikaku": "411112",
    "biza": "411113",
    "shinbun": "421111",
    "zasshi": "421112",
    "kippu": "431111",
    "heya": "511111",
    "aidea": "611111",
}

TORU_SEED_ROWS = [
    ("s1", "ga", ["suri", "kanojo", "ani"]),
    ("s1", "wo", ["kane", "saifu", "otoko", "uma", "aidea"]),
    ("s2", "ga", ["kare", "kanojo", "gakusei"]),
    ("s2", "wo", ["menkyoshou", "shikaku", "biza"]),
    ("s3", "ga", ["kare", "chichi", "kyaku"]),
    ("s3", "wo", ["shinbun", "zasshi"]),
    ("s4", "ga", ["kare", "dantai", "ryokoukyaku", "joshu"]),
    ("s4", "wo", ["kippu", "heya", "hikouki"]),
]

# Taxonomy for the "yameru"-style quitting corpus: people under 11xxxx,
# organizations under 12xxxx, occupations under 113xxx, activities under 6.
YAMERU_CODES = {
    "seito": "111211",
    "ani": "111111",
    "musuko": "111112",
    "chichi": "111113",
    "shain": "112111",
    "kangofu": "112112",
    "hikoku": "112211",
    "sensyu": "112212",
    "shouten": "121111",
    "koujou": "121112",
    "shisetsu": "121113",
    "shitsumon": "611111",
    "eigyou": "621111",
    "sougyou": "621112",
    "unten": "621113",
    "renshuu": "622111",
    "kaisha": "121114",
    "byouin": "121115",
    "giin": "113111",
    "kyoushi": "113112",
}

YAMERU_POOL_ROWS = [
    ("x1", "shain", "eigyou"),
    ("x2", "shouten", "eigyou"),
    ("x3", "koujou", "sougyou"),
    ("x4", "shisetsu", "unten"),
    ("x5", "sensyu", "renshuu"),
    ("x6", "musuko", "kaisha"),
    ("x7", "kangofu", "byouin"),
    ("x8", "hikoku", "giin"),
    ("x9", "chichi", "kyoushi"),
]


def thesaurus_from_codes(codes: dict[str, str]) -> Thesaurus:
    depth = len(next(iter(codes.values())))
    return Thesaurus({w: frozenset({c}) for w, c in codes.items()}, depth)


@pytest.fixture(scope="session")
def toru_thesaurus() -> Thesaurus:
    return thesaurus_from_codes(TORU_CODES)


@pytest.fixture(scope="session")
def toru_db() -> SenseDatabase:
    db = SenseDatabase()
    for sense, case, nouns in TORU_SEED_ROWS:
        db.declare_sense("toru", sense, [case])
        db.add_fillers("toru", sense, case, nouns)
    return db


@pytest.fixture()
def toru_cfg(toru_thesaurus) -> EngineConfig:
    return EngineConfig.thesaurus_backend(toru_thesaurus)


def make_example(example_id, verb, slots, gold=None) -> Example:
    return Example(id=example_id, verb=verb, slots=tuple(slots), gold_sense=gold)


@pytest.fixture(scope="session")
def yameru_thesaurus() -> Thesaurus:
    return thesaurus_from_codes(YAMERU_CODES)


@pytest.fixture()
def yameru_state(yameru_thesaurus) -> SamplerState:
    """Two supervised quitting examples plus nine pool sentences."""
    db = SenseDatabase()
    db.declare_sense("yameru", "s1", ["ga", "wo"])
    db.declare_sense("yameru", "s2", ["ga", "wo"])
    db.add_fillers("yameru", "s1", "ga", ["seito"])
    db.add_fillers("yameru", "s1", "wo", ["shitsumon"])
    db.add_fillers("yameru", "s2", "ga", ["ani"])
    db.add_fillers("yameru", "s2", "wo", ["kaisha"])
    pool = ExampleSet(
        make_example(xid, "yameru", [("ga", ga), ("wo", wo)])
        for xid, ga, wo in YAMERU_POOL_ROWS
    )
    cfg = EngineConfig.thesaurus_backend(yameru_thesaurus)
    return SamplerState(db, pool, cfg)


def random_instance(
    seed: int,
    *,
    num_senses: int = 3,
    cases: tuple[str, ...] = ("c1", "c2"),
    examples_per_sense: int = 12,
    confusion: float = 0.2,
    concept_level: int = 2,
    branching: int = 3,
    verb: str = "v1",
    concepts_per_sense: int = 1,
):
    cfg = SyntheticConfig(
        branching=branching,
        num_senses=num_senses,
        cases=cases,
        examples_per_sense=examples_per_sense,
        concept_level=concept_level,
        confusion=confusion,
        seed=seed,
        verb=verb,
        concepts_per_sense=concepts_per_sense,
    )
    return generate_synthetic(cfg)


def scratch_state(
    thesaurus: Thesaurus,
    corpus: ExampleSet,
    seed: int = 0,
    *,
    init_examples: int = 1,
    certainty_lambda: float = 0.5,
    tu_refresh_every: int = 25,
) -> SamplerState:
    """Sampler over `corpus` bootstrapped with `init_examples` commits per sense."""
    cfg = EngineConfig.thesaurus_backend(thesaurus, certainty_lambda=certainty_lambda)
    state = build_sampler(corpus, cfg, tu_refresh_every=tu_refresh_every)
    rng = random.Random(seed)
    by_sense: dict[tuple[str, str], list[str]] = {}
    for example in corpus:
        by_sense.setdefault((example.verb, example.gold_sense), []).append(example.id)
    for (verb, sense), ids in sorted(by_sense.items()):
        for example_id in rng.sample(sorted(ids), min(init_examples, len(ids))):
            state.commit_label(example_id, sense, strategy="init")
    return state
