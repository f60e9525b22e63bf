"""Example-based verb sense disambiguation with utility-driven selective sampling."""

from .baselines import (
    NbModel,
    RuleSet,
    induce_rules,
    most_frequent_sense,
    nb_disambiguate,
    nb_posteriors,
    nb_train,
    rule_based_disambiguate,
)
from .corpus import (
    CorpusFormatError,
    Example,
    ExampleSet,
    TupleCounts,
    extract_cooccurrence,
    parse_corpus,
    parse_tuples,
    serialize_corpus,
    serialize_tuples,
    split_folds,
    tuples_from_examples,
)
from .database import (
    SenseDatabase,
    database_from_labeled,
    inventory_from_corpus,
    parse_seed_database,
)
from .engine import (
    EngineConfig,
    ScoreReport,
    case_sim,
    certainty,
    certainty_value,
    compute_ccd,
    disambiguate,
    score,
)
from .estimators import (
    MostFrequentSense,
    NaiveBayesSense,
    ResnikRuleClassifier,
    SenseDisambiguator,
    check_examples,
)
from .evaluation import (
    CurvePoint,
    accuracy,
    aggregate_curve,
    coverage_accuracy_sweep,
    cross_validate,
    exhaustive_accuracy,
    holdout_split,
    learning_curve,
    sweep_lambda_grid,
)
from .sampler import (
    SamplerState,
    Strategy,
    affected_set,
    build_sampler,
    commit_label,
    gold_oracle,
    initialize_from_scratch,
    run_loop,
    select,
    training_utility,
    training_utility_for_sense,
)
from .similarity import SimilarityProvider, ThesaurusSimilarity, VsmSimilarity
from .synthetic import SyntheticConfig, generate_synthetic, synthetic_thesaurus
from .thesaurus import SIM_TABLE, Thesaurus, load_thesaurus, serialize_thesaurus
from .vectors import VectorTable, build_vectors, serialize_vectors

__version__ = "0.1.0"
