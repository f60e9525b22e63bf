"""Nearest-neighbor verb sense disambiguation.

Pipeline per input: discard senses whose case frame does not cover the input
cases, score the survivors from per-case best-filler similarities weighted by
each case's contribution to disambiguation (CCD), pick a sense by the
configured decision rule, and attach an interpretation certainty derived from
the top-two weighted scores.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .corpus import Example
from .database import SenseDatabase
from .similarity import SimilarityProvider, ThesaurusSimilarity, VsmSimilarity
from .thesaurus import Thesaurus
from .vectors import VectorTable

DECISION_MODES = ("weighted", "lexicographic")


@dataclass
class EngineConfig:
    """Similarity backend plus the scoring knobs.

    The thesaurus is required in both backends: CCD smoothing generalizes
    fillers into fixed-length code prefixes regardless of how noun similarity
    itself is computed.
    """

    provider: SimilarityProvider
    thesaurus: Thesaurus
    alpha: float = 1.0
    decision: str = "lexicographic"
    certainty_lambda: float = 0.5
    smoothing_level: int = 5

    def __post_init__(self) -> None:
        if self.alpha < 0:
            raise ValueError(f"alpha must be >= 0, got {self.alpha}")
        if self.decision not in DECISION_MODES:
            raise ValueError(f"decision must be one of {DECISION_MODES}")
        if not 0.0 <= self.certainty_lambda <= 1.0:
            raise ValueError(f"lambda must be in [0, 1], got {self.certainty_lambda}")
        if not 1 <= self.smoothing_level <= self.thesaurus.depth:
            raise ValueError(
                f"smoothing_level must be in [1, {self.thesaurus.depth}]"
            )

    @property
    def backend(self) -> str:
        return self.provider.backend

    @classmethod
    def thesaurus_backend(cls, thesaurus: Thesaurus, **kwargs) -> "EngineConfig":
        return cls(provider=ThesaurusSimilarity(thesaurus), thesaurus=thesaurus, **kwargs)

    @classmethod
    def vsm_backend(
        cls, vectors: VectorTable, thesaurus: Thesaurus, **kwargs
    ) -> "EngineConfig":
        return cls(provider=VsmSimilarity(vectors), thesaurus=thesaurus, **kwargs)


@dataclass
class ScoreReport:
    """Disambiguation outcome for one example."""

    example_id: str
    verb: str
    chosen: str
    tie_broken: bool
    certainty: float
    scores: dict[str, float]  # surviving sense -> weighted score
    sims: dict[str, dict[str, float]]  # sense -> case -> best filler similarity
    ccd: dict[str, float]  # case -> contribution weight (alpha = 1)
    survivors: tuple[str, ...] = ()

    @property
    def ranked(self) -> list[tuple[str, float]]:
        return sorted(self.scores.items(), key=lambda kv: (-kv[1], kv[0]))

    @property
    def score1(self) -> float:
        ranked = self.ranked
        return ranked[0][1] if ranked else 0.0

    @property
    def score2(self) -> float:
        ranked = self.ranked
        return ranked[1][1] if len(ranked) > 1 else 0.0

    def to_dict(self) -> dict:
        return {
            "example_id": self.example_id,
            "verb": self.verb,
            "chosen": self.chosen,
            "tie_broken": self.tie_broken,
            "certainty": self.certainty,
            "scores": {s: v for s, v in self.ranked},
            "sims": self.sims,
            "ccd": self.ccd,
            "survivors": list(self.survivors),
        }


def case_sim(
    cfg: EngineConfig, db: SenseDatabase, verb: str, sense: str, case: str, noun: str
) -> float:
    """Best similarity between `noun` and the stored fillers of (sense, case).

    An empty filler multiset scores 0; the case must be inside the sense's
    frame.
    """
    fillers = db.fillers(verb, sense, case)  # raises when case not in frame
    best = 0.0
    for stored in fillers:
        value = cfg.provider.sim(noun, stored)
        if value > best:
            best = value
    return best


def generalized_classes(
    db: SenseDatabase, thesaurus: Thesaurus, verb: str, sense: str, case: str, level: int
) -> frozenset[str]:
    """Set of `level`-length code prefixes covering the stored fillers."""
    classes: set[str] = set()
    for noun in db.fillers(verb, sense, case):
        classes |= thesaurus.generalize(noun, level)
    return frozenset(classes)


def compute_ccd(
    db: SenseDatabase,
    thesaurus: Thesaurus,
    verb: str,
    case: str,
    alpha: float = 1.0,
    smoothing_level: int = 5,
) -> float:
    """Contribution of `case` to disambiguating `verb`.

    Averages, over sense pairs subcategorizing the case, the symmetric
    difference ratio of their generalized filler class sets, then raises the
    mean to `alpha`. Fewer than two senses with the case means the case
    cannot discriminate pairs, so the weight defaults to 1.
    """
    senses = [s for s in db.senses(verb) if case in db.frame(verb, s)]
    if len(senses) < 2:
        return 1.0
    class_sets = {
        s: generalized_classes(db, thesaurus, verb, s, case, smoothing_level)
        for s in senses
    }
    total = 0.0
    pairs = 0
    for i, si in enumerate(senses):
        for sj in senses[i + 1 :]:
            ei, ej = class_sets[si], class_sets[sj]
            denom = len(ei) + len(ej)
            if denom:
                total += (denom - 2 * len(ei & ej)) / denom
            pairs += 1
    return (total / pairs) ** alpha


def ccd_map(
    cfg: EngineConfig, db: SenseDatabase, verb: str, cases, alpha: float = 1.0
) -> dict[str, float]:
    return {
        case: compute_ccd(db, cfg.thesaurus, verb, case, alpha, cfg.smoothing_level)
        for case in cases
    }


def weighted_score(
    sims: Mapping[str, float], ccd: Mapping[str, float], cases
) -> float:
    """CCD-weighted mean of per-case similarities; all-zero weights score 0."""
    num = 0.0
    denom = 0.0
    for case in cases:
        weight = ccd[case]
        num += sims[case] * weight
        denom += weight
    if denom == 0.0:
        return 0.0
    return num / denom


def score(cfg: EngineConfig, db: SenseDatabase, x: Example, sense: str) -> float:
    """Weighted score of `sense` for input `x` over the shared cases.

    Uses alpha=1 contribution weights: this is the scalar score that feeds
    certainty estimation in every decision mode.
    """
    frame = db.frame(x.verb, sense)
    cases = [case for case in x.cases if case in frame]
    if not cases:
        return 0.0
    sims = {case: case_sim(cfg, db, x.verb, sense, case, x.filler(case)) for case in cases}
    weights = ccd_map(cfg, db, x.verb, cases, alpha=1.0)
    return weighted_score(sims, weights, cases)


def certainty_value(score1: float, score2: float, lam: float) -> float:
    """Mix of the top score and the top-two margin, lam toward the top score."""
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lambda must be in [0, 1], got {lam}")
    return lam * score1 + (1.0 - lam) * (score1 - score2)


def certainty(report: ScoreReport, lam: float) -> float:
    return certainty_value(report.score1, report.score2, lam)


def _lexicographic_choice(
    survivors: list[str],
    sims: dict[str, dict[str, float]],
    ccd: Mapping[str, float],
    cases,
) -> list[str]:
    """Cascade over cases by descending contribution, keeping max-sim senses."""
    remaining = list(survivors)
    for case in sorted(cases, key=lambda c: (-ccd[c], c)):
        if len(remaining) <= 1:
            break
        best = max(sims[s][case] for s in remaining)
        remaining = [s for s in remaining if sims[s][case] == best]
    return remaining


def disambiguate(cfg: EngineConfig, db: SenseDatabase, x: Example) -> ScoreReport:
    """Full decision for one input; raises on unknown verbs."""
    if x.verb not in db:
        raise ValueError(f"unknown verb {x.verb!r}")
    all_senses = db.senses(x.verb)
    if not all_senses:
        raise ValueError(f"verb {x.verb!r} has no senses")

    survivors = db.surviving_senses(x)
    cases = list(x.cases)
    weights = ccd_map(cfg, db, x.verb, cases, alpha=1.0)
    sims = {
        s: {c: case_sim(cfg, db, x.verb, s, c, x.filler(c)) for c in cases}
        for s in survivors
    }
    scores = {s: weighted_score(sims[s], weights, cases) for s in survivors}

    tie_broken = False
    if not survivors:
        chosen = db.most_frequent_sense(x.verb)
        tie_broken = True
    elif cfg.decision == "weighted":
        if cfg.alpha == 1.0:
            decision_scores = scores
        else:
            alpha_weights = ccd_map(cfg, db, x.verb, cases, alpha=cfg.alpha)
            decision_scores = {
                s: weighted_score(sims[s], alpha_weights, cases) for s in survivors
            }
        top = max(decision_scores.values())
        tied = [s for s in survivors if decision_scores[s] == top]
        if len(tied) > 1:
            chosen = db.most_frequent_sense(x.verb, among=tied)
            tie_broken = True
        else:
            chosen = tied[0]
    else:
        remaining = _lexicographic_choice(survivors, sims, weights, cases)
        if len(remaining) != 1:
            chosen = db.most_frequent_sense(x.verb, among=remaining)
            tie_broken = True
        else:
            chosen = remaining[0]

    ranked = sorted(scores.values(), reverse=True)
    score1 = ranked[0] if ranked else 0.0
    score2 = ranked[1] if len(ranked) > 1 else 0.0
    return ScoreReport(
        example_id=x.id,
        verb=x.verb,
        chosen=chosen,
        tie_broken=tie_broken,
        certainty=certainty_value(score1, score2, cfg.certainty_lambda),
        scores=scores,
        sims=sims,
        ccd=dict(weights),
        survivors=tuple(survivors),
    )
