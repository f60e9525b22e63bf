"""Pool-based selective sampling with incremental O(pool) cache maintenance.

The state keeps, for every unlabeled example, the best similarity against the
stored fillers per (sense, case), the weighted sense scores, and the
interpretation certainty. Committing a label touches each pool example at
most once per case (a max update), so the per-iteration cost stays linear in
the pool instead of quadratic.

Training utility of a candidate is the summed certainty change it would cause
across its affected pool neighbors if committed; the thesaurus backend finds
those neighbors by walking the candidate filler's ancestor buckets instead of
scanning the pool.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .corpus import Example, ExampleSet
from .database import SenseDatabase, inventory_from_corpus
from .engine import EngineConfig, certainty_value
from .similarity import ThesaurusSimilarity
from .thesaurus import MAX_SIM, SIM_TABLE, Thesaurus

STRATEGY_KINDS = ("tu", "uncertainty", "committee", "random")
TU_MODES = ("signed", "positive-only")


@dataclass
class Strategy:
    """Sampling strategy plus its parameters and RNG seed."""

    kind: str
    seed: int = 0
    k: int = 1
    committee_size: int = 2
    member_fraction: float = 0.5
    rng: random.Random = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if self.kind not in STRATEGY_KINDS:
            raise ValueError(f"strategy must be one of {STRATEGY_KINDS}, got {self.kind!r}")
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.committee_size < 2:
            raise ValueError("committee_size must be >= 2")
        if not 0.0 < self.member_fraction <= 1.0:
            raise ValueError("member_fraction must be in (0, 1]")
        self.rng = random.Random(self.seed)


@dataclass
class HistoryRecord:
    iteration: int
    strategy: str
    example_id: str
    assigned_sense: str
    pool_accuracy: float | None
    certainty_mean: float | None

    def to_record(self) -> dict:
        return {
            "iteration": self.iteration,
            "strategy": self.strategy,
            "example_id": self.example_id,
            "assigned_sense": self.assigned_sense,
            "pool_accuracy": self.pool_accuracy,
            "certainty_mean": self.certainty_mean,
        }


def serialize_history(records: Iterable[HistoryRecord]) -> str:
    return "".join(json.dumps(r.to_record()) + "\n" for r in records)


@dataclass
class CommitResult:
    example: Example
    sense: str
    added_slots: tuple[tuple[str, str], ...]
    changed_ccd_cases: frozenset[str]
    touched: frozenset[str]
    sim_evals: int


class CcdTable:
    """Per-(verb, case) contribution weights kept in sync with the database."""

    def __init__(self, db: SenseDatabase, thesaurus: Thesaurus, level: int) -> None:
        self.db = db
        self.thesaurus = thesaurus
        self.level = level
        self._class_sets: dict[tuple[str, str, str], set[str]] = {}
        self.values: dict[tuple[str, str], float] = {}
        for verb in db.verbs():
            for sense in db.senses(verb):
                for case in db.frame(verb, sense):
                    classes: set[str] = set()
                    for noun in db.fillers(verb, sense, case):
                        classes |= thesaurus.generalize(noun, level)
                    self._class_sets[(verb, sense, case)] = classes
            for case in db.cases(verb):
                self.values[(verb, case)] = self._recompute(verb, case)

    def value(self, verb: str, case: str) -> float:
        # cases no sense subcategorizes cannot discriminate; weight 1 by convention
        return self.values.get((verb, case), 1.0)

    def _recompute(self, verb: str, case: str) -> float:
        senses = [s for s in self.db.senses(verb) if case in self.db.frame(verb, s)]
        if len(senses) < 2:
            return 1.0
        total = 0.0
        pairs = 0
        for i, si in enumerate(senses):
            ei = self._class_sets[(verb, si, case)]
            for sj in senses[i + 1 :]:
                ej = self._class_sets[(verb, sj, case)]
                denom = len(ei) + len(ej)
                if denom:
                    total += (denom - 2 * len(ei & ej)) / denom
                pairs += 1
        return total / pairs

    def apply_commit(
        self, verb: str, sense: str, added_slots: Sequence[tuple[str, str]]
    ) -> frozenset[str]:
        """Fold new fillers into the class sets; returns cases whose value moved."""
        changed: set[str] = set()
        for case, noun in added_slots:
            classes = self.thesaurus.generalize(noun, self.level)
            stored = self._class_sets.setdefault((verb, sense, case), set())
            if not classes <= stored:
                stored |= classes
                new_value = self._recompute(verb, case)
                if new_value != self.values[(verb, case)]:
                    self.values[(verb, case)] = new_value
                    changed.add(case)
        return frozenset(changed)


def _certainty_from_scores(scores: dict[str, float], lam: float) -> float:
    if not scores:
        return 0.0
    top = second = 0.0
    first = True
    for value in scores.values():
        if first:
            top = value
            first = False
        elif value > top:
            second = top
            top = value
        elif value > second:
            second = value
    if len(scores) == 1:
        second = 0.0
    return certainty_value(top, second, lam)


class WsdCache:
    """Incrementally maintained disambiguation state for a fixed example set."""

    def __init__(
        self,
        db: SenseDatabase,
        cfg: EngineConfig,
        ccd: CcdTable,
        examples: Iterable[Example],
    ) -> None:
        self.db = db
        self.cfg = cfg
        self.ccd = ccd
        self.examples: dict[str, Example] = {}
        self.survivors: dict[str, tuple[str, ...]] = {}
        # example -> sense -> case -> (best similarity, nearest stored filler)
        self.sims: dict[str, dict[str, dict[str, tuple[float, str | None]]]] = {}
        self.scores: dict[str, dict[str, float]] = {}
        self.certainty: dict[str, float] = {}
        for example in examples:
            self.add_example(example)

    def __len__(self) -> int:
        return len(self.examples)

    def add_example(self, example: Example) -> None:
        if example.verb not in self.db:
            raise ValueError(f"unknown verb {example.verb!r} for example {example.id!r}")
        self.examples[example.id] = example
        survivors = tuple(self.db.surviving_senses(example))
        self.survivors[example.id] = survivors
        provider = self.cfg.provider
        entry: dict[str, dict[str, tuple[float, str | None]]] = {}
        for sense in survivors:
            row: dict[str, tuple[float, str | None]] = {}
            for case, noun in example.slots:
                best = 0.0
                arg: str | None = None
                for stored in self.db.fillers(example.verb, sense, case):
                    value = provider.sim(noun, stored)
                    if value > best:
                        best, arg = value, stored
                row[case] = (best, arg)
            entry[sense] = row
        self.sims[example.id] = entry
        self._rescore(example.id)

    def remove(self, example_id: str) -> None:
        for table in (self.examples, self.survivors, self.sims, self.scores, self.certainty):
            table.pop(example_id, None)

    def _rescore(self, example_id: str) -> bool:
        """Recompute scores and certainty from sims + current CCD; True if changed."""
        example = self.examples[example_id]
        entry = self.sims[example_id]
        weights = [self.ccd.value(example.verb, case) for case in example.cases]
        denom = sum(weights)
        new_scores: dict[str, float] = {}
        for sense, row in entry.items():
            if denom == 0.0:
                new_scores[sense] = 0.0
            else:
                num = sum(row[case][0] * w for case, w in zip(example.cases, weights))
                new_scores[sense] = num / denom
        new_certainty = _certainty_from_scores(new_scores, self.cfg.certainty_lambda)
        changed = (
            new_scores != self.scores.get(example_id)
            or new_certainty != self.certainty.get(example_id)
        )
        self.scores[example_id] = new_scores
        self.certainty[example_id] = new_certainty
        return changed

    def apply_commit(
        self,
        x: Example,
        sense: str,
        added_slots: Sequence[tuple[str, str]],
        changed_ccd_cases: frozenset[str],
    ) -> set[str]:
        """One pass over the cached examples after `x` joined the database.

        Returns the ids whose sims, scores, or certainty changed.
        """
        provider = self.cfg.provider
        touched: set[str] = set()
        for example_id, example in self.examples.items():
            if example.verb != x.verb:
                continue
            dirty = False
            row = self.sims[example_id].get(sense)
            if row is not None:
                for case, new_noun in added_slots:
                    current = row.get(case)
                    if current is None:
                        continue
                    value = provider.sim(example.filler(case), new_noun)
                    if value > current[0]:
                        row[case] = (value, new_noun)
                        dirty = True
            if dirty or any(case in changed_ccd_cases for case in example.cases):
                if self._rescore(example_id) or dirty:
                    touched.add(example_id)
        return touched

    def predict(self, example_id: str) -> str:
        """Decision-rule choice from the cached sims (no similarity evaluations)."""
        example = self.examples[example_id]
        survivors = self.survivors[example_id]
        if not survivors:
            return self.db.most_frequent_sense(example.verb)
        sims = self.sims[example_id]
        if self.cfg.decision == "weighted":
            if self.cfg.alpha == 1.0:
                decision_scores = self.scores[example_id]
            else:
                weights = {
                    case: self.ccd.value(example.verb, case) ** self.cfg.alpha
                    for case in example.cases
                }
                denom = sum(weights.values())
                decision_scores = {}
                for sense in survivors:
                    if denom == 0.0:
                        decision_scores[sense] = 0.0
                    else:
                        decision_scores[sense] = (
                            sum(sims[sense][c][0] * w for c, w in weights.items()) / denom
                        )
            top = max(decision_scores.values())
            tied = [s for s in survivors if decision_scores[s] == top]
        else:
            tied = list(survivors)
            for case in sorted(
                example.cases, key=lambda c: (-self.ccd.value(example.verb, c), c)
            ):
                if len(tied) <= 1:
                    break
                best = max(sims[s][case][0] for s in tied)
                tied = [s for s in tied if sims[s][case][0] == best]
        if len(tied) == 1:
            return tied[0]
        return self.db.most_frequent_sense(example.verb, among=tied)


class _PrefixBuckets:
    """(verb, case, code prefix) -> pool example ids, for neighbor retrieval."""

    def __init__(self, thesaurus: Thesaurus) -> None:
        self.thesaurus = thesaurus
        self._index: dict[tuple[str, str, str], set[str]] = {}
        self._sim_by_level = {
            level: SIM_TABLE[2 * (thesaurus.depth - level)] / MAX_SIM
            for level in range(1, thesaurus.depth + 1)
        }

    def add(self, example: Example) -> None:
        for case, noun in example.slots:
            for code in self.thesaurus.codes(noun):
                for level in range(1, self.thesaurus.depth + 1):
                    key = (example.verb, case, code[:level])
                    self._index.setdefault(key, set()).add(example.id)

    def remove(self, example: Example) -> None:
        for case, noun in example.slots:
            for code in self.thesaurus.codes(noun):
                for level in range(1, self.thesaurus.depth + 1):
                    bucket = self._index.get((example.verb, case, code[:level]))
                    if bucket:
                        bucket.discard(example.id)

    def candidates(self, verb: str, case: str, noun: str) -> dict[str, float]:
        """Pool examples with positive similarity to `noun` in this case slot.

        Values are exact pair similarities (max over leaf-code pairs): walking
        levels deepest-first means the first bucket containing an id already
        carries its best value for one code, and the max over the candidate's
        codes is taken across walks.
        """
        best: dict[str, float] = {}
        for code in self.thesaurus.codes(noun):
            for level in range(self.thesaurus.depth, 0, -1):
                bucket = self._index.get((verb, case, code[:level]))
                if not bucket:
                    continue
                value = self._sim_by_level[level]
                for example_id in bucket:
                    if best.get(example_id, 0.0) < value:
                        best[example_id] = value
        return best


class SamplerState:
    """Labeled store D, unlabeled pool X, and the caches that keep them consistent."""

    def __init__(
        self,
        db: SenseDatabase,
        pool: ExampleSet,
        cfg: EngineConfig,
        *,
        utility_k: int = 1,
        tu_mode: str = "signed",
        tu_refresh_every: int = 25,
    ) -> None:
        if tu_mode not in TU_MODES:
            raise ValueError(f"tu_mode must be one of {TU_MODES}")
        self.db = db
        self.cfg = cfg
        self.utility_k = utility_k
        self.tu_mode = tu_mode
        self.tu_refresh_every = tu_refresh_every
        self.ccd = CcdTable(db, cfg.thesaurus, cfg.smoothing_level)
        self.cache = WsdCache(db, cfg, self.ccd, pool)
        self.history: list[HistoryRecord] = []
        self.iteration = 0
        self.sim_evals_last_commit = 0
        self._tu_value: dict[str, float] = {}
        self._tu_neighborhood: dict[str, frozenset[str]] = {}
        self._tu_invalid: set[str] = set(self.cache.examples)
        self._commits_since_refresh = 0
        self._buckets: _PrefixBuckets | None = None
        if isinstance(cfg.provider, ThesaurusSimilarity):
            self._buckets = _PrefixBuckets(cfg.thesaurus)
            for example in self.cache.examples.values():
                self._buckets.add(example)

    # -- pool access ---------------------------------------------------------

    def pool_ids(self) -> list[str]:
        return list(self.cache.examples)

    def pool_size(self) -> int:
        return len(self.cache.examples)

    def pool_example(self, example_id: str) -> Example:
        try:
            return self.cache.examples[example_id]
        except KeyError:
            raise ValueError(f"example {example_id!r} is not in the pool") from None

    def labeled_size(self) -> int:
        return sum(
            self.db.sense_freq(verb, sense)
            for verb in self.db.verbs()
            for sense in self.db.senses(verb)
        )

    def pool_accuracy(self) -> float | None:
        """Decision-rule accuracy over gold-labeled pool examples."""
        correct = 0
        total = 0
        for example_id, example in self.cache.examples.items():
            if example.gold_sense is None:
                continue
            total += 1
            if self.cache.predict(example_id) == example.gold_sense:
                correct += 1
        if total == 0:
            return None
        return correct / total

    def mean_certainty(self) -> float | None:
        if not self.cache.certainty:
            return None
        return sum(self.cache.certainty.values()) / len(self.cache.certainty)

    # -- neighbor retrieval ----------------------------------------------------

    def _case_candidates(self, verb: str, case: str, noun: str) -> dict[str, float]:
        if self._buckets is not None:
            found = self._buckets.candidates(verb, case, noun)
            # one accounted evaluation per candidate the walk yields
            self.cfg.provider.calls += len(found)
            return found
        provider = self.cfg.provider
        found = {}
        for example_id, example in self.cache.examples.items():
            if example.verb != verb:
                continue
            filler = example.filler(case)
            if filler is None:
                continue
            value = provider.sim(filler, noun)
            if value > 0.0:
                found[example_id] = value
        return found

    def _improving_sims(self, x: Example, sense: str) -> dict[str, dict[str, float]]:
        """Pool examples whose best (sense, case) similarity `x` would raise."""
        frame = self.db.frame(x.verb, sense)
        improved: dict[str, dict[str, float]] = {}
        for case, noun in x.slots:
            if case not in frame:
                continue
            for example_id, value in self._case_candidates(x.verb, case, noun).items():
                row = self.cache.sims[example_id].get(sense)
                if row is None:
                    continue
                current = row.get(case)
                if current is not None and value > current[0]:
                    improved.setdefault(example_id, {})[case] = value
        return improved

    def affected_set(self, x: Example | str, sense: str) -> set[str]:
        """Ids of pool examples whose sense score changes if `x` joins `sense`."""
        example = self._resolve_pool_example(x)
        if sense not in self.db.senses(example.verb):
            raise ValueError(f"verb {example.verb!r} has no sense {sense!r}")
        return set(self._improving_sims(example, sense))

    def _resolve_pool_example(self, x: Example | str) -> Example:
        example_id = x.id if isinstance(x, Example) else x
        return self.pool_example(example_id)

    # -- training utility -------------------------------------------------------

    def training_utility_for_sense(self, x: Example | str, sense: str) -> float:
        """Summed certainty change over the affected neighbors of hypothetically
        committing `x` with `sense` (contribution weights frozen)."""
        return self._utility_for_sense(self._resolve_pool_example(x), sense)[0]

    def _utility_for_sense(self, x: Example, sense: str) -> tuple[float, frozenset[str]]:
        improved = self._improving_sims(x, sense)
        lam = self.cfg.certainty_lambda
        total = 0.0
        for example_id, updates in improved.items():
            example = self.cache.examples[example_id]
            row = self.cache.sims[example_id][sense]
            num = 0.0
            denom = 0.0
            for case in example.cases:
                weight = self.ccd.value(example.verb, case)
                value = updates.get(case)
                if value is None:
                    value = row[case][0]
                num += value * weight
                denom += weight
            new_score = num / denom if denom else 0.0
            new_scores = dict(self.cache.scores[example_id])
            new_scores[sense] = new_score
            delta = (
                _certainty_from_scores(new_scores, lam) - self.cache.certainty[example_id]
            )
            if self.tu_mode == "positive-only" and delta < 0.0:
                continue
            total += delta
        return total, frozenset(improved)

    def training_utility(self, x: Example | str, k: int | None = None) -> float:
        return self._training_utility(self._resolve_pool_example(x), k or self.utility_k)[0]

    def _k_best_senses(self, example_id: str, k: int) -> list[str]:
        scores = self.cache.scores[example_id]
        if not scores:
            return []
        ranked = sorted(scores.items(), key=lambda kv: (-kv[1], kv[0]))
        if k >= len(ranked):
            return [sense for sense, _ in ranked]
        cutoff = ranked[k - 1][1]
        return [sense for sense, value in ranked if value >= cutoff]

    def _training_utility(self, x: Example, k: int) -> tuple[float, frozenset[str]]:
        senses = self._k_best_senses(x.id, k)
        if not senses:
            return 0.0, frozenset()
        total = 0.0
        neighborhood: set[str] = set()
        for sense in senses:
            value, affected = self._utility_for_sense(x, sense)
            total += value
            neighborhood |= affected
        return total / len(senses), frozenset(neighborhood)

    def refresh_training_utilities(self) -> None:
        for example_id in list(self._tu_invalid):
            if example_id not in self.cache.examples:
                self._tu_invalid.discard(example_id)
                continue
            example = self.cache.examples[example_id]
            value, neighborhood = self._training_utility(example, self.utility_k)
            self._tu_value[example_id] = value
            self._tu_neighborhood[example_id] = neighborhood
        self._tu_invalid.clear()

    def training_utilities(self) -> dict[str, float]:
        self.refresh_training_utilities()
        return dict(self._tu_value)

    # -- commits -----------------------------------------------------------------

    def commit_label(
        self, x: Example | str, sense: str, *, strategy: str = "manual"
    ) -> CommitResult:
        """Move a pool example into the database and repair every cache.

        Validation happens before any mutation; on error the state is
        unchanged.
        """
        example = self._resolve_pool_example(x)
        if sense not in self.db.senses(example.verb):
            raise ValueError(f"verb {example.verb!r} has no sense {sense!r}")
        calls_before = self.cfg.provider.calls

        added = self.db.add_example(example, sense)
        changed_cases = self.ccd.apply_commit(example.verb, sense, added)
        self.cache.remove(example.id)
        if self._buckets is not None:
            self._buckets.remove(example)
        touched = self.cache.apply_commit(example, sense, added, changed_cases)
        touched.add(example.id)

        self._tu_value.pop(example.id, None)
        self._tu_neighborhood.pop(example.id, None)
        self._tu_invalid.discard(example.id)
        self._commits_since_refresh += 1
        if self._commits_since_refresh >= self.tu_refresh_every:
            self._tu_invalid = set(self.cache.examples)
            self._commits_since_refresh = 0
        else:
            for example_id in self.cache.examples:
                if example_id in self._tu_invalid:
                    continue
                neighborhood = self._tu_neighborhood.get(example_id)
                if neighborhood is None or example_id in touched or neighborhood & touched:
                    self._tu_invalid.add(example_id)

        self.iteration += 1
        self.sim_evals_last_commit = self.cfg.provider.calls - calls_before
        record = HistoryRecord(
            iteration=self.iteration,
            strategy=strategy,
            example_id=example.id,
            assigned_sense=sense,
            pool_accuracy=self.pool_accuracy(),
            certainty_mean=self.mean_certainty(),
        )
        self.history.append(record)
        return CommitResult(
            example=example,
            sense=sense,
            added_slots=tuple(added),
            changed_ccd_cases=changed_cases,
            touched=frozenset(touched),
            sim_evals=self.sim_evals_last_commit,
        )

    # -- selection -----------------------------------------------------------------

    def select(self, strategy: Strategy) -> Example:
        if not self.cache.examples:
            raise ValueError("pool is empty")
        if strategy.kind == "tu":
            if strategy.k != self.utility_k:
                self.utility_k = strategy.k
                self._tu_invalid = set(self.cache.examples)
            self.refresh_training_utilities()
            chosen = min(self._tu_value, key=lambda i: (-self._tu_value[i], i))
            return self.cache.examples[chosen]
        if strategy.kind == "uncertainty":
            chosen = min(self.cache.certainty, key=lambda i: (self.cache.certainty[i], i))
            return self.cache.examples[chosen]
        if strategy.kind == "random":
            return self.cache.examples[strategy.rng.choice(self.pool_ids())]
        return self._committee_select(strategy)

    def _committee_select(self, strategy: Strategy) -> Example:
        members = [
            _draw_member(self.db, strategy.rng, strategy.member_fraction)
            for _ in range(strategy.committee_size)
        ]
        disagreed: list[str] = []
        for example_id, example in self.cache.examples.items():
            votes = {self._member_predict(member, example) for member in members}
            if len(votes) > 1:
                disagreed.append(example_id)
        if disagreed:
            return self.cache.examples[strategy.rng.choice(disagreed)]
        return self.cache.examples[strategy.rng.choice(self.pool_ids())]

    def _member_predict(self, member: SenseDatabase, example: Example) -> str:
        """Classify with a committee member's fillers using the configured
        decision rule; contribution weights stay frozen at the parent table."""
        survivors = self.cache.survivors[example.id]
        if not survivors:
            return member.most_frequent_sense(example.verb)
        provider = self.cfg.provider
        sims: dict[str, dict[str, float]] = {}
        for sense in survivors:
            row = {}
            for case, noun in example.slots:
                best = 0.0
                for stored in member.fillers(example.verb, sense, case):
                    value = provider.sim(noun, stored)
                    if value > best:
                        best = value
                row[case] = best
            sims[sense] = row
        if self.cfg.decision == "weighted":
            weights = {
                case: self.ccd.value(example.verb, case) ** self.cfg.alpha
                for case in example.cases
            }
            denom = sum(weights.values())
            scores = {
                sense: (
                    sum(sims[sense][c] * w for c, w in weights.items()) / denom
                    if denom
                    else 0.0
                )
                for sense in survivors
            }
            top = max(scores.values())
            tied = [s for s in survivors if scores[s] == top]
        else:
            tied = list(survivors)
            for case in sorted(
                example.cases, key=lambda c: (-self.ccd.value(example.verb, c), c)
            ):
                if len(tied) <= 1:
                    break
                best = max(sims[s][case] for s in tied)
                tied = [s for s in tied if sims[s][case] == best]
        if len(tied) == 1:
            return tied[0]
        return member.most_frequent_sense(example.verb, among=tied)


def _draw_member(db: SenseDatabase, rng: random.Random, fraction: float) -> SenseDatabase:
    """Per-(sense, case) stratified random subset of the database's fillers."""
    member = db.copy()
    for verb, sense, case, counter in member.filler_items():
        elements = sorted(counter.elements())
        if not elements:
            continue
        size = max(1, round(fraction * len(elements)))
        member.set_fillers(verb, sense, case, rng.sample(elements, size))
    return member


# -- module-level operation wrappers ------------------------------------------


def affected_set(state: SamplerState, x: Example | str, sense: str) -> set[str]:
    return state.affected_set(x, sense)


def training_utility_for_sense(state: SamplerState, x: Example | str, sense: str) -> float:
    return state.training_utility_for_sense(x, sense)


def training_utility(state: SamplerState, x: Example | str, k: int = 1) -> float:
    return state.training_utility(x, k)


def select(state: SamplerState, strategy: Strategy) -> Example:
    return state.select(strategy)


def commit_label(
    state: SamplerState, x: Example | str, sense: str, *, strategy: str = "manual"
) -> CommitResult:
    return state.commit_label(x, sense, strategy=strategy)


def run_loop(
    state: SamplerState,
    strategy: Strategy,
    oracle: Callable[[Example], str],
    budget: int,
) -> list[HistoryRecord]:
    """Iterate select -> oracle -> commit until the budget or the pool runs out."""
    if budget < 0:
        raise ValueError("budget must be >= 0")
    records: list[HistoryRecord] = []
    for _ in range(budget):
        if state.pool_size() == 0:
            break
        example = state.select(strategy)
        sense = oracle(example)
        if sense not in state.db.senses(example.verb):
            raise ValueError(
                f"oracle returned invalid sense {sense!r} for {example.id!r}"
            )
        state.commit_label(example, sense, strategy=strategy.kind)
        records.append(state.history[-1])
    return records


def gold_oracle(examples: ExampleSet) -> Callable[[Example], str]:
    """Simulated expert: answers with the gold sense, errors when it is missing."""

    def oracle(example: Example) -> str:
        stored = examples.get(example.id) if example.id in examples else example
        if stored.gold_sense is None:
            raise ValueError(f"example {example.id!r} has no gold sense")
        return stored.gold_sense

    return oracle


def build_sampler(
    pool: ExampleSet,
    cfg: EngineConfig,
    *,
    seed_db: SenseDatabase | None = None,
    utility_k: int = 1,
    tu_mode: str = "signed",
    tu_refresh_every: int = 25,
) -> SamplerState:
    """Sampler over `pool`, initialized from a seed database or a bare inventory."""
    db = seed_db.copy() if seed_db is not None else inventory_from_corpus(pool)
    for example in pool:
        if example.verb not in db:
            raise ValueError(f"pool verb {example.verb!r} missing from the database")
    return SamplerState(
        db,
        pool,
        cfg,
        utility_k=utility_k,
        tu_mode=tu_mode,
        tu_refresh_every=tu_refresh_every,
    )


def initialize_from_scratch(
    state: SamplerState, oracle: Callable[[Example], str], seed: int = 0
) -> list[str]:
    """Commit one randomly drawn example per (verb, sense) to bootstrap the store.

    Returns the committed example ids; these commits are recorded with the
    "init" strategy tag and are not counted as sampled labels by the curve
    harness.
    """
    rng = random.Random(seed)
    committed: list[str] = []
    by_sense: dict[tuple[str, str], list[str]] = {}
    for example_id, example in state.cache.examples.items():
        if example.gold_sense is not None:
            by_sense.setdefault((example.verb, example.gold_sense), []).append(example_id)
    for verb in state.db.verbs():
        for sense in state.db.senses(verb):
            candidates = by_sense.get((verb, sense), [])
            candidates = [i for i in candidates if i in state.cache.examples]
            if not candidates:
                continue
            choice = rng.choice(sorted(candidates))
            sense_label = oracle(state.cache.examples[choice])
            state.commit_label(choice, sense_label, strategy="init")
            committed.append(choice)
    return committed
