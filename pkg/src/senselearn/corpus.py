"""Corpus data model: examples, co-occurrence tuples, and fold splitting.

File formats (all UTF-8, line-delimited):

* corpus       -- one JSON object per line:
                  ``{"id": ..., "verb": ..., "slots": [{"case": ..., "noun": ...}], "gold_sense": ...}``
* tuples       -- tab-separated ``noun<TAB>case<TAB>verb<TAB>freq``
* tagged text  -- whitespace-separated tokens ``N:surface``, ``C:marker``, ``V:lemma``
"""

from __future__ import annotations

import json
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator


class CorpusFormatError(ValueError):
    """A corpus, seed-database, tuple, or thesaurus stream is malformed."""


@dataclass(frozen=True)
class Example:
    """One simple sentence: a verb plus its case-marked noun slots."""

    id: str
    verb: str
    slots: tuple[tuple[str, str], ...]  # (case marker, noun)
    gold_sense: str | None = None

    def __post_init__(self) -> None:
        if not self.slots:
            raise CorpusFormatError(f"example {self.id!r}: slots must be non-empty")
        cases = [case for case, _ in self.slots]
        if len(set(cases)) != len(cases):
            dupes = sorted({c for c in cases if cases.count(c) > 1})
            raise CorpusFormatError(f"example {self.id!r}: duplicate case(s) {dupes}")

    @property
    def cases(self) -> tuple[str, ...]:
        return tuple(case for case, _ in self.slots)

    def filler(self, case: str) -> str | None:
        """Noun filling `case`, or None when the slot is absent."""
        for slot_case, noun in self.slots:
            if slot_case == case:
                return noun
        return None

    def to_record(self) -> dict:
        record = {
            "id": self.id,
            "verb": self.verb,
            "slots": [{"case": case, "noun": noun} for case, noun in self.slots],
        }
        if self.gold_sense is not None:
            record["gold_sense"] = self.gold_sense
        return record

    @classmethod
    def from_record(cls, record: dict) -> "Example":
        try:
            slots = tuple((slot["case"], slot["noun"]) for slot in record["slots"])
            return cls(
                id=record["id"],
                verb=record["verb"],
                slots=slots,
                gold_sense=record.get("gold_sense"),
            )
        except (KeyError, TypeError) as exc:
            raise CorpusFormatError(f"bad example record: {exc}") from exc


class ExampleSet:
    """Ordered collection of examples with pairwise-distinct ids."""

    def __init__(self, examples: Iterable[Example] = ()) -> None:
        self._examples: tuple[Example, ...] = tuple(examples)
        self._by_id: dict[str, Example] = {}
        for example in self._examples:
            if example.id in self._by_id:
                raise CorpusFormatError(f"duplicate example id {example.id!r}")
            self._by_id[example.id] = example

    def __iter__(self) -> Iterator[Example]:
        return iter(self._examples)

    def __len__(self) -> int:
        return len(self._examples)

    def __getitem__(self, index: int) -> Example:
        return self._examples[index]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExampleSet):
            return NotImplemented
        return self._examples == other._examples

    def __repr__(self) -> str:
        return f"ExampleSet({len(self)} examples)"

    def get(self, example_id: str) -> Example:
        try:
            return self._by_id[example_id]
        except KeyError:
            raise KeyError(f"unknown example id {example_id!r}") from None

    def __contains__(self, example_id: str) -> bool:
        return example_id in self._by_id

    def ids(self) -> list[str]:
        return [example.id for example in self._examples]

    def verbs(self) -> list[str]:
        return sorted({example.verb for example in self._examples})

    def fully_labeled(self) -> bool:
        return all(example.gold_sense is not None for example in self._examples)

    @staticmethod
    def concat(*sets: "ExampleSet") -> "ExampleSet":
        merged: list[Example] = []
        for example_set in sets:
            merged.extend(example_set)
        return ExampleSet(merged)


@dataclass
class TupleCounts:
    """Frequencies of (noun, case, verb) co-occurrence tuples."""

    counts: dict[tuple[str, str, str], int] = field(default_factory=dict)
    skipped_pairs: int = 0

    def __post_init__(self) -> None:
        for key, freq in self.counts.items():
            if freq < 1:
                raise ValueError(f"tuple {key} has non-positive frequency {freq}")

    def total(self) -> int:
        return sum(self.counts.values())

    def nouns(self) -> set[str]:
        return {noun for noun, _, _ in self.counts}

    def contexts(self) -> set[tuple[str, str]]:
        return {(case, verb) for _, case, verb in self.counts}


def parse_corpus(stream: Iterable[str]) -> ExampleSet:
    """Parse line-delimited example records; errors carry the 1-based line number."""
    examples: list[Example] = []
    seen: set[str] = set()
    for lineno, line in enumerate(stream, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorpusFormatError(f"line {lineno}: invalid record: {exc}") from exc
        try:
            example = Example.from_record(record)
        except CorpusFormatError as exc:
            raise CorpusFormatError(f"line {lineno}: {exc}") from exc
        if example.id in seen:
            raise CorpusFormatError(f"line {lineno}: duplicate example id {example.id!r}")
        seen.add(example.id)
        examples.append(example)
    return ExampleSet(examples)


def serialize_corpus(examples: ExampleSet) -> str:
    """Inverse of parse_corpus: one JSON record per line."""
    return "".join(json.dumps(ex.to_record(), ensure_ascii=False) + "\n" for ex in examples)


def extract_cooccurrence(tagged_stream: Iterable[str]) -> TupleCounts:
    """Collect (noun, case, verb) tuples from a tagged token stream.

    A pair is an ``N:`` token immediately followed by a ``C:`` token; it is
    attached to the nearest following ``V:`` token. Pairs with no following
    verb are dropped and counted in ``skipped_pairs``.
    """
    tokens: list[tuple[str, str]] = []
    for line in tagged_stream:
        for raw in line.split():
            if len(raw) < 3 or raw[1] != ":" or raw[0] not in "NCV":
                raise CorpusFormatError(f"malformed token {raw!r}")
            tokens.append((raw[0], raw[2:]))

    counts: Counter[tuple[str, str, str]] = Counter()
    skipped = 0
    pending: list[tuple[str, str]] = []  # (noun, case) awaiting a verb
    for i, (tag, value) in enumerate(tokens):
        if tag == "N" and i + 1 < len(tokens) and tokens[i + 1][0] == "C":
            pending.append((value, tokens[i + 1][1]))
        elif tag == "V":
            for noun, case in pending:
                counts[(noun, case, value)] += 1
            pending = []
    skipped += len(pending)
    return TupleCounts(counts=dict(counts), skipped_pairs=skipped)


def tuples_from_examples(examples: Iterable[Example]) -> TupleCounts:
    """Co-occurrence counts read directly off example slots (no labels used)."""
    counts: Counter[tuple[str, str, str]] = Counter()
    for example in examples:
        for case, noun in example.slots:
            counts[(noun, case, example.verb)] += 1
    return TupleCounts(counts=dict(counts))


def parse_tuples(stream: Iterable[str]) -> TupleCounts:
    counts: dict[tuple[str, str, str], int] = {}
    for lineno, line in enumerate(stream, start=1):
        line = line.rstrip("\n")
        if not line:
            continue
        parts = line.split("\t")
        if len(parts) != 4:
            raise CorpusFormatError(f"line {lineno}: expected 4 tab-separated fields")
        noun, case, verb, freq = parts
        try:
            parsed = int(freq)
        except ValueError as exc:
            raise CorpusFormatError(f"line {lineno}: bad frequency {freq!r}") from exc
        if parsed < 1:
            raise CorpusFormatError(f"line {lineno}: non-positive frequency {parsed}")
        counts[(noun, case, verb)] = counts.get((noun, case, verb), 0) + parsed
    return TupleCounts(counts=counts)


def serialize_tuples(tc: TupleCounts) -> str:
    lines = [
        f"{noun}\t{case}\t{verb}\t{freq}"
        for (noun, case, verb), freq in sorted(tc.counts.items())
    ]
    return "\n".join(lines) + ("\n" if lines else "")


def split_folds(examples: ExampleSet, k: int, seed: int) -> list[ExampleSet]:
    """Partition into k folds whose sizes differ by at most one.

    Assignment is a seeded shuffle dealt round-robin; each fold preserves the
    input order of its members.
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if k > len(examples):
        raise ValueError(f"cannot split {len(examples)} examples into {k} folds")
    indices = list(range(len(examples)))
    random.Random(seed).shuffle(indices)
    buckets: list[list[int]] = [[] for _ in range(k)]
    for position, index in enumerate(indices):
        buckets[position % k].append(index)
    return [ExampleSet(examples[i] for i in sorted(bucket)) for bucket in buckets]
