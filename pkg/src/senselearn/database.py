"""The supervised example store: per-verb senses, case frames, and filler multisets."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from .corpus import CorpusFormatError, Example


@dataclass
class _VerbEntry:
    frames: dict[str, frozenset[str]] = field(default_factory=dict)  # sense -> cases
    fillers: dict[tuple[str, str], Counter] = field(default_factory=dict)  # (sense, case) -> nouns
    sense_freq: Counter = field(default_factory=Counter)


class SenseDatabase:
    """Verb -> sense -> case -> noun multiset, plus per-sense example counts.

    Case frames are fixed when a sense is declared; committing an example
    appends fillers only for cases inside the frame (slots outside it are
    skipped and counted).
    """

    def __init__(self) -> None:
        self._verbs: dict[str, _VerbEntry] = {}
        self.skipped_slots = 0

    # -- construction ------------------------------------------------------

    def declare_sense(self, verb: str, sense: str, frame: Iterable[str]) -> None:
        entry = self._verbs.setdefault(verb, _VerbEntry())
        cases = frozenset(frame)
        if sense in entry.frames:
            entry.frames[sense] = entry.frames[sense] | cases
        else:
            entry.frames[sense] = cases
            entry.sense_freq[sense] = 0

    def add_fillers(self, verb: str, sense: str, case: str, nouns: Iterable[str]) -> None:
        entry = self._require(verb)
        if sense not in entry.frames:
            raise ValueError(f"verb {verb!r} has no sense {sense!r}")
        if case not in entry.frames[sense]:
            raise ValueError(f"sense {sense!r} of {verb!r} does not subcategorize {case!r}")
        entry.fillers.setdefault((sense, case), Counter()).update(nouns)

    def add_example(self, example: Example, sense: str) -> list[tuple[str, str]]:
        """Store a supervised example under `sense`; returns the slots actually added."""
        entry = self._require(example.verb)
        if sense not in entry.frames:
            raise ValueError(f"verb {example.verb!r} has no sense {sense!r}")
        frame = entry.frames[sense]
        added: list[tuple[str, str]] = []
        for case, noun in example.slots:
            if case in frame:
                entry.fillers.setdefault((sense, case), Counter())[noun] += 1
                added.append((case, noun))
            else:
                self.skipped_slots += 1
        entry.sense_freq[sense] += 1
        return added

    # -- queries -----------------------------------------------------------

    def _require(self, verb: str) -> _VerbEntry:
        entry = self._verbs.get(verb)
        if entry is None:
            raise ValueError(f"unknown verb {verb!r}")
        return entry

    def __contains__(self, verb: str) -> bool:
        return verb in self._verbs

    def verbs(self) -> list[str]:
        return sorted(self._verbs)

    def senses(self, verb: str) -> list[str]:
        return sorted(self._require(verb).frames)

    def frame(self, verb: str, sense: str) -> frozenset[str]:
        entry = self._require(verb)
        try:
            return entry.frames[sense]
        except KeyError:
            raise ValueError(f"verb {verb!r} has no sense {sense!r}") from None

    def fillers(self, verb: str, sense: str, case: str) -> Counter:
        """Noun multiset for (sense, case); empty Counter when none are stored."""
        entry = self._require(verb)
        if sense not in entry.frames:
            raise ValueError(f"verb {verb!r} has no sense {sense!r}")
        if case not in entry.frames[sense]:
            raise ValueError(f"sense {sense!r} of {verb!r} does not subcategorize {case!r}")
        return entry.fillers.get((sense, case), Counter())

    def cases(self, verb: str) -> frozenset[str]:
        entry = self._require(verb)
        cases: set[str] = set()
        for frame in entry.frames.values():
            cases |= frame
        return frozenset(cases)

    def sense_freq(self, verb: str, sense: str) -> int:
        return self._require(verb).sense_freq[sense]

    def surviving_senses(self, example: Example) -> list[str]:
        """Senses whose case frame covers every case of the input."""
        entry = self._require(example.verb)
        needed = set(example.cases)
        return sorted(s for s, frame in entry.frames.items() if needed <= frame)

    def most_frequent_sense(self, verb: str, among: Iterable[str] | None = None) -> str:
        """Highest-frequency sense (lowest id on ties), optionally restricted."""
        entry = self._require(verb)
        candidates = sorted(among) if among is not None else sorted(entry.frames)
        if not candidates:
            candidates = sorted(entry.frames)
        if not candidates:
            raise ValueError(f"verb {verb!r} has no senses")
        return min(candidates, key=lambda s: (-entry.sense_freq[s], s))

    def filler_items(self) -> list[tuple[str, str, str, Counter]]:
        """All (verb, sense, case, noun multiset) rows in deterministic order."""
        items = []
        for verb in self.verbs():
            entry = self._verbs[verb]
            for (sense, case), counter in sorted(entry.fillers.items()):
                items.append((verb, sense, case, counter))
        return items

    def set_fillers(self, verb: str, sense: str, case: str, nouns: Iterable[str]) -> None:
        """Replace the noun multiset of (sense, case); frame membership still applies."""
        entry = self._require(verb)
        if sense not in entry.frames:
            raise ValueError(f"verb {verb!r} has no sense {sense!r}")
        if case not in entry.frames[sense]:
            raise ValueError(f"sense {sense!r} of {verb!r} does not subcategorize {case!r}")
        entry.fillers[(sense, case)] = Counter(nouns)

    def copy(self) -> "SenseDatabase":
        dup = SenseDatabase()
        for verb, entry in self._verbs.items():
            new = _VerbEntry(
                frames=dict(entry.frames),
                fillers={key: Counter(c) for key, c in entry.fillers.items()},
                sense_freq=Counter(entry.sense_freq),
            )
            dup._verbs[verb] = new
        dup.skipped_slots = self.skipped_slots
        return dup

    def equal_contents(self, other: "SenseDatabase") -> bool:
        if set(self._verbs) != set(other._verbs):
            return False
        for verb, entry in self._verbs.items():
            theirs = other._verbs[verb]
            if entry.frames != theirs.frames or entry.sense_freq != theirs.sense_freq:
                return False
            keys = set(entry.fillers) | set(theirs.fillers)
            for key in keys:
                if entry.fillers.get(key, Counter()) != theirs.fillers.get(key, Counter()):
                    return False
        return True

    # -- serialization -----------------------------------------------------

    def to_records(self) -> list[dict]:
        records = []
        for verb in self.verbs():
            entry = self._verbs[verb]
            for sense in sorted(entry.frames):
                for case in sorted(entry.frames[sense]):
                    nouns = entry.fillers.get((sense, case), Counter())
                    records.append(
                        {
                            "verb": verb,
                            "sense": sense,
                            "case": case,
                            "nouns": sorted(nouns.elements()),
                        }
                    )
        return records

    def serialize(self) -> str:
        return "".join(json.dumps(rec, ensure_ascii=False) + "\n" for rec in self.to_records())


def parse_seed_database(stream: Iterable[str]) -> SenseDatabase:
    """Parse seed records ``{"verb", "sense", "case", "nouns": [...]}``.

    A sense's frame is exactly the set of cases declared for it; sense
    frequencies start at zero (seed fillers are dictionary examples, not
    committed corpus examples).
    """
    db = SenseDatabase()
    for lineno, line in enumerate(stream, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            record = json.loads(line)
            verb = record["verb"]
            sense = record["sense"]
            case = record["case"]
            nouns = record["nouns"]
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise CorpusFormatError(f"line {lineno}: bad seed record: {exc}") from exc
        if not nouns:
            raise CorpusFormatError(
                f"line {lineno}: declared case {case!r} of {verb}/{sense} has no nouns"
            )
        db.declare_sense(verb, sense, [case])
        db.add_fillers(verb, sense, case, nouns)
    return db


def database_from_labeled(examples: Iterable[Example]) -> SenseDatabase:
    """Build a database from gold-labeled examples.

    Senses come from the labels; each sense's frame is the set of cases seen
    with it; sense frequencies count the contributing examples.
    """
    examples = list(examples)
    frames: dict[tuple[str, str], set[str]] = {}
    for example in examples:
        if example.gold_sense is None:
            raise ValueError(f"example {example.id!r} has no gold sense")
        frames.setdefault((example.verb, example.gold_sense), set()).update(example.cases)
    db = SenseDatabase()
    for (verb, sense), cases in sorted(frames.items()):
        db.declare_sense(verb, sense, cases)
    for example in examples:
        db.add_example(example, example.gold_sense)
    return db


def inventory_from_corpus(examples: Iterable[Example]) -> SenseDatabase:
    """Empty database carrying only the sense inventory for from-scratch sampling.

    Senses are read from the corpus gold labels (the predefined candidate
    set); every sense of a verb gets the verb-wide case set as its frame so
    that no per-sense structure of unlabeled data leaks in.
    """
    verb_cases: dict[str, set[str]] = {}
    verb_senses: dict[str, set[str]] = {}
    for example in examples:
        verb_cases.setdefault(example.verb, set()).update(example.cases)
        if example.gold_sense is not None:
            verb_senses.setdefault(example.verb, set()).add(example.gold_sense)
    db = SenseDatabase()
    for verb in sorted(verb_cases):
        for sense in sorted(verb_senses.get(verb, ())):
            db.declare_sense(verb, sense, verb_cases[verb])
    return db
