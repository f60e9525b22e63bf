"""TF-IDF vectors over (case, verb) contexts and cosine similarity."""

from __future__ import annotations

import math

from .corpus import TupleCounts


class VectorTable:
    """Per-noun sparse TF-IDF vectors over predicate-argument contexts.

    Weights are ``freq * ln(N / nf(context))`` where N counts distinct nouns
    and nf(context) counts distinct nouns seen in that context. Zero weights
    are not stored; they arise exactly when a context co-occurs with every
    noun.
    """

    def __init__(
        self,
        vectors: dict[str, dict[tuple[str, str], float]],
        noun_type_count: int,
        context_noun_counts: dict[tuple[str, str], int],
    ) -> None:
        self._vectors = vectors
        self._norms = {
            noun: math.sqrt(sum(w * w for w in vec.values()))
            for noun, vec in vectors.items()
        }
        self.noun_type_count = noun_type_count
        self.context_noun_counts = context_noun_counts

    def __contains__(self, noun: str) -> bool:
        return noun in self._vectors

    def nouns(self) -> list[str]:
        return sorted(self._vectors)

    def contexts(self) -> set[tuple[str, str]]:
        return set(self.context_noun_counts)

    def vector(self, noun: str) -> dict[tuple[str, str], float]:
        return dict(self._vectors.get(noun, {}))

    def weight(self, noun: str, case: str, verb: str) -> float:
        return self._vectors.get(noun, {}).get((case, verb), 0.0)

    def similarity(self, n1: str, n2: str) -> float:
        """Cosine of the two noun vectors; absent or zero-norm vectors score 0."""
        v1 = self._vectors.get(n1)
        v2 = self._vectors.get(n2)
        if not v1 or not v2:
            return 0.0
        norm1 = self._norms[n1]
        norm2 = self._norms[n2]
        if norm1 == 0.0 or norm2 == 0.0:
            return 0.0
        if len(v2) < len(v1):
            v1, v2 = v2, v1
        dot = sum(weight * v2.get(context, 0.0) for context, weight in v1.items())
        return dot / (norm1 * norm2)


def build_vectors(tc: TupleCounts) -> VectorTable:
    """Build the TF-IDF table from co-occurrence counts; empty counts are an error."""
    if not tc.counts:
        raise ValueError("cannot build vectors from empty tuple counts")
    context_nouns: dict[tuple[str, str], set[str]] = {}
    for (noun, case, verb), _freq in tc.counts.items():
        context_nouns.setdefault((case, verb), set()).add(noun)
    nf = {context: len(nouns) for context, nouns in context_nouns.items()}
    n_total = len(tc.nouns())

    vectors: dict[str, dict[tuple[str, str], float]] = {}
    for (noun, case, verb), freq in tc.counts.items():
        weight = freq * math.log(n_total / nf[(case, verb)])
        if weight != 0.0:
            vectors.setdefault(noun, {})[(case, verb)] = weight
    for noun in tc.nouns():
        vectors.setdefault(noun, {})
    return VectorTable(vectors, n_total, nf)


def serialize_vectors(table: VectorTable) -> str:
    """Tab-separated dump ``noun<TAB>case:verb<TAB>weight``."""
    lines = []
    for noun in table.nouns():
        for (case, verb), weight in sorted(table.vector(noun).items()):
            lines.append(f"{noun}\t{case}:{verb}\t{weight:.10g}")
    return "\n".join(lines) + ("\n" if lines else "")
