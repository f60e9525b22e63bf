"""Noun-pair similarity backends shared by the engine and the sampler.

Both backends expose similarity on a [0, 1] scale (the coded-tree values are
divided by 11) and carry an evaluation counter used by the sampling work
accounting: every sim() request increments it, memoized or not.
"""

from __future__ import annotations

from .thesaurus import MAX_SIM, Thesaurus
from .vectors import VectorTable


class SimilarityProvider:
    """Base: memoized, instrumented noun-pair similarity in [0, 1]."""

    backend = "base"

    def __init__(self) -> None:
        self.calls = 0
        self._memo: dict[tuple[str, str], float] = {}

    def sim(self, n1: str, n2: str) -> float:
        self.calls += 1
        key = (n1, n2) if n1 <= n2 else (n2, n1)
        cached = self._memo.get(key)
        if cached is None:
            cached = self._compute(key[0], key[1])
            self._memo[key] = cached
        return cached

    def _compute(self, n1: str, n2: str) -> float:
        raise NotImplementedError


class ThesaurusSimilarity(SimilarityProvider):
    """Coded-tree path similarity normalized to [0, 1]."""

    backend = "thesaurus"

    def __init__(self, thesaurus: Thesaurus) -> None:
        super().__init__()
        self.thesaurus = thesaurus

    def _compute(self, n1: str, n2: str) -> float:
        return self.thesaurus.similarity(n1, n2) / MAX_SIM


class VsmSimilarity(SimilarityProvider):
    """TF-IDF cosine similarity (already in [0, 1] for non-negative weights)."""

    backend = "vsm"

    def __init__(self, vectors: VectorTable) -> None:
        super().__init__()
        self.vectors = vectors

    def _compute(self, n1: str, n2: str) -> float:
        return self.vectors.similarity(n1, n2)
