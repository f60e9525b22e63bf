"""Fixed-depth coded-tree thesaurus: path lengths, similarity, class generalization.

Every word lives at one or more leaves. A leaf is addressed by a code string
whose i-th character names the branch taken at level i, so two leaves' path
length is twice the number of levels below their longest common prefix.
"""

from __future__ import annotations

from typing import Iterable

from .corpus import CorpusFormatError

# Path-length -> similarity map for a depth-6 tree. Keys are the only
# possible leaf-to-leaf distances; values are on the 0..11 scale with 11
# meaning "same leaf".
SIM_TABLE: dict[int, int] = {0: 11, 2: 10, 4: 9, 6: 8, 8: 7, 10: 5, 12: 0}
MAX_SIM = 11

UNKNOWN_CLASS_PREFIX = "UNK:"


class Thesaurus:
    """Immutable word -> leaf-code index over a uniform-depth tree."""

    def __init__(self, word_codes: dict[str, frozenset[str]], depth: int) -> None:
        if depth < 1:
            raise ValueError(f"depth must be >= 1, got {depth}")
        for word, codes in word_codes.items():
            if not codes:
                raise ValueError(f"word {word!r} has no leaf codes")
            for code in codes:
                if len(code) != depth:
                    raise ValueError(
                        f"word {word!r}: code {code!r} does not match depth {depth}"
                    )
        self._word_codes = dict(word_codes)
        self.depth = depth

    def __contains__(self, word: str) -> bool:
        return word in self._word_codes

    def __len__(self) -> int:
        return len(self._word_codes)

    def words(self) -> list[str]:
        return sorted(self._word_codes)

    def codes(self, word: str) -> frozenset[str]:
        """Leaf codes of `word`; empty set when the word is unknown."""
        return self._word_codes.get(word, frozenset())

    def path_length(self, n1: str, n2: str) -> int | None:
        """Shortest leaf-to-leaf path between two nouns, or None if either is unknown.

        Polysemous nouns take the minimum over all code pairs (i.e. the
        reading that makes them most similar).
        """
        codes1 = self._word_codes.get(n1)
        codes2 = self._word_codes.get(n2)
        if not codes1 or not codes2:
            return None
        best = 0
        for c1 in codes1:
            for c2 in codes2:
                common = _common_prefix_len(c1, c2)
                if common > best:
                    best = common
                    if best == self.depth:
                        return 0
        return 2 * (self.depth - best)

    def similarity(self, n1: str, n2: str) -> int:
        """Similarity on the 0..11 scale; unknown nouns score 0."""
        length = self.path_length(n1, n2)
        if length is None:
            return 0
        return SIM_TABLE[length]

    def generalize(self, noun: str, level: int) -> frozenset[str]:
        """Code prefixes of length `level`; unknown nouns map to a per-word sentinel."""
        if not 1 <= level <= self.depth:
            raise ValueError(f"level must be in [1, {self.depth}], got {level}")
        codes = self._word_codes.get(noun)
        if not codes:
            return frozenset({UNKNOWN_CLASS_PREFIX + noun})
        return frozenset(code[:level] for code in codes)

    def dominates(self, cls: str, noun: str) -> bool:
        """True when some leaf code of `noun` lies under the node `cls`."""
        return any(code.startswith(cls) for code in self._word_codes.get(noun, ()))


def _common_prefix_len(a: str, b: str) -> int:
    n = 0
    for ch_a, ch_b in zip(a, b):
        if ch_a != ch_b:
            break
        n += 1
    return n


def load_thesaurus(stream: Iterable[str]) -> Thesaurus:
    """Read ``code<TAB>word`` lines; all codes must share one length."""
    word_codes: dict[str, set[str]] = {}
    depth: int | None = None
    for lineno, line in enumerate(stream, start=1):
        line = line.rstrip("\n")
        if not line:
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise CorpusFormatError(f"line {lineno}: expected code<TAB>word")
        code, word = parts
        if not code:
            raise CorpusFormatError(f"line {lineno}: empty code")
        if depth is None:
            depth = len(code)
        elif len(code) != depth:
            raise CorpusFormatError(
                f"line {lineno}: code length {len(code)} != {depth} seen earlier"
            )
        word_codes.setdefault(word, set()).add(code)
    if depth is None:
        raise CorpusFormatError("empty thesaurus stream")
    return Thesaurus({w: frozenset(c) for w, c in word_codes.items()}, depth)


def serialize_thesaurus(thesaurus: Thesaurus) -> str:
    lines = []
    for word in thesaurus.words():
        for code in sorted(thesaurus.codes(word)):
            lines.append(f"{code}\t{word}")
    return "\n".join(lines) + ("\n" if lines else "")
