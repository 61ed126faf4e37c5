"""Connection-strength matrices for sentence graphs.

A sentence of n characters becomes an undirected weighted graph on n
nodes. Only bonds between a character and its next one or two neighbors
are modeled, so the matrix is symmetric with bandwidth 2 and is stored as
three bands: unit diagonal, first off-diagonal (adjacent pairs), second
off-diagonal (one-gap pairs).

Three recipes fill the bands:

- ehr: transition probabilities scaled by standardized bigram/trigram
  log-counts, with two hand-picked sets of usually-standalone characters
  whose adjacent bonds get divided by fixed factors.
- lexicon: same adjacent-bond base, no one-gap band; bonds inside a
  frequent dictionary word get boosted, bonds touching a common
  single-character word get damped by a rank-based divisor.
- train words: like lexicon but driven by the words of a pre-segmented
  training corpus, damping by a count-based divisor.

All builders are pure functions of immutable inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

from .ngram import NGramModel

# Characters that often stand alone as one-character words; bonds touching
# them get weakened when building the ehr-style matrix.
WEAKEN_SET_1 = "和是在对中与将要地以为有"
WEAKEN_SET_2 = "了的无及等行不"

# Common single-character words used by the dictionary recipe's damping rule.
SINGLE_CHAR_WORDS = "的在地和向是上中下不有对并了与将还但就要以为也而又于"


@dataclass
class ConnectionMatrix:
    """Symmetric nonnegative band matrix (bandwidth 2) for one sentence."""

    diag: np.ndarray
    off1: np.ndarray
    off2: np.ndarray

    def __post_init__(self):
        self.diag = np.asarray(self.diag, dtype=float)
        self.off1 = np.asarray(self.off1, dtype=float)
        self.off2 = np.asarray(self.off2, dtype=float)
        n = self.diag.size
        if n == 0:
            raise ValueError("connection matrix needs at least one node")
        if self.off1.size != max(n - 1, 0) or self.off2.size != max(n - 2, 0):
            raise ValueError(
                f"band lengths {self.off1.size}/{self.off2.size} do not match n={n}"
            )
        for band in (self.diag, self.off1, self.off2):
            if band.size and band.min() < 0.0:
                raise ValueError("connection strengths must be nonnegative")

    @property
    def n(self) -> int:
        return self.diag.size

    @classmethod
    def identity(cls, n: int) -> "ConnectionMatrix":
        return cls(np.ones(n), np.zeros(max(n - 1, 0)), np.zeros(max(n - 2, 0)))

    def scaled(self, c: float) -> "ConnectionMatrix":
        return ConnectionMatrix(self.diag * c, self.off1 * c, self.off2 * c)

    def to_dense(self) -> np.ndarray:
        n = self.n
        w = np.zeros((n, n))
        w[np.arange(n), np.arange(n)] = self.diag
        if n >= 2:
            idx = np.arange(n - 1)
            w[idx, idx + 1] = self.off1
            w[idx + 1, idx] = self.off1
        if n >= 3:
            idx = np.arange(n - 2)
            w[idx, idx + 2] = self.off2
            w[idx + 2, idx] = self.off2
        return w

    def degrees(self) -> np.ndarray:
        """Row sums, including the diagonal entry."""
        n = self.n
        d = self.diag.copy()
        if n >= 2:
            d[:-1] += self.off1
            d[1:] += self.off1
        if n >= 3:
            d[:-2] += self.off2
            d[2:] += self.off2
        return d


@dataclass
class EhrParams:
    """Knobs for the dictionary-free recipe."""

    weaken_set_1: frozenset = field(default_factory=lambda: frozenset(WEAKEN_SET_1))
    weaken_set_2: frozenset = field(default_factory=lambda: frozenset(WEAKEN_SET_2))
    factor_1: float = 4.0
    factor_2: float = 80.0

    def __post_init__(self):
        self.weaken_set_1 = frozenset(self.weaken_set_1)
        self.weaken_set_2 = frozenset(self.weaken_set_2)
        if self.factor_1 < 1.0 or self.factor_2 < 1.0:
            raise ValueError("weakening factors must be >= 1")


@dataclass
class Lexicon:
    """Frequency-ranked vocabulary (rank 1 = most frequent)."""

    entries: dict[str, int]
    rank_threshold: int = 25000
    single_char_set: frozenset = field(default_factory=lambda: frozenset(SINGLE_CHAR_WORDS))
    boost: float = 20.0
    rank_floor: float = 20.0
    rank_scale: float = 1e6

    def __post_init__(self):
        self.single_char_set = frozenset(self.single_char_set)
        if self.boost <= 0.0:
            raise ValueError("boost must be positive")
        ranks = list(self.entries.values())
        if any(r < 1 for r in ranks):
            raise ValueError("ranks must be positive integers")
        if len(set(ranks)) != len(ranks):
            raise ValueError("ranks must be unique")
        if any(not w for w in self.entries):
            raise ValueError("lexicon words must be nonempty")

    @cached_property
    def frequent_bigrams(self) -> frozenset:
        """All two-character substrings of words ranked below the threshold."""
        out = set()
        for word, rank in self.entries.items():
            if rank < self.rank_threshold:
                for i in range(len(word) - 1):
                    out.add(word[i : i + 2])
        return frozenset(out)

    def damp_divisor_for(self, ch: str) -> float:
        """Divisor for a bond touching a common single-character word.

        Falls back to the floor when the character has no single-character
        lexicon entry; with the default scale any real rank lands on the
        floor anyway.
        """
        rank = self.entries.get(ch)
        if rank is None:
            return self.rank_floor
        return max(self.rank_floor, math.log(self.rank_scale / rank))


@dataclass
class WordStats:
    """Word frequencies from a pre-segmented training corpus."""

    words: dict[str, int]
    boost: float = 20.0
    damp_divisor: float = 250.0

    def __post_init__(self):
        if self.boost <= 0.0 or self.damp_divisor <= 0.0:
            raise ValueError("boost and damp_divisor must be positive")
        if any(c < 1 for c in self.words.values()):
            raise ValueError("word counts must be >= 1")
        if any(not w for w in self.words):
            raise ValueError("training words must be nonempty")

    @cached_property
    def word_bigrams(self) -> frozenset:
        out = set()
        for word in self.words:
            for i in range(len(word) - 1):
                out.add(word[i : i + 2])
        return frozenset(out)

    @cached_property
    def single_char_words(self) -> frozenset:
        return frozenset(w for w in self.words if len(w) == 1)

    def damp_divisor_for(self, ch: str) -> float:
        count = self.words.get(ch)
        if count is None:
            return 1.0
        return max(1.0, count / self.damp_divisor)


def _require_nonempty(s: str) -> None:
    if len(s) == 0:
        raise ValueError("cannot build a connection matrix for an empty sentence")


def _adjacent_bonds(s: str, model: NGramModel) -> np.ndarray:
    """Base strength for each adjacent character pair.

    The strength is the largest of the transition probabilities that are
    defined at this position (the two context-conditioned terms drop out at
    the first and last pair), scaled by the standardized bigram log-count.
    """
    n = len(s)
    out = np.zeros(max(n - 1, 0))
    for i in range(n - 1):
        p = model.p_next_uni(s[i], s[i + 1])
        if i >= 1:
            p = max(p, model.p_next_bi(s[i - 1], s[i], s[i + 1]))
        if i + 2 < n:
            p = max(p, model.p_prev_bi(s[i], s[i + 1], s[i + 2]))
        out[i] = p * model.sd_count_bi(s[i : i + 2])
    return out


def build_w_ehr(s: str, model: NGramModel, params: EhrParams | None = None) -> ConnectionMatrix:
    """Dictionary-free connection matrix with both off-diagonal bands."""
    _require_nonempty(s)
    if params is None:
        params = EhrParams()
    n = len(s)
    off1 = _adjacent_bonds(s, model)
    for i in range(n - 1):
        # Both weakenings stack when a pair hits both sets.
        if s[i] in params.weaken_set_1 or s[i + 1] in params.weaken_set_1:
            off1[i] /= params.factor_1
        if s[i] in params.weaken_set_2 or s[i + 1] in params.weaken_set_2:
            off1[i] /= params.factor_2
    off2 = np.zeros(max(n - 2, 0))
    for i in range(n - 2):
        if any(ch in params.weaken_set_2 for ch in s[i : i + 3]):
            continue
        off2[i] = model.p_next_two(s[i], s[i + 1], s[i + 2]) * model.sd_count_tri(s[i : i + 3])
    return ConnectionMatrix(np.ones(n), off1, off2)


def _boost_or_damp(s, off1, is_frequent, divisor_for, single_set, boost):
    """Shared strengthen-else-weaken pass for the two vocabulary recipes.

    Boost and damping are mutually exclusive, boost first. Damping applies
    once per qualifying character position, so a pair of two standalone
    words is divided twice.
    """
    for i in range(len(s) - 1):
        pair = s[i : i + 2]
        if is_frequent(pair):
            off1[i] *= boost
            continue
        for ch in pair:
            if ch in single_set:
                off1[i] /= divisor_for(ch)
    return off1


def build_w_lexicon(s: str, model: NGramModel, lex: Lexicon) -> ConnectionMatrix:
    """Dictionary-modified connection matrix; no one-gap band."""
    _require_nonempty(s)
    n = len(s)
    off1 = _adjacent_bonds(s, model)
    off1 = _boost_or_damp(
        s,
        off1,
        lex.frequent_bigrams.__contains__,
        lex.damp_divisor_for,
        lex.single_char_set,
        lex.boost,
    )
    return ConnectionMatrix(np.ones(n), off1, np.zeros(max(n - 2, 0)))


def build_w_trainwords(s: str, model: NGramModel, stats: WordStats) -> ConnectionMatrix:
    """Training-word-modified connection matrix; no one-gap band."""
    _require_nonempty(s)
    n = len(s)
    off1 = _adjacent_bonds(s, model)
    off1 = _boost_or_damp(
        s,
        off1,
        stats.word_bigrams.__contains__,
        stats.damp_divisor_for,
        stats.single_char_words,
        stats.boost,
    )
    return ConnectionMatrix(np.ones(n), off1, np.zeros(max(n - 2, 0)))


def load_lexicon(path, **kwargs) -> Lexicon:
    """Read a "word<TAB>rank" file into a Lexicon."""
    entries: dict[str, int] = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip():
            continue
        try:
            word, rank = line.split("\t")
            entries[word] = int(rank)
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: expected 'word<TAB>rank', got {line!r}") from exc
    return Lexicon(entries=entries, **kwargs)


def load_word_stats(path, **kwargs) -> WordStats:
    """Read a "word<TAB>count" file into WordStats."""
    words: dict[str, int] = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip():
            continue
        try:
            word, count = line.split("\t")
            words[word] = int(count)
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: expected 'word<TAB>count', got {line!r}") from exc
    return WordStats(words=words, **kwargs)
