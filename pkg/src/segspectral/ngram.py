"""Character n-gram statistics over a raw text corpus.

Counts are plain dictionaries keyed by the n-gram string (1, 2, or 3
characters). Counting conventions:

- one input line is one record; n-grams never span line boundaries
- an n-gram is stored only if every character in it is Chinese
  (see chars.is_chinese); n-grams touching letters, digits, punctuation
  or whitespace are dropped at ingestion time
- an absent key means count 0

Conditional transition probabilities are maximum-likelihood ratios of
these counts, with no smoothing: an unseen bigram genuinely carries zero
connection strength. The standardized log-count functions divide
ln(count) by the population standard deviation of ln(count) taken over
the distinct stored keys of the same order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .chars import is_chinese


class CorpusEncodingError(ValueError):
    """Raised when corpus bytes are not valid UTF-8."""


@dataclass
class ModelMeta:
    source: str = ""
    line_count: int = 0


@dataclass
class NGramModel:
    """Unigram/bigram/trigram counts plus standardized log-count scales."""

    uni: dict[str, int] = field(default_factory=dict)
    bi: dict[str, int] = field(default_factory=dict)
    tri: dict[str, int] = field(default_factory=dict)
    total_uni: int = 0
    log_sd_bi: float = 1.0
    log_sd_tri: float = 1.0
    meta: ModelMeta = field(default_factory=ModelMeta)

    def p_next_uni(self, a: str, b: str) -> float:
        """P(next char = b | current char = a)."""
        if not (is_chinese(a) and is_chinese(b)):
            return 0.0
        ca = self.uni.get(a, 0)
        if ca == 0:
            return 0.0
        return self.bi.get(a + b, 0) / ca

    def p_next_bi(self, a: str, b: str, c: str) -> float:
        """P(next char = c | previous char = a, current char = b)."""
        if not (is_chinese(a) and is_chinese(b) and is_chinese(c)):
            return 0.0
        cab = self.bi.get(a + b, 0)
        if cab == 0:
            return 0.0
        return self.tri.get(a + b + c, 0) / cab

    def p_prev_bi(self, a: str, b: str, c: str) -> float:
        """P(current char = a | next two chars = b, c)."""
        if not (is_chinese(a) and is_chinese(b) and is_chinese(c)):
            return 0.0
        cbc = self.bi.get(b + c, 0)
        if cbc == 0:
            return 0.0
        return self.tri.get(a + b + c, 0) / cbc

    def p_next_two(self, a: str, b: str, c: str) -> float:
        """P(next two chars = b, c | current char = a)."""
        if not (is_chinese(a) and is_chinese(b) and is_chinese(c)):
            return 0.0
        ca = self.uni.get(a, 0)
        if ca == 0:
            return 0.0
        return self.tri.get(a + b + c, 0) / ca

    def sd_count_bi(self, pair: str) -> float:
        """ln(count) of a stored bigram divided by the bigram log-count sd."""
        n = self.bi.get(pair, 0)
        if n == 0:
            return 0.0
        return math.log(n) / self.log_sd_bi

    def sd_count_tri(self, triple: str) -> float:
        """ln(count) of a stored trigram divided by the trigram log-count sd."""
        n = self.tri.get(triple, 0)
        if n == 0:
            return 0.0
        return math.log(n) / self.log_sd_tri


def _log_sd(counts: dict[str, int]) -> float:
    """Population sd of ln(count) over distinct keys; 1.0 when degenerate.

    Each distinct stored key contributes one ln(count) sample regardless of
    how frequent it is. With fewer than two keys, or all counts equal, the
    sd would be 0 and standardization meaningless, so fall back to 1 and
    let sd_count reduce to a bare ln(count).
    """
    if len(counts) < 2:
        return 1.0
    logs = [math.log(c) for c in counts.values()]
    mean = sum(logs) / len(logs)
    var = sum((x - mean) ** 2 for x in logs) / len(logs)
    sd = math.sqrt(var)
    return sd if sd > 0.0 else 1.0


def ingest_corpus(lines, source: str = "") -> NGramModel:
    """Tally character n-gram counts from an iterable of text lines.

    Only n-grams made entirely of Chinese characters are stored. Returns a
    model that should be treated as immutable; all query methods are pure.
    """
    uni: dict[str, int] = {}
    bi: dict[str, int] = {}
    tri: dict[str, int] = {}
    line_count = 0
    for line in lines:
        line_count += 1
        n = len(line)
        # Precompute the class of each character once per line.
        cn = [is_chinese(ch) for ch in line]
        for i in range(n):
            if not cn[i]:
                continue
            uni[line[i]] = uni.get(line[i], 0) + 1
            if i + 1 < n and cn[i + 1]:
                key = line[i : i + 2]
                bi[key] = bi.get(key, 0) + 1
                if i + 2 < n and cn[i + 2]:
                    key3 = line[i : i + 3]
                    tri[key3] = tri.get(key3, 0) + 1
    return NGramModel(
        uni=uni,
        bi=bi,
        tri=tri,
        total_uni=sum(uni.values()),
        log_sd_bi=_log_sd(bi),
        log_sd_tri=_log_sd(tri),
        meta=ModelMeta(source=source, line_count=line_count),
    )


def iter_corpus_lines(path):
    """Yield decoded lines from a UTF-8 corpus file.

    Raises CorpusEncodingError naming the absolute byte offset of the first
    invalid byte.
    """
    offset = 0
    with open(path, "rb") as fh:
        for raw in fh:
            try:
                text = raw.decode("utf-8")
            except UnicodeDecodeError as exc:
                raise CorpusEncodingError(
                    f"{path}: invalid UTF-8 at byte offset {offset + exc.start}"
                ) from exc
            offset += len(raw)
            yield text.rstrip("\r\n")
