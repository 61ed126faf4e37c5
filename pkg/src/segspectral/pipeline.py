"""End-to-end sentence segmentation.

One input line is one sentence. The pipeline builds the recipe's
connection matrix, takes the Laplacian's eigendecomposition, picks the
cluster count as the number of eigenvalues under the granularity
threshold, clusters the embedded rows, and splits the sentence wherever
adjacent characters land in different clusters. A cluster that comes back
in non-adjacent runs yields one word per run, so output words are always
contiguous and concatenate back to the exact input.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .graph import ConnectionMatrix, EhrParams, Lexicon, WordStats, build_w_ehr, build_w_lexicon, build_w_trainwords
from .eigen import EigenDecomposition, eigh_symmetric
from .kmeans import INIT_KMEANS_PP, kmeans_cluster
from .spectral import LaplacianForm, build_laplacian, choose_k, spectral_embed

Recipe = EhrParams | Lexicon | WordStats

# Words that merge during post-processing: digit runs, and digit runs
# followed by one date/time/percent unit character.
DIGIT_CHARS = frozenset("0123456789０１２３４５６７８９")
UNIT_CHARS = frozenset("年月日时分秒%％")

_RECIPE_DEFAULTS = {
    EhrParams: (LaplacianForm.UNNORMALIZED, 0.15),
    Lexicon: (LaplacianForm.SYMMETRIC_NORMALIZED, 0.00035),
    WordStats: (LaplacianForm.SYMMETRIC_NORMALIZED, 0.001),
}


@dataclass
class SegmenterConfig:
    recipe: Recipe
    form: LaplacianForm
    eig_cut: float
    init: str = INIT_KMEANS_PP
    seed: int = 0
    jitter_sd: float = 0.001
    postprocess: bool = True

    def __post_init__(self):
        if self.eig_cut <= 0.0:
            raise ValueError("eig_cut must be positive")

    @classmethod
    def for_recipe(cls, recipe: Recipe, **overrides) -> "SegmenterConfig":
        """Config with the form and granularity threshold conventional for
        the recipe; pass overrides to depart from them."""
        form, eig_cut = _RECIPE_DEFAULTS[type(recipe)]
        cfg = cls(recipe=recipe, form=form, eig_cut=eig_cut)
        return replace(cfg, **overrides) if overrides else cfg


def build_w(s: str, model, recipe: Recipe) -> ConnectionMatrix:
    if isinstance(recipe, EhrParams):
        return build_w_ehr(s, model, recipe)
    if isinstance(recipe, Lexicon):
        return build_w_lexicon(s, model, recipe)
    if isinstance(recipe, WordStats):
        return build_w_trainwords(s, model, recipe)
    raise TypeError(f"unknown recipe type {type(recipe).__name__}")


def labels_to_words(s: str, labels) -> list[str]:
    """Split the sentence at every adjacent pair with different labels."""
    labels = np.asarray(labels)
    if labels.shape != (len(s),):
        raise ValueError(f"got {labels.size} labels for {len(s)} characters")
    words = []
    start = 0
    for i in range(1, len(s)):
        if labels[i] != labels[i - 1]:
            words.append(s[start:i])
            start = i
    words.append(s[start:])
    return words


def _is_digit_run(word: str) -> bool:
    return all(ch in DIGIT_CHARS for ch in word)


def postprocess_merge(words: list[str]) -> list[str]:
    """Concatenate split-up numbers and number-unit pairs.

    Adjacent all-digit words merge; an all-digit word followed by a single
    unit character merges with it. Idempotent, and never changes the
    concatenation of the list.
    """
    out: list[str] = []
    for word in words:
        if out and _is_digit_run(out[-1]):
            if _is_digit_run(word):
                out[-1] += word
                continue
            if len(word) == 1 and word in UNIT_CHARS:
                out[-1] += word
                continue
        out.append(word)
    return out


@dataclass
class PreparedSentence:
    """Recipe- and form-dependent, threshold-independent work for one
    sentence; sweeping granularities can reuse it."""

    text: str
    w: ConnectionMatrix
    dec: EigenDecomposition


@dataclass
class SentenceTrace:
    """Everything the pipeline decided for one sentence."""

    text: str
    w: ConnectionMatrix
    eigenvalues: np.ndarray
    k: int
    embedding: np.ndarray
    labels: np.ndarray
    words: list[str]


def prepare_sentence(s: str, model, cfg: SegmenterConfig) -> PreparedSentence:
    if len(s) == 0:
        raise ValueError("cannot segment an empty sentence")
    w = build_w(s, model, cfg.recipe)
    lap = build_laplacian(w, cfg.form)
    dec = eigh_symmetric(lap)
    return PreparedSentence(text=s, w=w, dec=dec)


def segment_prepared(prep: PreparedSentence, cfg: SegmenterConfig) -> SentenceTrace:
    k = choose_k(prep.dec.values, cfg.eig_cut)
    embedding = spectral_embed(prep.dec, k, cfg.form)
    labels = kmeans_cluster(
        embedding, k, init=cfg.init, seed=cfg.seed, jitter_sd=cfg.jitter_sd
    )
    words = labels_to_words(prep.text, labels)
    if cfg.postprocess:
        words = postprocess_merge(words)
    return SentenceTrace(
        text=prep.text,
        w=prep.w,
        eigenvalues=prep.dec.values,
        k=k,
        embedding=embedding.u,
        labels=labels,
        words=words,
    )


def trace_sentence(s: str, model, cfg: SegmenterConfig) -> SentenceTrace:
    return segment_prepared(prepare_sentence(s, model, cfg), cfg)


def segment_sentence(s: str, model, cfg: SegmenterConfig) -> list[str]:
    """Segment one sentence into words."""
    return trace_sentence(s, model, cfg).words


def segment_document(
    lines, model, cfg: SegmenterConfig
) -> tuple[list[list[str]], list[tuple[int, str]]]:
    """Segment each line independently.

    Returns one word list per input line plus (line number, message) pairs
    for lines that failed; a failed line is passed through unsegmented so
    the output stays aligned with the input.
    """
    results: list[list[str]] = []
    errors: list[tuple[int, str]] = []
    for lineno, line in enumerate(lines, 1):
        if line == "":
            results.append([])
            continue
        try:
            results.append(segment_sentence(line, model, cfg))
        except Exception as exc:  # noqa: BLE001 - per-line isolation is the contract
            errors.append((lineno, str(exc)))
            results.append([line])
    return results, errors
