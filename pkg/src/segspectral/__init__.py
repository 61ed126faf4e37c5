"""Unsupervised Chinese word segmentation by spectral graph partitioning.

A sentence becomes a weighted path-shaped graph over its characters, with
bond strengths from character n-gram statistics; words are the clusters a
spectral partition of that graph finds.
"""

from .chars import DEFAULT_CJK_RANGES, all_chinese, is_chinese
from .ngram import (
    CorpusEncodingError,
    ModelMeta,
    NGramModel,
    ingest_corpus,
    iter_corpus_lines,
)
from .model_io import (
    ModelChecksumError,
    ModelFormatError,
    ModelIOError,
    ModelTruncatedError,
    ModelVersionError,
    load_model,
    save_model,
)
from .graph import (
    SINGLE_CHAR_WORDS,
    WEAKEN_SET_1,
    WEAKEN_SET_2,
    ConnectionMatrix,
    EhrParams,
    Lexicon,
    WordStats,
    build_w_ehr,
    build_w_lexicon,
    build_w_trainwords,
    load_lexicon,
    load_word_stats,
)
from .eigen import EigenConvergenceError, EigenDecomposition, eigh_symmetric
from .kmeans import INIT_EVEN_ROWS, INIT_KMEANS_PP, kmeans_cluster
from .spectral import (
    CutKind,
    LaplacianForm,
    SpectralEmbedding,
    brute_force_best_contiguous,
    build_laplacian,
    choose_k,
    contiguous_partitions,
    cut_objective,
    indicator_span_residual,
    spectral_embed,
    zero_eig_multiplicity,
)
from .pipeline import (
    PreparedSentence,
    Recipe,
    SegmenterConfig,
    SentenceTrace,
    build_w,
    labels_to_words,
    postprocess_merge,
    prepare_sentence,
    segment_document,
    segment_prepared,
    segment_sentence,
    trace_sentence,
)
from .evaluation import (
    EvalReport,
    SynthSpec,
    count_matches,
    generate_synthetic,
    parse_segmented,
    score,
    score_corpus,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_CJK_RANGES",
    "all_chinese",
    "is_chinese",
    "CorpusEncodingError",
    "ModelMeta",
    "NGramModel",
    "ingest_corpus",
    "iter_corpus_lines",
    "ModelChecksumError",
    "ModelFormatError",
    "ModelIOError",
    "ModelTruncatedError",
    "ModelVersionError",
    "load_model",
    "save_model",
    "SINGLE_CHAR_WORDS",
    "WEAKEN_SET_1",
    "WEAKEN_SET_2",
    "ConnectionMatrix",
    "EhrParams",
    "Lexicon",
    "WordStats",
    "build_w_ehr",
    "build_w_lexicon",
    "build_w_trainwords",
    "load_lexicon",
    "load_word_stats",
    "EigenConvergenceError",
    "EigenDecomposition",
    "eigh_symmetric",
    "INIT_EVEN_ROWS",
    "INIT_KMEANS_PP",
    "kmeans_cluster",
    "CutKind",
    "LaplacianForm",
    "SpectralEmbedding",
    "brute_force_best_contiguous",
    "build_laplacian",
    "choose_k",
    "contiguous_partitions",
    "cut_objective",
    "indicator_span_residual",
    "spectral_embed",
    "zero_eig_multiplicity",
    "PreparedSentence",
    "Recipe",
    "SegmenterConfig",
    "SentenceTrace",
    "build_w",
    "labels_to_words",
    "postprocess_merge",
    "prepare_sentence",
    "segment_document",
    "segment_prepared",
    "segment_sentence",
    "trace_sentence",
    "EvalReport",
    "SynthSpec",
    "count_matches",
    "generate_synthetic",
    "parse_segmented",
    "score",
    "score_corpus",
    "__version__",
]
