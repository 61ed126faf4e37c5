"""Spectral machinery on top of sentence connection matrices.

Builds graph Laplacians from band matrices, chooses a cluster count from
the small end of the spectrum, embeds nodes into the corresponding
eigenvector columns, and scores partitions with the two classic cut
objectives. A brute-force enumerator over contiguous partitions serves as
a ground-truth oracle at toy sizes.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations

import numpy as np

from .eigen import EigenDecomposition, eigh_symmetric
from .graph import ConnectionMatrix

# Eigenvalues within this distance of 0 count as the zero eigenspace.
ZERO_EIG_TOL = 1e-9

# Contiguous-partition enumeration blows up combinatorially; keep it honest.
BRUTE_FORCE_MAX_N = 16


class LaplacianForm(Enum):
    UNNORMALIZED = "unnorm"
    SYMMETRIC_NORMALIZED = "sym"


class CutKind(Enum):
    RATIO = "ratio"
    NORMALIZED = "normalized"


@dataclass
class SpectralEmbedding:
    """Rows of the low eigenvector columns, one row per graph node."""

    u: np.ndarray
    form: LaplacianForm
    row_normalized: bool


def build_laplacian(w: ConnectionMatrix, form: LaplacianForm) -> np.ndarray:
    """Dense Laplacian of the sentence graph.

    Unnormalized: degree matrix minus weights. Symmetric normalized:
    identity minus the degree-scaled weights; requires strictly positive
    degrees, which any builder-produced matrix has via its unit diagonal.
    """
    dense = w.to_dense()
    deg = w.degrees()
    if form is LaplacianForm.UNNORMALIZED:
        return np.diag(deg) - dense
    if form is LaplacianForm.SYMMETRIC_NORMALIZED:
        if deg.min() <= 0.0:
            raise ValueError("normalized Laplacian needs positive degrees on every node")
        inv_sqrt = 1.0 / np.sqrt(deg)
        return np.eye(w.n) - dense * np.outer(inv_sqrt, inv_sqrt)
    raise ValueError(f"unknown Laplacian form {form!r}")


def choose_k(values: np.ndarray, eig_cut: float) -> int:
    """Number of eigenvalues at or below the granularity threshold, min 1."""
    if eig_cut <= 0.0:
        raise ValueError("eig_cut must be positive")
    return max(1, int(np.count_nonzero(np.asarray(values) <= eig_cut)))


def spectral_embed(dec: EigenDecomposition, k: int, form: LaplacianForm) -> SpectralEmbedding:
    """First k eigenvector columns; rows unit-normalized under the
    symmetric normalized form (all-zero rows are left alone)."""
    if not 1 <= k <= dec.n:
        raise ValueError(f"k={k} out of range for n={dec.n}")
    u = dec.vectors[:, :k].copy()
    normalized = form is LaplacianForm.SYMMETRIC_NORMALIZED
    if normalized:
        norms = np.linalg.norm(u, axis=1)
        nonzero = norms > 0.0
        u[nonzero] /= norms[nonzero, None]
    return SpectralEmbedding(u=u, form=form, row_normalized=normalized)


def zero_eig_multiplicity(dec: EigenDecomposition, tol: float = ZERO_EIG_TOL) -> int:
    """How many eigenvalues are numerically zero."""
    return int(np.count_nonzero(np.abs(dec.values) <= tol))


def _check_partition(parts, n: int) -> list[np.ndarray]:
    arrs = []
    seen: set[int] = set()
    total = 0
    for part in parts:
        idx = np.asarray(sorted(part), dtype=int)
        if idx.size == 0:
            raise ValueError("partition contains an empty part")
        if idx.min() < 0 or idx.max() >= n:
            raise ValueError(f"partition index out of range [0, {n})")
        total += idx.size
        seen.update(int(i) for i in idx)
        arrs.append(idx)
    if total != n or len(seen) != n:
        raise ValueError("parts must cover all nodes exactly once")
    return arrs


def indicator_span_residual(
    dec: EigenDecomposition,
    components,
    form: LaplacianForm,
    degrees: np.ndarray | None = None,
    tol: float = ZERO_EIG_TOL,
) -> float:
    """Frobenius distance between two projectors: onto the span of the
    (degree-scaled, for the normalized form) component indicator vectors,
    and onto the numerically-zero eigenspace.

    A value near 0 certifies that the zero eigenspace is exactly the
    indicator span, i.e. the component structure is fully recoverable from
    the low eigenvectors.
    """
    n = dec.n
    parts = _check_partition(components, n)
    if form is LaplacianForm.SYMMETRIC_NORMALIZED:
        if degrees is None:
            raise ValueError("degrees are required for the normalized form")
        scale = np.sqrt(np.asarray(degrees, dtype=float))
    else:
        scale = np.ones(n)
    basis = np.zeros((n, len(parts)))
    for j, idx in enumerate(parts):
        basis[idx, j] = scale[idx]
        norm = np.linalg.norm(basis[:, j])
        if norm == 0.0:
            raise ValueError("component indicator has zero norm")
        basis[:, j] /= norm
    # Disjoint supports make the columns orthonormal already.
    p_span = basis @ basis.T
    zero_vecs = dec.vectors[:, np.abs(dec.values) <= tol]
    p_eig = zero_vecs @ zero_vecs.T
    return float(np.linalg.norm(p_span - p_eig, ord="fro"))


def cut_objective(w: ConnectionMatrix, partition, kind: CutKind) -> float:
    """Ratio-cut or normalized-cut value of a partition.

    Each part contributes its total boundary weight divided by its size
    (ratio) or its volume, the summed degrees of its nodes (normalized).
    """
    n = w.n
    parts = _check_partition(partition, n)
    dense = w.to_dense()
    deg = w.degrees()
    total = 0.0
    for idx in parts:
        mask = np.zeros(n, dtype=bool)
        mask[idx] = True
        boundary = dense[np.ix_(mask, ~mask)].sum()
        if kind is CutKind.RATIO:
            total += boundary / idx.size
        elif kind is CutKind.NORMALIZED:
            vol = deg[idx].sum()
            # Zero volume forces zero boundary (weights are nonnegative),
            # so the term's limit is 0.
            total += boundary / vol if vol > 0.0 else 0.0
        else:
            raise ValueError(f"unknown cut kind {kind!r}")
    return float(total)


def contiguous_partitions(n: int, k: int):
    """Yield every split of range(n) into k consecutive nonempty parts."""
    for cuts in combinations(range(1, n), k - 1):
        bounds = (0, *cuts, n)
        yield [list(range(bounds[i], bounds[i + 1])) for i in range(k)]


def brute_force_best_contiguous(
    w: ConnectionMatrix, k: int, kind: CutKind
) -> tuple[list[list[int]], float]:
    """Exhaustive minimizer of the cut objective over contiguous k-part
    splits. Ties go to the earliest boundary set in lexicographic order."""
    n = w.n
    if n > BRUTE_FORCE_MAX_N:
        raise ValueError(f"n={n} exceeds enumeration guard {BRUTE_FORCE_MAX_N}")
    if not 1 <= k <= n:
        raise ValueError(f"k={k} out of range for n={n}")
    best_parts: list[list[int]] | None = None
    best_value = np.inf
    for parts in contiguous_partitions(n, k):
        value = cut_objective(w, parts, kind)
        if value < best_value:
            best_value = value
            best_parts = parts
    assert best_parts is not None
    return best_parts, float(best_value)


__all__ = [
    "LaplacianForm",
    "CutKind",
    "SpectralEmbedding",
    "EigenDecomposition",
    "eigh_symmetric",
    "build_laplacian",
    "choose_k",
    "spectral_embed",
    "zero_eig_multiplicity",
    "indicator_span_residual",
    "cut_objective",
    "contiguous_partitions",
    "brute_force_best_contiguous",
    "ZERO_EIG_TOL",
    "BRUTE_FORCE_MAX_N",
]
