"""Minimum angle clustering of short texts.

Thin wrapper over the C++ core. Matrices are term x document: columns are
observations. Sparse results come back as scipy.sparse.csc_matrix.
"""

from ._core import (
    Error,
    TfidfMatrix,
    adjacency,
    ari,
    baseline_sc_a,
    baseline_sc_x,
    components,
    dissimilarity,
    dissimilarity_matrix,
    gen_short_texts,
    gen_subspace_mixture,
    kmeans,
    local_scaling_affinity,
    mac,
    nmi,
    principal_angles,
    purity,
    read_tfidf,
    rref,
    spectral_cluster,
    subspace_basis,
    tokenize,
    vectorize,
    write_tfidf,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
