"""Dense linear algebra helpers shared by the Fock-space modules.

Everything here acts on explicit matrices over the grade-k coordinate space
of dimension D**k.  The recurring wrinkle is that inner products are given
by Gram matrices that are frequently singular (symmetrization kills most of
the tensor space), so adjoints and operator norms are computed against a
whitened restriction to the Gram matrix's numerical range rather than
against a matrix inverse.
"""

from __future__ import annotations

import itertools

import numpy as np

RANGE_CUTOFF = 1e-12


def hermitize(mat: np.ndarray) -> np.ndarray:
    """Average away the anti-Hermitian part left by floating-point noise."""
    return 0.5 * (mat + mat.conj().T)


def axis_permutation_matrix(dim: int, perm) -> np.ndarray:
    """Matrix of the map permuting tensor slots of (C^dim)**k.

    Input slot s feeds output slot ``perm[s]``: the returned matrix sends
    the basis vector with index tuple i to the one with index tuple j where
    j[perm[s]] = i[s].  On coefficient tensors this is a transpose by the
    inverse permutation.
    """
    k = len(perm)
    if sorted(perm) != list(range(k)):
        raise ValueError("perm must be a permutation of 0..k-1")
    size = dim**k
    mat = np.eye(size).reshape((dim,) * (2 * k))
    # reorder the *input* axes (the second group of k)
    mat = np.transpose(mat, tuple(range(k)) + tuple(k + p for p in perm))
    return mat.reshape(size, size)


def symmetrizer_matrix(dim: int, k: int) -> np.ndarray:
    """Projection onto the symmetric subspace of (C^dim)**k."""
    if k == 0:
        return np.eye(1)
    acc = np.zeros((dim**k, dim**k))
    count = 0
    for perm in itertools.permutations(range(k)):
        acc += axis_permutation_matrix(dim, perm)
        count += 1
    return acc / count


def orthonormal_range(projection: np.ndarray) -> np.ndarray:
    """Orthonormal column basis for the range of an orthogonal projection.

    Eigenvalues of a projection cluster at 0 and 1, so selecting
    eigenvalues above 1/2 is unambiguous.
    """
    vals, vecs = np.linalg.eigh(hermitize(projection))
    return vecs[:, vals > 0.5]


def gram_whitener(gram: np.ndarray, cutoff: float = RANGE_CUTOFF) -> np.ndarray:
    """Columns W with W* G W = I on the numerical range of G.

    Eigenvalues at or below ``cutoff`` times the largest eigenvalue are
    treated as exact zeros (a degenerate Gram matrix means genuinely
    dependent vectors, not an error).
    """
    vals, vecs = np.linalg.eigh(hermitize(gram))
    top = float(vals[-1]) if vals.size else 0.0
    if top <= 0.0:
        return np.zeros((gram.shape[0], 0))
    keep = vals > cutoff * top
    return vecs[:, keep] / np.sqrt(vals[keep])


def gram_operator_norm(
    op: np.ndarray,
    gram_out: np.ndarray,
    gram_in: np.ndarray,
    cutoff: float = RANGE_CUTOFF,
) -> float:
    """Operator norm of ``op`` between spaces with the given Gram matrices.

    Both domain and codomain are restricted to the numerical ranges of
    their Gram matrices; vectors of zero length neither contribute norm
    nor blow it up.
    """
    w_in = gram_whitener(gram_in, cutoff)
    w_out = gram_whitener(gram_out, cutoff)
    if w_in.shape[1] == 0 or w_out.shape[1] == 0:
        return 0.0
    middle = w_out.conj().T @ hermitize(gram_out) @ (op @ w_in)
    return float(np.linalg.norm(middle, ord=2))


def gram_adjoint_residual(
    op: np.ndarray,
    candidate_adjoint: np.ndarray,
    gram_out: np.ndarray,
    gram_in: np.ndarray,
) -> float:
    """Largest defect of <op x, y>_out = <x, adj y>_in over unit vectors.

    The pairing identity is G_in @ adj = op^H @ G_out on the nose; the
    residual is that matrix gap measured in spectral norm and normalized
    by the participating Gram and operator norms.
    """
    lhs = np.asarray(gram_in, dtype=complex) @ candidate_adjoint
    rhs = op.conj().T @ np.asarray(gram_out, dtype=complex)
    scale = max(
        float(np.linalg.norm(lhs, ord=2)), float(np.linalg.norm(rhs, ord=2)), 1.0
    )
    return float(np.linalg.norm(lhs - rhs, ord=2)) / scale


def vector_norm(gram: np.ndarray, vec: np.ndarray) -> float:
    """Length of ``vec`` in the (possibly degenerate) Gram inner product."""
    val = np.vdot(vec, np.asarray(gram, dtype=complex) @ vec)
    return float(np.sqrt(max(val.real, 0.0)))
