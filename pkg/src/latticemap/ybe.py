"""Residuals for the RLL algebra and the Yang-Baxter equation, plus a
linear solver that recovers R from a pair of Lax operators."""
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import UsageError
from .matcore import DEFAULT_TOL, embed_two_site, nullspace, permutator, rel_frobenius


def _side(m):
    m = np.asarray(m, dtype=complex)
    n = int(round(np.sqrt(m.shape[0])))
    if m.ndim != 2 or m.shape != (n * n, n * n):
        raise UsageError(f"expected an n^2 x n^2 matrix, got shape {m.shape}")
    return m, n


def _three(m, i, j):
    return embed_two_site(m, i, j, 3)


def _same_n(*mats):
    sides = {_side(m)[1] for m in mats}
    if len(sides) != 1:
        raise UsageError("all operators must act on the same local dimension")
    return sides.pop()


def rll_residual(r, lax1, lax2) -> float:
    """||R12 L13 L23 - L23 L13 R12|| / ||R12 L13 L23||."""
    _same_n(r, lax1, lax2)
    r12, l13, l23 = _three(r, 0, 1), _three(lax1, 0, 2), _three(lax2, 1, 2)
    lhs = r12 @ l13 @ l23
    return rel_frobenius(lhs - l23 @ l13 @ r12, lhs)


def ybe_residual(r12, r13, r23) -> float:
    """||R12 R13 R23 - R23 R13 R12|| / ||R12 R13 R23||."""
    _same_n(r12, r13, r23)
    a, b, c = _three(r12, 0, 1), _three(r13, 0, 2), _three(r23, 1, 2)
    lhs = a @ b @ c
    return rel_frobenius(lhs - c @ b @ a, lhs)


def unitarity_residual(r_ab, r_ba):
    """M = R(a,b) P R(b,a) P compared with (Tr M / dim) I.

    Returns (relative Frobenius deviation from the scalar, the scalar).
    """
    n = _same_n(r_ab, r_ba)
    p = permutator(n)
    m = np.asarray(r_ab, dtype=complex) @ p @ np.asarray(r_ba, dtype=complex) @ p
    const = complex(np.trace(m) / m.shape[0])
    dev = m - const * np.eye(m.shape[0])
    return rel_frobenius(dev, m), const


def normalize_r(r, zero_tol=1e-12):
    """Unit Frobenius norm, first non-negligible entry (row-major) real positive."""
    r = np.asarray(r, dtype=complex)
    nrm = np.linalg.norm(r)
    if nrm == 0:
        raise UsageError("cannot normalize a zero matrix")
    r = r / nrm
    flat = r.ravel()
    first = int(np.flatnonzero(np.abs(flat) > zero_tol * np.abs(flat).max())[0])
    phase = flat[first] / abs(flat[first])
    return r / phase


@dataclass(frozen=True)
class RSolveReport:
    r: Optional[np.ndarray]
    kernel_dim: int
    residual: float
    mask: Optional[np.ndarray]
    basis: Sequence[np.ndarray]
    singular_gap: float  # smallest retained pivot relative to the largest


def rll_system(lax1, lax2, mask=None):
    """Matrix A with A @ vec(R) = vec(R12 L13 L23 - L23 L13 R12).

    Columns follow the row-major order of R entries, restricted to ``mask``.
    """
    n = _same_n(lax1, lax2)
    l13, l23 = _three(lax1, 0, 2), _three(lax2, 1, 2)
    left = l13 @ l23
    right = l23 @ l13
    nn = n * n
    free = np.ones((nn, nn), bool) if mask is None else np.asarray(mask, bool)
    cols = []
    eye = np.eye(n)
    for a, b in zip(*np.nonzero(free)):
        unit_r = np.zeros((nn, nn))
        unit_r[a, b] = 1.0
        r12 = np.kron(unit_r, eye)
        cols.append((r12 @ left - right @ r12).ravel())
    return np.stack(cols, axis=1)


def solve_r(lax_pairs, tol=DEFAULT_TOL, mask=None) -> RSolveReport:
    """Solve the RLL relation for R as a homogeneous linear system.

    Each pair (L1, L2) contributes n^6 rows; the unknowns are the n^4
    entries of R (or the entries allowed by ``mask``).
    """
    pairs = list(lax_pairs)
    if not pairs:
        raise UsageError("solve_r needs at least one Lax pair")
    n = _same_n(*[m for pair in pairs for m in pair])
    nn = n * n
    free = np.ones((nn, nn), bool) if mask is None else np.asarray(mask, bool)
    a = np.concatenate([rll_system(l1, l2, free) for l1, l2 in pairs], axis=0)
    ns = nullspace(a, tol)

    def expand(v):
        r = np.zeros((nn, nn), dtype=complex)
        r[free] = v
        return r

    basis = [expand(ns.basis[:, i]) for i in range(ns.dim)]
    r = normalize_r(basis[0]) if ns.dim == 1 else None
    residual = max(rll_residual(r, l1, l2) for l1, l2 in pairs) if r is not None else float("nan")
    # smallest singular value kept in the row space, relative to the largest
    s = np.linalg.svd(a, compute_uv=False)
    gap = float(s[ns.rank - 1] / s[0]) if ns.rank else 0.0
    return RSolveReport(r=r, kernel_dim=ns.dim, residual=residual, mask=None if mask is None else free,
                        basis=basis, singular_gap=gap)


def infer_mask(lax_pairs, threshold=1e-8, tol=DEFAULT_TOL):
    """Zero pattern shared by the R solutions of several independent pairs.

    An entry is fixed to zero when it is below ``threshold * max`` in every
    sampled solution.  Pairs whose kernel is not one-dimensional are skipped.
    """
    keep = None
    used = 0
    for l1, l2 in lax_pairs:
        rep = solve_r([(l1, l2)], tol)
        if rep.kernel_dim != 1:
            continue
        mag = np.abs(rep.r)
        big = mag >= threshold * mag.max()
        keep = big if keep is None else (keep | big)
        used += 1
    if keep is None:
        raise UsageError("no sampled pair gave a one-dimensional kernel")
    return keep, used
