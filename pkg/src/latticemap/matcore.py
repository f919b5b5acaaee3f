"""Dense complex linear algebra used throughout the package.

Matrices are plain ``numpy`` arrays of dtype complex128.  Multi-site bases
use site 0 as the most significant base-n digit, which is also what
``numpy.kron`` produces.
"""
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import ConvergenceError, UsageError

DEFAULT_TOL = 1e-9


def as_cmatrix(a, name="matrix"):
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise UsageError(f"{name} must be a non-empty 2-d array, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise UsageError(f"{name} has non-finite entries")
    return m


def _square(a, name="matrix"):
    m = as_cmatrix(a, name)
    if m.shape[0] != m.shape[1]:
        raise UsageError(f"{name} must be square, got shape {m.shape}")
    return m


def kron(a, b):
    """Kronecker product; entry (i*rb+k, j*cb+l) = a[i,j]*b[k,l]."""
    return np.kron(as_cmatrix(a, "a"), as_cmatrix(b, "b"))


def mat_trace_power(t, p):
    """Tr(t^p) by repeated multiplication."""
    m = _square(t, "t")
    if int(p) != p or p < 1:
        raise UsageError("power must be a positive integer")
    acc = m
    for _ in range(int(p) - 1):
        acc = acc @ m
    return complex(np.trace(acc))


@dataclass(frozen=True)
class NullspaceResult:
    basis: np.ndarray  # columns are orthonormal kernel vectors
    rank: int
    residual: float

    @property
    def dim(self):
        return self.basis.shape[1]


def nullspace(a, tol=DEFAULT_TOL):
    """Orthonormal kernel basis from a column-pivoted QR of ``a^H``.

    A pivoted QR of the adjoint reveals the row space of ``a``; the trailing
    columns of Q span its orthogonal complement.  Diagonal entries of R
    below ``tol * |R[0, 0]|`` count as zero.
    """
    m = as_cmatrix(a, "a")
    if tol <= 0:
        raise UsageError("tol must be positive")
    cols = m.shape[1]
    q, r, _ = scipy.linalg.qr(m.conj().T, pivoting=True, mode="full")
    diag = np.abs(np.diag(r))
    scale = diag[0] if diag.size else 0.0
    if scale == 0.0:
        rank = 0
    else:
        rank = int(np.count_nonzero(diag > tol * scale))
    basis = q[:, rank:]
    residual = float(diag[rank:].max()) if rank < diag.size else 0.0
    if basis.shape[1]:
        residual = max(residual, float(np.linalg.norm(m @ basis, axis=0).max()))
    assert rank + basis.shape[1] == cols
    return NullspaceResult(basis=basis, rank=rank, residual=residual)


def eig_spectrum(a):
    """Eigenvalues sorted by (real, imag)."""
    m = _square(a, "a")
    try:
        ev = np.linalg.eigvals(m)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"eigenvalue iteration failed: {exc}") from exc
    order = np.lexsort((ev.imag, ev.real))
    return ev[order]


def permutator(n):
    """Swap operator on C^n (x) C^n."""
    p = np.zeros((n * n, n * n), dtype=complex)
    for a in range(n):
        for b in range(n):
            p[a * n + b, b * n + a] = 1.0
    return p


def unit(n, i, j):
    e = np.zeros((n, n), dtype=complex)
    e[i, j] = 1.0
    return e


def basis_digits(n, L):
    """(n^L, L) array of base-n digits, site 0 most significant."""
    idx = np.arange(n**L)
    out = np.empty((n**L, L), dtype=np.intp)
    for j in range(L - 1, -1, -1):
        out[:, j] = idx % n
        idx = idx // n
    return out


def site_operator(op, j, L):
    """``op`` acting on site j of an L-site chain, identity elsewhere."""
    op = np.asarray(op, dtype=complex)
    n = op.shape[0]
    left = np.eye(n**j)
    right = np.eye(n ** (L - j - 1))
    return np.kron(np.kron(left, op), right)


def embed_two_site(op, i, j, L):
    """Embed a two-site operator ``op`` (first factor on site i) into L sites.

    Sites i and j need not be adjacent or ordered.
    """
    op = np.asarray(op, dtype=complex)
    n = int(round(np.sqrt(op.shape[0])))
    if n * n != op.shape[0] or i == j:
        raise UsageError("two-site operator must be n^2 x n^2 on distinct sites")
    t = op.reshape(n, n, n, n)  # out_i, out_j, in_i, in_j
    rest = [s for s in range(L) if s not in (i, j)]
    # tensor with axes (out_i, out_j, out_rest..., in_i, in_j, in_rest...)
    eye = np.eye(n ** len(rest)).reshape((n,) * (2 * len(rest))) if rest else np.ones(())
    full = np.multiply.outer(t, eye)
    k = len(rest)
    # current axis order: out_i, out_j, in_i, in_j, out_rest(k), in_rest(k)
    current_out = [i, j] + rest
    src_out = [0, 1] + [4 + m for m in range(k)]
    src_in = [2, 3] + [4 + k + m for m in range(k)]
    perm_out = [src_out[current_out.index(s)] for s in range(L)]
    perm_in = [src_in[current_out.index(s)] for s in range(L)]
    full = full.transpose(perm_out + perm_in)
    return full.reshape(n**L, n**L)


def rel_frobenius(diff, ref):
    den = np.linalg.norm(ref)
    num = np.linalg.norm(diff)
    return float(num / den) if den else float(num)
