"""Three-state Fateev-Zamolodchikov spin model, its 27-vertex counterpart,
the non-difference-form R-matrix and the associated Z3 clock chain."""
import cmath
import math
from dataclasses import dataclass

import numpy as np

from .equivmap import MapKind, map_spin_to_vertex
from .errors import PoleError, UsageError, check_dim
from .matcore import embed_two_site
from .spin import EdgeWeights
from .vertex import VertexTensor, lax_from_tensor, t_vertex, tensor_from_lax

_PI6 = math.pi / 6
OMEGA = cmath.exp(2j * math.pi / 3)


def _div(num, den):
    if abs(den) < 1e-14:
        raise PoleError("weight denominator vanishes")
    return num / den


def b_weight(x):
    return _div(np.sin(_PI6 - x), np.sin(_PI6 + x))


def bbar_weight(x):
    return _div(np.sin(x), np.cos(_PI6 + x))


@dataclass(frozen=True)
class FZParams:
    x: complex

    @property
    def b(self):
        return b_weight(self.x)

    @property
    def bbar(self):
        return bbar_weight(self.x)


@dataclass(frozen=True)
class Z3Generators:
    x_op: np.ndarray
    z_op: np.ndarray


def clock_generators() -> Z3Generators:
    """Cyclic shift X (X e_k = e_{k+1}) and diagonal phase Z."""
    x = np.roll(np.eye(3, dtype=complex), 1, axis=0)
    z = np.diag([1, OMEGA, OMEGA**2]).astype(complex)
    return Z3Generators(x, z)


def _circulant(diag, off):
    m = np.full((3, 3), off, dtype=complex)
    np.fill_diagonal(m, diag)
    return m


def fz_edge_weights(p: FZParams) -> EdgeWeights:
    return EdgeWeights(_circulant(1.0, p.b), _circulant(1.0, p.bbar))


def fz_pattern(w1, w2, w3, w4, w5) -> np.ndarray:
    """9 x 9 matrix with the shared sparsity pattern of the Lax operator and R."""
    return np.array([
        [w1, 0, 0, w2, 0, 0, w2, 0, 0],
        [w3, 0, 0, w4, 0, 0, w5, 0, 0],
        [w3, 0, 0, w5, 0, 0, w4, 0, 0],
        [0, w4, 0, 0, w3, 0, 0, w5, 0],
        [0, w2, 0, 0, w1, 0, 0, w2, 0],
        [0, w5, 0, 0, w3, 0, 0, w4, 0],
        [0, 0, w4, 0, 0, w5, 0, 0, w3],
        [0, 0, w5, 0, 0, w4, 0, 0, w3],
        [0, 0, w2, 0, 0, w2, 0, 0, w1],
    ], dtype=complex)


def fz_vertex_weights(x):
    """(w1, ..., w5) of the 27-vertex model."""
    b, bb = b_weight(x), bbar_weight(x)
    return 1.0, bb, bb * b, b, bb * b


def fz_lax(p: FZParams) -> np.ndarray:
    return fz_pattern(*fz_vertex_weights(p.x))


def fz_lax_from_map(p: FZParams) -> np.ndarray:
    """Same Lax operator obtained from the generic spin-to-vertex map A."""
    return lax_from_tensor(map_spin_to_vertex(fz_edge_weights(p), MapKind.A))


def fz_r_ratios(x, y):
    """bold w2/w1, w3/w1, w4/w1, w5/w1."""
    s = _div(np.sin(x - y), np.cos(_PI6 + x - y))
    f = b_weight(x)
    g = _div(np.sin(_PI6 + y), np.sin(_PI6 - y))
    return s * g, s * f, f * g, s * f * g


def fz_unitarity_normalization(x, y):
    sxy = np.sin(x - y)
    return _div(sxy - math.cos(_PI6), math.sqrt(3) * (sxy - math.sin(_PI6)))


def fz_r_matrix(x, y, normalized=True) -> np.ndarray:
    """R(x, y); with ``normalized`` the bold w1 entry makes R(x,y) R21(y,x) = I."""
    w1 = fz_unitarity_normalization(x, y) if normalized else 1.0
    r2, r3, r4, r5 = fz_r_ratios(x, y)
    return fz_pattern(w1, w1 * r2, w1 * r3, w1 * r4, w1 * r5)


def fz_extended_transfer(x, x0, L) -> np.ndarray:
    """Tr_aux of the ordered product of R(x, x0) over L sites."""
    check_dim(3, L)
    return t_vertex(tensor_from_lax(fz_r_matrix(x, x0)), L)


def fz_spin_vertex_tensor(p: FZParams) -> VertexTensor:
    return tensor_from_lax(fz_lax(p))


def fz_hamiltonian(x0, L) -> np.ndarray:
    """Z3 clock chain with x0-dependent couplings between X_j and Z_j Z_{j+1}^dagger."""
    if L < 2:
        raise UsageError("L must be >= 2")
    check_dim(3, L)
    gen = clock_generators()
    X, Z = gen.x_op, gen.z_op
    zz1 = np.kron(Z, Z.conj().T)
    zz2 = zz1 @ zz1
    x1 = np.kron(X, np.eye(3))
    x2 = x1 @ x1
    c0 = -2 / math.sqrt(3)
    c1 = 4 * math.sin(x0) / math.sqrt(3)
    ph = cmath.exp(-1j * (_PI6 + x0))
    bond = (c0 * (x1 + zz1 + x2 + zz2)
            + c1 * ph * (x1 @ zz1 + x2 @ zz2)
            + c1 / ph * (x1 @ zz2 + x2 @ zz1))
    return sum(embed_two_site(bond, j, (j + 1) % L, L) for j in range(L))


def translation_operator(L, n=3) -> np.ndarray:
    """Cyclic shift of an L-site chain, mapping site j to j+1."""
    check_dim(n, L)
    d = n**L
    out = np.zeros((d, d), dtype=complex)
    idx = np.arange(d).reshape((n,) * L)
    # state (s_1, ..., s_L) -> (s_L, s_1, ..., s_{L-1})
    shifted = np.moveaxis(idx, -1, 0).ravel()
    out[shifted, np.arange(d)] = 1.0
    return out

