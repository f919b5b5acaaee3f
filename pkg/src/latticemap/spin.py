"""n-state spin models with nearest-neighbour edge weights on an L x L torus."""
from dataclasses import dataclass

import numpy as np

from .errors import UsageError, check_configs, check_dim, DEFAULT_MAX_CONFIGS
from .matcore import as_cmatrix, basis_digits, embed_two_site, unit


@dataclass(frozen=True)
class EdgeWeights:
    """Horizontal weights ``wh[a, b]`` and vertical weights ``wv[a, b]``."""

    wh: np.ndarray
    wv: np.ndarray

    def __post_init__(self):
        wh = as_cmatrix(self.wh, "wh")
        wv = as_cmatrix(self.wv, "wv")
        if wh.shape != wv.shape or wh.shape[0] != wh.shape[1] or wh.shape[0] < 2:
            raise UsageError("edge weights must be two n x n matrices with n >= 2")
        object.__setattr__(self, "wh", wh)
        object.__setattr__(self, "wv", wv)

    @property
    def n(self):
        return self.wh.shape[0]

    def swapped(self):
        """Horizontal and vertical roles exchanged (lattice rotated by 90 degrees)."""
        return EdgeWeights(self.wv, self.wh)


@dataclass(frozen=True)
class IsingParams:
    beta: float = 1.0
    jh: float = 0.0
    jv: float = 0.0
    hfield: float = 0.0


@dataclass(frozen=True)
class SpinHamiltonianLimit:
    """First-order coefficients of W_h = 1 + eps*wh_dot, W_v = I + eps*wv_dot."""

    wh_dot: np.ndarray
    wv_dot: np.ndarray


def ising_edge_weights(p: IsingParams) -> EdgeWeights:
    """Ising edge weights with the field split evenly over the two edges.

    State 0 is spin +1 and state 1 is spin -1.
    """
    spins = np.array([1.0, -1.0])

    def edge(j):
        e = p.beta * (j * np.outer(spins, spins) + 0.25 * p.hfield * (spins[:, None] + spins[None, :]))
        return np.exp(e)

    return EdgeWeights(edge(p.jh), edge(p.jv))


def random_edge_weights(n, seed, low=0.5, high=1.5):
    rng = np.random.default_rng(seed)
    return EdgeWeights(rng.uniform(low, high, (n, n)), rng.uniform(low, high, (n, n)))


def _product_matrix(factors, L, n):
    """Matrix whose (a, b) entry is the product over j of factors(j) looked up at digits."""
    dig = basis_digits(n, L)
    out = np.ones((n**L, n**L), dtype=complex)
    for mat, row_site, col_site in factors:
        out *= mat[dig[:, row_site][:, None], dig[:, col_site][None, :]]
    return out


def t_diag(ew: EdgeWeights, L: int) -> np.ndarray:
    """Diagonal-to-diagonal transfer matrix: prod_j W_v(a_j, b_j) W_h(a_j, b_{j+1})."""
    if L < 1:
        raise UsageError("L must be >= 1")
    check_dim(ew.n, L)
    factors = []
    for j in range(L):
        factors.append((ew.wv, j, j))
        factors.append((ew.wh, j, (j + 1) % L))
    return _product_matrix(factors, L, ew.n)


def t_v(ew: EdgeWeights, L: int) -> np.ndarray:
    check_dim(ew.n, L)
    return _product_matrix([(ew.wv, j, j) for j in range(L)], L, ew.n)


def t_h(ew: EdgeWeights, L: int) -> np.ndarray:
    """Horizontal layer: prod_j W_h(a_j, b_{j+1}) delta(a_{j+1}, b_{j+1}).

    The delta factors force a == b, so this is the diagonal matrix of
    horizontal bond products along the row.
    """
    check_dim(ew.n, L)
    dig = basis_digits(ew.n, L)
    diag = np.ones(ew.n**L, dtype=complex)
    for j in range(L):
        diag *= ew.wh[dig[:, j], dig[:, (j + 1) % L]]
    return np.diag(diag)


def t_row(ew: EdgeWeights, L: int) -> np.ndarray:
    if L < 1:
        raise UsageError("L must be >= 1")
    return t_v(ew, L) @ t_h(ew, L)


def z_spin_bruteforce(ew: EdgeWeights, L: int, cap=DEFAULT_MAX_CONFIGS, chunk=1 << 16) -> complex:
    """Sum over all n^(L*L) toroidal spin configurations."""
    if L < 1:
        raise UsageError("L must be >= 1")
    n = ew.n
    total = check_configs(n ** (L * L), cap)
    sites = L * L
    acc = 0j
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total))
        s = np.empty((idx.size, sites), dtype=np.intp)
        rem = idx
        for p in range(sites - 1, -1, -1):
            s[:, p] = rem % n
            rem = rem // n
        s = s.reshape(-1, L, L)
        right = np.roll(s, -1, axis=2)
        down = np.roll(s, -1, axis=1)
        w = ew.wh[s, right].reshape(idx.size, -1).prod(axis=1)
        w *= ew.wv[s, down].reshape(idx.size, -1).prod(axis=1)
        acc += w.sum()
    return complex(acc)


def spin_two_site(hl: SpinHamiltonianLimit) -> np.ndarray:
    """Two-site operator from the first-order edge-weight coefficients."""
    wh_dot = np.asarray(hl.wh_dot, dtype=complex)
    wv_dot = np.asarray(hl.wv_dot, dtype=complex)
    n = wh_dot.shape[0]
    h = np.zeros((n * n, n * n), dtype=complex)
    for i1 in range(n):
        for i2 in range(n):
            h += wh_dot[i1, i2] * np.kron(unit(n, i1, i1), unit(n, i2, i2))
            h += wv_dot[i1, i2] * np.kron(unit(n, i1, i2), np.eye(n))
    return h


def spin_hamiltonian(hl: SpinHamiltonianLimit, L: int) -> np.ndarray:
    """Periodic sum of the two-site spin operator over bonds (j, j+1)."""
    if L < 2:
        raise UsageError("L must be >= 2")
    h2 = spin_two_site(hl)
    n = int(round(np.sqrt(h2.shape[0])))
    check_dim(n, L)
    return sum(embed_two_site(h2, j, (j + 1) % L, L) for j in range(L))
