"""n-state vertex models: weight tensors, Lax operators and row transfer matrices.

A weight tensor is stored as ``w[i1, i2, i3, i4]`` for the vertex with
horizontal links (i1 left, i2 right) and vertical links (i3 bottom-in,
i4 top-out).  The Lax operator acts on auxiliary (x) quantum space with the
auxiliary factor most significant:

    L[(i1, i3), (i2, i4)] = w[i1, i2, i3, i4]

Two-state labels: state 0 is "+" and state 1 is "-".
"""
from dataclasses import dataclass, fields

import numpy as np

from .errors import UsageError, check_configs, check_dim, DEFAULT_MAX_CONFIGS
from .matcore import embed_two_site, permutator, unit

P_, M_ = 0, 1


@dataclass(frozen=True)
class VertexTensor:
    w: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.w, dtype=complex)
        if w.ndim != 4 or len(set(w.shape)) != 1 or w.shape[0] < 2:
            raise UsageError(f"vertex tensor must have shape (n, n, n, n) with n >= 2, got {w.shape}")
        if not np.all(np.isfinite(w)):
            raise UsageError("vertex tensor has non-finite entries")
        object.__setattr__(self, "w", w)

    @property
    def n(self):
        return self.w.shape[0]


@dataclass(frozen=True)
class Mixed8VWeights:
    w1: complex
    w2: complex
    w5: complex
    w6: complex
    v1: complex
    v2: complex
    v5: complex
    v6: complex

    @classmethod
    def symmetric(cls, w1, w5, v1, v5):
        """Weights with w2=w1, w6=w5, v2=v1, v6=v5."""
        return cls(w1, w1, w5, w5, v1, v1, v5, v5)

    def as_dict(self):
        return {f.name: complex(getattr(self, f.name)) for f in fields(self)}


@dataclass(frozen=True)
class Even8VWeights:
    a_plus: complex
    a_minus: complex
    b_plus: complex
    b_minus: complex
    c_plus: complex
    c_minus: complex
    d_plus: complex
    d_minus: complex

    @classmethod
    def symmetric(cls, a, b, c, d):
        return cls(a, a, b, b, c, c, d, d)

    def free_fermion_residual(self):
        return (self.a_plus * self.a_minus + self.b_plus * self.b_minus
                - self.c_plus * self.c_minus - self.d_plus * self.d_minus)

    def as_dict(self):
        return {f.name: complex(getattr(self, f.name)) for f in fields(self)}


@dataclass(frozen=True)
class Sixteen16VWeights:
    w1: complex = 0
    w2: complex = 0
    w3: complex = 0
    w4: complex = 0
    w5: complex = 0
    w6: complex = 0
    w7: complex = 0
    w8: complex = 0
    v1: complex = 0
    v2: complex = 0
    v3: complex = 0
    v4: complex = 0
    v5: complex = 0
    v6: complex = 0
    v7: complex = 0
    v8: complex = 0


@dataclass(frozen=True)
class VertexHamiltonianLimit:
    """First-order coefficients of w = permutator + eps * w_dot."""

    w_dot: np.ndarray


# slot -> (i1, i2, i3, i4) for the two-state families
SIXTEEN_SLOTS = {
    "w1": (P_, P_, P_, P_), "w2": (M_, M_, M_, M_),
    "w3": (M_, M_, P_, P_), "w4": (P_, P_, M_, M_),
    "w5": (M_, P_, P_, M_), "w6": (P_, M_, M_, P_),
    "w7": (M_, P_, M_, P_), "w8": (P_, M_, P_, M_),
    "v1": (P_, M_, P_, P_), "v2": (M_, P_, M_, M_),
    "v3": (M_, P_, P_, P_), "v4": (P_, M_, M_, M_),
    "v5": (M_, M_, P_, M_), "v6": (P_, P_, M_, P_),
    "v7": (M_, M_, M_, P_), "v8": (P_, P_, P_, M_),
}
MIXED_SLOTS = {k: SIXTEEN_SLOTS[k] for k in ("w1", "w2", "w5", "w6", "v1", "v2", "v5", "v6")}
EVEN_SLOTS = {
    "a_plus": SIXTEEN_SLOTS["w1"], "a_minus": SIXTEEN_SLOTS["w2"],
    "b_minus": SIXTEEN_SLOTS["w3"], "b_plus": SIXTEEN_SLOTS["w4"],
    "c_minus": SIXTEEN_SLOTS["w5"], "c_plus": SIXTEEN_SLOTS["w6"],
    "d_minus": SIXTEEN_SLOTS["w7"], "d_plus": SIXTEEN_SLOTS["w8"],
}


def _fill(slots, record):
    w = np.zeros((2, 2, 2, 2), dtype=complex)
    for name, idx in slots.items():
        w[idx] = getattr(record, name)
    return VertexTensor(w)


def _read(slots, cls, t):
    return cls(**{name: complex(t.w[idx]) for name, idx in slots.items()})


def tensor_from_mixed8v(m: Mixed8VWeights) -> VertexTensor:
    return _fill(MIXED_SLOTS, m)


def mixed8v_from_tensor(t: VertexTensor) -> Mixed8VWeights:
    return _read(MIXED_SLOTS, Mixed8VWeights, t)


def tensor_from_even8v(e: Even8VWeights) -> VertexTensor:
    return _fill(EVEN_SLOTS, e)


def even8v_from_tensor(t: VertexTensor) -> Even8VWeights:
    return _read(EVEN_SLOTS, Even8VWeights, t)


def tensor_from_sixteen(s: Sixteen16VWeights) -> VertexTensor:
    return _fill(SIXTEEN_SLOTS, s)


def sixteen_from_tensor(t: VertexTensor) -> Sixteen16VWeights:
    return _read(SIXTEEN_SLOTS, Sixteen16VWeights, t)


def permutator_tensor(n) -> VertexTensor:
    w = np.zeros((n,) * 4, dtype=complex)
    for a in range(n):
        for b in range(n):
            w[a, b, b, a] = 1.0
    return VertexTensor(w)


def lax_from_tensor(t: VertexTensor) -> np.ndarray:
    n = t.n
    # w[i1, i2, i3, i4] -> L[(i1, i3), (i2, i4)]
    return t.w.transpose(0, 2, 1, 3).reshape(n * n, n * n).copy()


def tensor_from_lax(lax) -> VertexTensor:
    lax = np.asarray(lax, dtype=complex)
    n = int(round(np.sqrt(lax.shape[0])))
    if lax.shape != (n * n, n * n):
        raise UsageError(f"Lax matrix must be n^2 x n^2, got {lax.shape}")
    return VertexTensor(lax.reshape(n, n, n, n).transpose(0, 2, 1, 3))


def t_vertex(t: VertexTensor, L: int) -> np.ndarray:
    """Row-to-row transfer matrix Tr_aux[L_1 L_2 ... L_L].

    Site 1 is the most significant digit of the quantum basis.  The
    auxiliary trace is unrolled over the starting auxiliary state so the
    largest intermediate is a single n^L x n^L block.
    """
    if L < 1:
        raise UsageError("L must be >= 1")
    n = t.n
    d = check_dim(n, L)
    w = t.w
    out = np.zeros((d, d), dtype=complex)
    for a0 in range(n):
        if L == 1:
            out += w[a0, a0]
            continue
        cur = w[a0]  # (a_1, q'_1, q_1)
        for j in range(1, L - 1):
            m = cur.shape[1]
            cur = np.einsum("bPQ,bcrs->cPrQs", cur, w).reshape(n, m * n, m * n)
        m = cur.shape[1]
        out += np.einsum("bPQ,brs->PrQs", cur, w[:, a0]).reshape(d, d)
    return out


def z_vertex_bruteforce(t: VertexTensor, L: int, cap=DEFAULT_MAX_CONFIGS, chunk=1 << 16) -> complex:
    """Toroidal sum over all horizontal and vertical link states."""
    if L < 1:
        raise UsageError("L must be >= 1")
    n = t.n
    links = 2 * L * L
    total = check_configs(n**links, cap)
    acc = 0j
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total))
        s = np.empty((idx.size, links), dtype=np.intp)
        rem = idx
        for p in range(links - 1, -1, -1):
            s[:, p] = rem % n
            rem = rem // n
        alpha = s[:, : L * L].reshape(-1, L, L)
        gamma = s[:, L * L:].reshape(-1, L, L)
        w = t.w[alpha, np.roll(alpha, -1, axis=2), gamma, np.roll(gamma, -1, axis=1)]
        acc += w.reshape(idx.size, -1).prod(axis=1).sum()
    return complex(acc)


def vertex_two_site(hl: VertexHamiltonianLimit) -> np.ndarray:
    """Two-site operator sum w_dot(i1,i2|i3,i4) e_{i1,i4} (x) e_{i3,i2}.

    This is the first-order term of T(0)^{-1} T(eps) when the Lax operator
    is the permutator at eps = 0, with the quantum basis used by t_vertex.
    """
    wd = np.asarray(hl.w_dot, dtype=complex)
    n = wd.shape[0]
    h = np.zeros((n * n, n * n), dtype=complex)
    for i1 in range(n):
        for i2 in range(n):
            for i3 in range(n):
                for i4 in range(n):
                    if wd[i1, i2, i3, i4] != 0:
                        h += wd[i1, i2, i3, i4] * np.kron(unit(n, i1, i4), unit(n, i3, i2))
    return h


def vertex_hamiltonian(hl: VertexHamiltonianLimit, L: int) -> np.ndarray:
    if L < 2:
        raise UsageError("L must be >= 2")
    h2 = vertex_two_site(hl)
    n = int(round(np.sqrt(h2.shape[0])))
    check_dim(n, L)
    return sum(embed_two_site(h2, j, (j + 1) % L, L) for j in range(L))


def _self_test():
    for n in (2, 3):
        if not np.array_equal(lax_from_tensor(permutator_tensor(n)), permutator(n)):
            raise RuntimeError("Lax layout self-test failed: permutator tensor does not map to P")


_self_test()
