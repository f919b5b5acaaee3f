"""Integrable symmetric mixed eight-vertex model.

Covers the two algebraic invariants, the closed-form R-matrix, the
elliptic parametrisation, the quartic surface carrying the R entries,
the Hamiltonian limit and its XY + Dzyaloshinsky-Moriya form, and the
comparison with the symmetric even eight-vertex R-matrix.

Symmetric weights are (w1, w5, v1, v5) with w2=w1, w6=w5, v2=v1, v6=v5.
R entries are written in bold in the literature; here they are returned
as a ``BoldEntries`` tuple.
"""
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .elliptic import EllipticParams, jacobi_sncndn, jacobi_sn
from .equivmap import MapKind, ising_mixed8v
from .errors import NumericalDomainError, OffCurveError, UsageError, check_dim
from .matcore import embed_two_site
from .spin import IsingParams
from .vertex import (Even8VWeights, Mixed8VWeights, lax_from_tensor, tensor_from_even8v,
                     tensor_from_mixed8v)

ON_CURVE_TOL = 1e-8

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)


@dataclass(frozen=True)
class InvariantPair:
    delta1: complex
    delta2: complex

    def close_to(self, other, tol=ON_CURVE_TOL):
        a = np.array([self.delta1, self.delta2])
        b = np.array([other.delta1, other.delta2])
        return bool(np.all(np.abs(a - b) <= tol * np.maximum(1.0, np.abs(b))))


class BoldEntries(NamedTuple):
    w1: complex
    w5: complex
    v1: complex
    v5: complex


@dataclass(frozen=True)
class MixedChainParams:
    theta: float
    kappa: float
    j: float = 1.0

    def __post_init__(self):
        if not 0.0 <= self.theta <= math.pi:
            raise UsageError("theta must lie in [0, pi]")

    @property
    def h(self):
        return self.kappa * math.cos(self.theta)

    @property
    def d(self):
        return self.kappa * math.sin(self.theta)

    @property
    def gamma(self):
        return math.sqrt(1.0 + self.d**2)

    def invariants(self):
        """(delta1, delta2) = (exp(-2i theta), 2 exp(-i theta) / kappa)."""
        if self.kappa == 0:
            raise NumericalDomainError("kappa = 0 sends delta2 to infinity")
        return InvariantPair(complex(np.exp(-2j * self.theta)), complex(2 * np.exp(-1j * self.theta) / self.kappa))


@dataclass(frozen=True)
class BaxterParams:
    gamma_b: complex
    delta_b: complex

    @classmethod
    def from_invariants(cls, inv: InvariantPair):
        g = (1 - inv.delta1) / (1 + inv.delta1)
        return cls(g, inv.delta2 / (1 + g))

    def invariants(self):
        return InvariantPair((1 - self.gamma_b) / (1 + self.gamma_b), self.delta_b * (1 + self.gamma_b))


@dataclass(frozen=True)
class CanonicalTransform:
    u: complex
    v: complex


def _sym(m):
    if isinstance(m, Mixed8VWeights):
        return complex(m.w1), complex(m.w5), complex(m.v1), complex(m.v5)
    return tuple(complex(x) for x in m)


def invariants_of(m: Mixed8VWeights) -> InvariantPair:
    """delta1 = w5 v1 / (w1 v5), delta2 = (w1^2 + v5^2 - w5^2 - v1^2) / (2 w1 v5)."""
    w1, w5, v1, v5 = _sym(m)
    if w1 * v5 == 0:
        raise NumericalDomainError("invariants need w1 * v5 != 0")
    return InvariantPair(w5 * v1 / (w1 * v5), (w1**2 + v5**2 - w5**2 - v1**2) / (2 * w1 * v5))


def uniformized_weights(p: EllipticParams) -> Mixed8VWeights:
    """w1 = sn(x + i lam), w5 = sn(i lam), v5 = sn(x), v1 = -k w5 v5 w1."""
    w1 = jacobi_sn(p.x + 1j * p.lam, p.k)
    w5 = jacobi_sn(1j * p.lam, p.k)
    v5 = jacobi_sn(p.x, p.k)
    return Mixed8VWeights.symmetric(w1, w5, -p.k * w5 * v5 * w1, v5)


def elliptic_invariants(k, lam) -> InvariantPair:
    sn, cn, dn = jacobi_sncndn(1j * lam, k)
    return InvariantPair(-k * sn**2, cn * dn)


def mixed_lax(m: Mixed8VWeights) -> np.ndarray:
    return lax_from_tensor(tensor_from_mixed8v(m))


def mixed_r_matrix(b: BoldEntries) -> np.ndarray:
    return mixed_lax(Mixed8VWeights.symmetric(b.w1, b.w5, b.v1, b.v5))


def _require_same_curve(m1, m2):
    i1, i2 = invariants_of(m1), invariants_of(m2)
    if not i1.close_to(i2):
        raise OffCurveError(f"weights lie on different curves: {i1} vs {i2}")
    return i1


def closed_form_entries(m1, m2, w5_bold=1.0) -> BoldEntries:
    """R entries for the pair (m1, m2); bold w5 is the free normalisation."""
    _require_same_curve(m1, m2)
    a1, c1, d1, b1 = _sym(m1)  # w1', w5', v1', v5'
    a2, c2, d2, b2 = _sym(m2)
    den1 = c1 * a2
    den5 = a2 * (d1 * d2 - c1 * c2)
    if den1 == 0 or den5 == 0 or b2 == 0:
        raise NumericalDomainError("closed-form R has a vanishing denominator")
    W5 = complex(w5_bold)
    W1 = W5 * a1 * c2 / den1
    V5 = W5 * c2 * (a1 * b2 - b1 * a2) / den5
    V1 = V5 * a1 * d2 / (c1 * b2)
    return BoldEntries(W1, W5, V1, V5)


def closed_form_r(m1, m2, w5_bold=1.0) -> np.ndarray:
    return mixed_r_matrix(closed_form_entries(m1, m2, w5_bold))


def unitarity_normalization(x1, x2, k):
    return 1.0 / (1.0 + 1j * math.sqrt(k) * jacobi_sn(x1 - x2, k))


def uniformized_r(x1, x2, k, lam, normalized=True) -> np.ndarray:
    p = EllipticParams(k, lam)
    w5 = unitarity_normalization(x1, x2, k) if normalized else 1.0
    return closed_form_r(uniformized_weights(p.at(x1)), uniformized_weights(p.at(x2)), w5)


def functional_equations(b: BoldEntries, m1, m2):
    """The twelve polynomial relations the YBE imposes on the symmetric family.

    Returned as a dict of raw residuals keyed TWO1..TWO4, FOUR1..FOUR8.
    """
    W1, W5, V1, V5 = b
    w1a, w5a, v1a, v5a = _sym(m1)
    w1b, w5b, v1b, v5b = _sym(m2)
    return {
        "TWO1": W1 * w5a * w1b - W5 * w1a * w5b,
        "TWO2": W5 * v1a * v5b - W1 * v5a * v1b,
        "TWO3": V1 * w5a * v5b - V5 * w1a * v1b,
        "TWO4": V5 * v1a * w1b - V1 * v5a * w5b,
        "FOUR1": W5 * v1a * w1b - V1 * (w5a * w5b - v1a * v1b) - W1 * w1a * v1b,
        "FOUR2": W5 * (v5a * w1b - w1a * v5b) - V5 * w5a * w1b + V1 * v5a * v1b,
        "FOUR3": W1 * w5a * v5b - W5 * v5a * w5b + V5 * (w5a * w5b - v1a * v1b),
        "FOUR4": W1 * (v5a * w1b - w1a * v5b) + V1 * v1a * v5b - V5 * w1a * w5b,
        "FOUR5": V1 * (w1a * w1b - v5a * v5b) - W1 * v1a * w1b + W5 * w1a * v1b,
        "FOUR6": V1 * w5a * w1b - W5 * (v1a * w5b - w5a * v1b) - V5 * v5a * v1b,
        "FOUR7": V5 * (w1a * w1b - v5a * v5b) + W5 * w5a * v5b - W1 * v5a * w5b,
        "FOUR8": V5 * v1a * v5b - V1 * w1a * w5b + W1 * (v1a * w5b - w5a * v1b),
    }


def surface_eval(b, inv: InvariantPair):
    """Quartic S at [w1:w5:v1:v5] and its gradient (d/dw1, d/dw5, d/dv1, d/dv5)."""
    w1, w5, v1, v5 = (complex(x) for x in b)
    if inv.delta1 == 0:
        raise NumericalDomainError("surface needs delta1 != 0")
    c = (1 + inv.delta1**2 - inv.delta2**2) / inv.delta1
    q0 = v5**2 + w5**2 - w1**2
    s = (v1**4 + 4 * c * v1 * v5 * w1 * w5 - 2 * v1**2 * (v5**2 + w1**2 + w5**2)
         + (v5 - w1 - w5) * (v5 + w1 - w5) * (v5 - w1 + w5) * (v5 + w1 + w5))
    grad = (
        4 * c * v1 * v5 * w5 - 4 * v1**2 * w1 - 4 * w1 * q0,
        4 * c * v1 * v5 * w1 - 4 * v1**2 * w5 + 4 * w5 * (w5**2 - v5**2 - w1**2),
        4 * v1**3 + 4 * c * v5 * w1 * w5 - 4 * v1 * (v5**2 + w1**2 + w5**2),
        4 * c * v1 * w1 * w5 - 4 * v1**2 * v5 + 4 * v5 * (v5**2 - w5**2 - w1**2),
    )
    return s, grad


def singular_points():
    """The twelve isolated singular points [w1:w5:v1:v5] of the surface."""
    pts = {}
    for sign, tag in ((1, "+"), (-1, "-")):
        pts["P1" + tag] = (0, 1, 0, sign)
        pts["P2" + tag] = (0, 1, sign, 0)
        pts["P3" + tag] = (1, sign, 0, 0)
        pts["P4" + tag] = (1, 0, sign, 0)
        pts["P5" + tag] = (1, 0, 0, sign)
        pts["P6" + tag] = (0, 0, 1, sign)
    return pts


def r_invariant_functions(m1, m2, b: BoldEntries = None, tol=1e-8):
    """F1, F2 from the second point, checked against the bold-entry combinations."""
    w1, w5, v1, v5 = _sym(m2)
    f1 = w1 * v1 / (w5 * v5)
    f2 = (w1**2 + v1**2 - w5**2 - v5**2) / (2 * w5 * v5)
    if b is None:
        b = closed_form_entries(m1, m2)
    scale = max(abs(x) for x in b)
    if abs(b.v5) > 1e-12 * scale and abs(b.w1) > 1e-12 * scale:
        g1 = b.w5 * b.v1 / (b.w1 * b.v5)
        g2 = (b.w1**2 + b.v5**2 - b.w5**2 - b.v1**2) / (2 * b.w1 * b.v5)
        gap = max(abs(g1 - f1) / max(1, abs(f1)), abs(g2 - f2) / max(1, abs(f2)))
        if gap > tol:
            raise OffCurveError(f"R entries disagree with second-point functions by {gap:.3e}")
    return f1, f2


def elimination_residuals(b: BoldEntries, inv: InvariantPair, m2):
    """Affine elimination identities in x = w1''/w5'', y = v5''/w5''.

    Keys: ELI3, ELI4, ELI5, y_elimination (recovered y minus y) and final.
    """
    W1, W5, V1, V5 = b
    D1, D2 = inv.delta1, inv.delta2
    w1, w5, _, v5 = _sym(m2)
    x, y = w1 / w5, v5 / w5
    y_rec = (V5**2 - V1**2 + W1**2 - W5**2 - 2 * D2 * V5 * W1 * x) / (2 * V5 * W1 * (-1 + D1**2 * x**2))
    return {
        "ELI3": V5**2 - V1**2 + W1**2 - W5**2 - 2 * D2 * V5 * W1 * x + 2 * V5 * W1 * y
                - 2 * D1**2 * V5 * W1 * x**2 * y,
        "ELI4": V1 * W5 - D1 * V5 * W1 * x**2,
        "ELI5": x**2 - 2 * D2 * x * y + y**2 - D1**2 * x**2 * y**2 - 1,
        "y_elimination": y_rec - y,
        "final": (-V1**4 - V5**4 - (W1**2 - W5**2) ** 2 + 2 * V1**2 * (V5**2 + W1**2 - W5**2)
                  + 2 * V5**2 * (W5**2 + W1**2 * (1 + 2 * x**2 * (-1 + D2**2 + D1**2 * (-1 + x**2))))),
    }


def onsager_check(p: IsingParams):
    """Invariants of the zero-field map-A weights and 2 sinh(2 beta Jh) sinh(2 beta Jv)."""
    m = ising_mixed8v(IsingParams(p.beta, p.jh, p.jv, 0.0), MapKind.A)
    inv = invariants_of(m)
    rhs = 2 * math.sinh(2 * p.beta * p.jh) * math.sinh(2 * p.beta * p.jv)
    return inv.delta1, inv.delta2, complex(rhs)


def onsager_partner(p: IsingParams, jh_new) -> IsingParams:
    """Couplings (jh_new, jv') sharing sinh(2 beta Jh) sinh(2 beta Jv) with ``p``."""
    target = math.sinh(2 * p.beta * p.jh) * math.sinh(2 * p.beta * p.jv)
    jv = math.asinh(target / math.sinh(2 * p.beta * jh_new)) / (2 * p.beta)
    return IsingParams(p.beta, jh_new, jv, 0.0)


# -- Hamiltonian limit -------------------------------------------------------

def mixed_two_site(inv: InvariantPair, v5_dot, w5_dot=0.0) -> np.ndarray:
    """Two-site operator of the first-order expansion around the permutator."""
    D1, D2 = inv.delta1, inv.delta2
    a = w5_dot + D2 * v5_dot
    return np.array([
        [a, 0, D1 * v5_dot, 0],
        [0, w5_dot, 0, v5_dot],
        [v5_dot, 0, w5_dot, 0],
        [0, D1 * v5_dot, 0, a],
    ], dtype=complex)


def _chain(L, terms):
    d = check_dim(2, L)
    h = np.zeros((d, d), dtype=complex)
    for j in range(L):
        for coef, op_a, op_b in terms:
            if op_b is None:
                h += coef * embed_two_site(np.kron(op_a, np.eye(2)), j, (j + 1) % L, L)
            else:
                h += coef * embed_two_site(np.kron(op_a, op_b), j, (j + 1) % L, L)
    return h


def mixed_hamiltonian_general(inv: InvariantPair, j, L) -> np.ndarray:
    """-J sum (sz sz + (D1+1)/D2 sx + i (D1-1)/D2 sy sz) for arbitrary invariants."""
    if L < 2:
        raise UsageError("L must be >= 2")
    D1, D2 = inv.delta1, inv.delta2
    return _chain(L, [(-j, SZ, SZ), (-j * (D1 + 1) / D2, SX, None), (-j * 1j * (D1 - 1) / D2, SY, SZ)])


def mixed_hamiltonian(p: MixedChainParams, L) -> np.ndarray:
    """-J sum (sz_j sz_{j+1} + h sx_j + D sy_j sz_{j+1}), periodic."""
    if L < 2:
        raise UsageError("L must be >= 2")
    return _chain(L, [(-p.j, SZ, SZ), (-p.j * p.h, SX, None), (-p.j * p.d, SY, SZ)])


def xy_dm_hamiltonian(p: MixedChainParams, L) -> np.ndarray:
    """Anisotropic XY chain in a transverse field with a z-axis DM term."""
    if L < 2:
        raise UsageError("L must be >= 2")
    g = p.gamma
    return _chain(L, [
        (-p.j * (1 + g) / 2, SX, SX), (-p.j * (1 - g) / 2, SY, SY),
        (-p.j * p.h, SZ, None),
        (-p.j * p.d / 2, SX, SY), (p.j * p.d / 2, SY, SX),
    ])


def canonical_transform(d) -> CanonicalTransform:
    """U from the closed form; V fixed by U V = -D / (2 gamma)."""
    g4 = (1 + d * d) ** 0.25
    u = (np.sqrt(1 + 1j * d) + np.sqrt(1 - 1j * d)) / (2 * g4)
    gamma = math.sqrt(1 + d * d)
    v = -d / (2 * gamma * u)
    return CanonicalTransform(complex(u), complex(v))


def rotated_paulis(ct: CanonicalTransform):
    """Images of (sx, sy, sz) under sx -> sz, sy -> U sy + V sx, sz -> V sy - U sx."""
    return SZ, ct.u * SY + ct.v * SX, ct.v * SY - ct.u * SX


# -- even eight-vertex comparison -----------------------------------------

def mixed_to_even(m) -> tuple:
    """Weight correspondence a = w1, b = v5, c = w5, d = v1."""
    w1, w5, v1, v5 = _sym(m)
    return w1, v5, w5, v1


def even_invariants(a, b, c, d) -> InvariantPair:
    return InvariantPair(c * d / (a * b), (a * a + b * b - c * c - d * d) / (2 * a * b))


def even_lax(a, b, c, d) -> np.ndarray:
    return lax_from_tensor(tensor_from_even8v(Even8VWeights.symmetric(a, b, c, d)))


def baxter_even_entries(e1, e2):
    """(bold a, bold b, bold c, bold d) with bold c = 1 for symmetric even weights."""
    a1, b1, c1, d1 = (complex(x) for x in e1)
    a2, b2, c2, d2 = (complex(x) for x in e2)
    if not even_invariants(a1, b1, c1, d1).close_to(even_invariants(a2, b2, c2, d2)):
        raise OffCurveError("even weights lie on different curves")
    den = (b1 * b2 - a1 * a2) * (c1**2 * a2**2 - a1**2 * d2**2)
    if den == 0 or c2 == 0 or b2 == 0 or d2 == 0:
        raise NumericalDomainError("even R has a vanishing denominator")
    quad = c1**2 * b2**2 - a1**2 * c2**2
    A = a2**2 / c2**2 * (c1 * c2 - d1 * d2) * quad / den
    B = a2 * b2 / (c2 * d2) * (c1 * d2 - d1 * c2) / (b1 * b2 - a1 * a2)
    D = d2 * a2 / (b2 * c2) * (b1 * a2 - a1 * b2) * quad / den
    return A, B, 1.0 + 0j, D


def baxter_even_r(e1, e2) -> np.ndarray:
    return even_lax(*baxter_even_entries(e1, e2))
