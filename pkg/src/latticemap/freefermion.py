"""Gauge map from the mixed eight-vertex model to a free-fermion even
eight-vertex model, and the resulting zero-field Ising correspondences."""
import cmath
import math
from dataclasses import dataclass

import numpy as np

from .equivmap import MapKind
from .errors import NumericalDomainError, UsageError
from .spin import IsingParams
from .vertex import EVEN_SLOTS, Even8VWeights, Mixed8VWeights, even8v_from_tensor, tensor_from_lax
from .mixed8v import mixed_lax

CONSTRAINT_TOL = 1e-10
PATTERN_TOL = 1e-10
CLOSED_FORM_TOL = 1e-9

# Lax positions that must vanish for the even pattern
_EVEN_POSITIONS = {(i1 * 2 + i3, i2 * 2 + i4) for (i1, i2, i3, i4) in EVEN_SLOTS.values()}
ODD_POSITIONS = tuple((r, c) for r in range(4) for c in range(4) if (r, c) not in _EVEN_POSITIONS)


@dataclass(frozen=True)
class GaugeParams:
    z1: complex = 1.0
    z2: complex = 1.0

    def __post_init__(self):
        if self.z1 == 0 or self.z2 == 0:
            raise UsageError("gauge parameters must be non-zero")


def check_constraints(m: Mixed8VWeights, tol=CONSTRAINT_TOL):
    """w2 = w1 and v1 v6 w5 = v2 v5 w6, relative to the weight scale."""
    if any(complex(x) == 0 for x in (m.v1, m.v2, m.v5, m.v6)):
        raise NumericalDomainError("gauge map needs all odd weights v1, v2, v5, v6 non-zero")
    s1 = max(abs(m.w1), abs(m.w2))
    lhs, rhs = m.v1 * m.v6 * m.w5, m.v2 * m.v5 * m.w6
    if abs(m.w2 - m.w1) > tol * s1 or abs(lhs - rhs) > tol * max(abs(lhs), abs(rhs)):
        raise NumericalDomainError("mixed weights violate w2 = w1 or v1 v6 w5 = v2 v5 w6")


def gauge_matrices(m: Mixed8VWeights, g: GaugeParams):
    check_constraints(m)
    r1 = cmath.sqrt(m.v1 / m.v2)
    r5 = cmath.sqrt(m.v5 / m.v6)
    m1 = np.array([[1, r1], [-g.z1 / r1, g.z1]], dtype=complex)
    m2 = np.array([[1, r5], [-g.z2 / r5, g.z2]], dtype=complex)
    return m1, m2


def gauge_transformed_lax(m: Mixed8VWeights, g: GaugeParams) -> np.ndarray:
    """(M1 (x) M2) L (M1 (x) M2)^{-1}, with M1 on the auxiliary factor."""
    m1, m2 = gauge_matrices(m, g)
    gm = np.kron(m1, m2)
    return gm @ mixed_lax(m) @ np.linalg.inv(gm)


def closed_form_even_weights(m: Mixed8VWeights, g: GaugeParams) -> Even8VWeights:
    s = cmath.sqrt
    w1, w5, w6 = complex(m.w1), complex(m.w5), complex(m.w6)
    v1, v2, v5, v6 = (complex(x) for x in (m.v1, m.v2, m.v5, m.v6))
    z1, z2 = complex(g.z1), complex(g.z2)
    ww, p1, p5 = s(w6 * w5), s(v1 * v2), s(v5 * v6)
    return Even8VWeights(
        a_plus=(w1 + ww + p1 + p5) / 2,
        a_minus=(w1 + ww - p1 - p5) / 2,
        b_plus=(w1 - ww + p1 - p5) / 2,
        b_minus=(w1 - ww - p1 + p5) / 2,
        c_plus=z2 / z1 * (w1 * s(w6 / w5) + w6 - v1 * s(v6 / v5) - v6 * s(v1 / v2)) / 2,
        c_minus=z1 / z2 * (w1 * s(w5 / w6) + w5 + v2 * s(v5 / v6) + v5 * s(v2 / v1)) / 2,
        d_plus=(w1 * s(v1 * v5 / (v2 * v6)) - v1 * w5 / v2 + v5 * s(v1 / v2) - v1 * s(v5 / v6)) / (2 * z1 * z2),
        d_minus=z1 * z2 * (w1 * s(v2 * v6 / (v1 * v5)) - v6 * w5 / v5 + v2 * s(v6 / v5) - v6 * s(v2 / v1)) / 2,
    )


def gauge_transform_lax(m: Mixed8VWeights, g: GaugeParams) -> Even8VWeights:
    """Even eight-vertex weights obtained by the gauge map.

    The transformed Lax must have the even zero pattern and agree with the
    closed-form weights; both are checked.
    """
    lt = gauge_transformed_lax(m, g)
    scale = np.abs(lt).max()
    leak = max(abs(lt[pos]) for pos in ODD_POSITIONS)
    if leak > PATTERN_TOL * scale:
        raise NumericalDomainError(f"gauge image is not of even type (leak {leak / scale:.2e})")
    got = even8v_from_tensor(tensor_from_lax(lt))
    ref = closed_form_even_weights(m, g)
    gap = max(abs(a - b) for a, b in zip(got.as_dict().values(), ref.as_dict().values()))
    if gap > CLOSED_FORM_TOL * scale:
        raise NumericalDomainError(f"gauge image differs from closed form by {gap:.2e}")
    return got


def symmetrizing_gauge(m: Mixed8VWeights) -> GaugeParams:
    """Gauge with c+ = c- and d+ = d-.

    c+ scales as z2/z1 and c- as z1/z2, d+ as 1/(z1 z2) and d- as z1 z2, so
    the two conditions fix z2/z1 and z1 z2 in closed form.
    """
    base = closed_form_even_weights(m, GaugeParams())
    if 0 in (base.c_plus, base.c_minus, base.d_plus, base.d_minus):
        raise NumericalDomainError("c or d weights vanish; no symmetrizing gauge")
    ratio = cmath.sqrt(base.c_minus / base.c_plus)  # z2 / z1
    prod = cmath.sqrt(base.d_plus / base.d_minus)  # z1 * z2
    z1 = cmath.sqrt(prod / ratio)
    return GaugeParams(z1, z1 * ratio)


def ising_freefermion_weights(p: IsingParams, kind) -> Even8VWeights:
    """Closed-form free-fermion weights equivalent to the zero-field Ising model."""
    kind = MapKind.parse(kind)
    if p.hfield != 0:
        raise UsageError("free-fermion correspondence requires zero field")
    jh, jv = p.beta * p.jh, p.beta * p.jv
    if not (jh > 0 and jv > 0):
        raise UsageError("free-fermion correspondence requires positive couplings")
    ch, sh, cv, sv = math.cosh(jh), math.sinh(jh), math.cosh(jv), math.sinh(jv)
    if kind is MapKind.A:
        root = math.sqrt(2 * math.sinh(2 * jv))
        return Even8VWeights(2 * ch * cv, 2 * ch * sv, 2 * sh * cv, 2 * sh * sv,
                             ch * root, ch * root, sh * root, sh * root)
    cd = math.sqrt(math.sinh(2 * jh) * math.sinh(2 * jv))
    return Even8VWeights(2 * ch * cv, 2 * sh * sv, 2 * ch * sv, 2 * sh * cv, cd, cd, cd, cd)
