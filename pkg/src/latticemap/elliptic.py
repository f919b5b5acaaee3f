"""Jacobi elliptic functions sn, cn, dn for complex argument and real modulus.

Real arguments go through the descending Landen (AGM) recursion.  A complex
argument u = x + iy is split into sn, cn, dn of x with modulus k and of y
with the complementary modulus k' = sqrt(1 - k^2), then recombined with
the addition theorem after the imaginary transformation.  Accuracy is
guaranteed for |Im u| < K(k'); beyond that strip the poles at i K(k') are
approached and relative accuracy degrades.
"""
import math
from dataclasses import dataclass

from .errors import PoleError, UsageError

# Values whose magnitude would exceed this are treated as poles.
POLE_LIMIT = 1e12
_EPS = 2.0**-53


def _check_modulus(k):
    if not (0.0 <= k < 1.0) or not math.isfinite(k):
        raise UsageError(f"modulus k must satisfy 0 <= k < 1, got {k}")


def _agm_ladder(k):
    a, b, c = 1.0, math.sqrt((1.0 - k) * (1.0 + k)), k
    ladder = [(a, c)]
    for _ in range(64):
        if abs(c) <= _EPS * a:
            break
        a, b, c = 0.5 * (a + b), math.sqrt(a * b), 0.5 * (a - b)
        ladder.append((a, c))
    return ladder


def ellipk(k):
    """Complete elliptic integral of the first kind K(k) via the AGM."""
    _check_modulus(k)
    a = _agm_ladder(k)[-1][0]
    return math.pi / (2.0 * a)


def _sncndn_real(x, k):
    """sn, cn, dn of a real argument for 0 <= k <= 1."""
    if k == 1.0:
        s = 1.0 / math.cosh(x)
        return math.tanh(x), s, s
    if k == 0.0:
        return math.sin(x), math.cos(x), 1.0
    ladder = _agm_ladder(k)
    a_n = ladder[-1][0]
    # reduce modulo the real period 4K; all three functions are 4K-periodic
    period = 2.0 * math.pi / a_n
    x = x - period * round(x / period)
    n = len(ladder) - 1
    phi = (2.0**n) * a_n * x
    for a, c in reversed(ladder[1:]):
        phi = 0.5 * (phi + math.asin(c / a * math.sin(phi)))
    sn, cn = math.sin(phi), math.cos(phi)
    m = k * k
    dn = math.sqrt((1.0 - m) + m * cn * cn)
    return sn, cn, dn


def jacobi_sncndn(u, k):
    """Return (sn, cn, dn) at complex ``u`` for modulus ``k``."""
    _check_modulus(float(k))
    u = complex(u)
    if not (math.isfinite(u.real) and math.isfinite(u.imag)):
        raise UsageError("argument must be finite")
    k = float(k)
    s, c, d = _sncndn_real(u.real, k)
    if u.imag == 0.0:
        return complex(s), complex(c), complex(d)
    kc = math.sqrt((1.0 - k) * (1.0 + k))
    s1, c1, d1 = _sncndn_real(u.imag, kc)
    m = k * k
    den = c1 * c1 + m * s * s * s1 * s1
    sn_num = complex(s * d1, c * d * s1 * c1)
    cn_num = complex(c * c1, -s * d * s1 * d1)
    dn_num = complex(d * c1 * d1, -m * s * c * s1)
    peak = max(abs(sn_num), abs(cn_num), abs(dn_num))
    if den == 0.0 or peak > POLE_LIMIT * abs(den):
        raise PoleError(f"Jacobi functions have a pole near u={u} (k={k})")
    return sn_num / den, cn_num / den, dn_num / den


def jacobi_sn(u, k):
    return jacobi_sncndn(u, k)[0]


def jacobi_cn(u, k):
    return jacobi_sncndn(u, k)[1]


def jacobi_dn(u, k):
    return jacobi_sncndn(u, k)[2]


@dataclass(frozen=True)
class EllipticParams:
    """Spectral point ``x``, crossing parameter ``lam`` and modulus ``k``."""

    k: float
    lam: float
    x: complex = 0.0

    def __post_init__(self):
        if not (0.0 < self.k < 1.0):
            raise UsageError(f"modulus k must lie in (0, 1), got {self.k}")
        if not (math.isfinite(self.lam) and self.lam > 0.0):
            raise UsageError(f"crossing parameter must be positive, got {self.lam}")

    def at(self, x):
        return EllipticParams(self.k, self.lam, x)
