"""Error types and size caps shared across the package.

Each error class carries the process exit code the CLI maps it to.
"""
import os

DEFAULT_MAX_DIM = 1024
DEFAULT_MAX_CONFIGS = 2**25
MAX_DIM_ENV = "LATTICEMAP_MAX_DIM"


class LatticeMapError(Exception):
    exit_code = 1


class UsageError(LatticeMapError, ValueError):
    exit_code = 2


class SizeCapError(LatticeMapError):
    exit_code = 3


class NumericalDomainError(LatticeMapError, ArithmeticError):
    exit_code = 4


class PoleError(NumericalDomainError):
    """Evaluation too close to a pole of a meromorphic function."""


class OffCurveError(NumericalDomainError):
    """Weights do not share the algebraic invariants required by a construction."""


class ConvergenceError(NumericalDomainError):
    pass


def max_dim():
    """Matrix-side cap, overridable through ``LATTICEMAP_MAX_DIM``."""
    raw = os.environ.get(MAX_DIM_ENV)
    if raw is None:
        return DEFAULT_MAX_DIM
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"{MAX_DIM_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise UsageError(f"{MAX_DIM_ENV} must be positive")
    return value


def check_dim(n, L):
    d = n**L
    cap = max_dim()
    if d > cap:
        raise SizeCapError(f"matrix side n^L = {n}^{L} = {d} exceeds cap {cap} (set {MAX_DIM_ENV})")
    return d


def check_configs(count, cap=DEFAULT_MAX_CONFIGS):
    if count > cap:
        raise SizeCapError(f"{count} configurations exceed enumeration cap {cap}")
    return count
