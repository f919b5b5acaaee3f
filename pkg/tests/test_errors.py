import pytest

from latticemap.errors import (DEFAULT_MAX_DIM, MAX_DIM_ENV, ConvergenceError, LatticeMapError,
                               NumericalDomainError, OffCurveError, PoleError, SizeCapError,
                               UsageError, check_configs, check_dim, max_dim)


def test_exit_codes_are_distinct():
    codes = {cls.exit_code for cls in (LatticeMapError, UsageError, SizeCapError, NumericalDomainError)}
    assert codes == {1, 2, 3, 4}
    for cls in (PoleError, OffCurveError, ConvergenceError):
        assert cls.exit_code == 4


def test_builtin_bases():
    assert issubclass(UsageError, ValueError)
    assert issubclass(NumericalDomainError, ArithmeticError)


def test_cap_default_and_override(monkeypatch):
    monkeypatch.delenv(MAX_DIM_ENV, raising=False)
    assert max_dim() == DEFAULT_MAX_DIM
    assert check_dim(2, 10) == 1024
    with pytest.raises(SizeCapError):
        check_dim(2, 11)
    monkeypatch.setenv(MAX_DIM_ENV, "4096")
    assert check_dim(2, 12) == 4096
    monkeypatch.setenv(MAX_DIM_ENV, "lots")
    with pytest.raises(UsageError):
        max_dim()
    monkeypatch.setenv(MAX_DIM_ENV, "0")
    with pytest.raises(UsageError):
        max_dim()


def test_config_cap():
    assert check_configs(10, 100) == 10
    with pytest.raises(SizeCapError):
        check_configs(101, 100)
