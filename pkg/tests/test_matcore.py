import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from latticemap.errors import ConvergenceError, UsageError
from latticemap.matcore import (as_cmatrix, basis_digits, eig_spectrum, embed_two_site, kron,
                                mat_trace_power, nullspace, permutator, rel_frobenius,
                                site_operator, unit)


def test_kron_small_cases():
    assert np.array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))
    assert np.array_equal(kron(np.diag([1, 2]), np.eye(2)), np.diag([1, 1, 2, 2]))


def test_trace_power_small_cases():
    assert mat_trace_power(np.eye(4), 3) == pytest.approx(4)
    assert mat_trace_power(np.diag([1.0, 2.0]), 2) == pytest.approx(5)


def test_trace_power_matches_eigenvalues(rng):
    m = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    want = np.sum(np.linalg.eigvals(m) ** 4)
    got = mat_trace_power(m, 4)
    assert abs(got - want) <= 1e-10 * abs(want)


def test_trace_power_rejects_bad_input():
    with pytest.raises(UsageError):
        mat_trace_power(np.ones((2, 3)), 2)
    with pytest.raises(UsageError):
        mat_trace_power(np.eye(2), -1)


def test_as_cmatrix_rejects_nonfinite():
    with pytest.raises(UsageError):
        as_cmatrix(np.array([[np.nan]]))


def test_nullspace_small_cases():
    assert nullspace(np.zeros((3, 3))).dim == 3
    res = nullspace(np.eye(3))
    assert res.dim == 0 and res.rank == 3
    row = np.array([[1.0, 2.0, -1.0]])
    res = nullspace(np.vstack([row, row]))
    assert res.dim == 2
    assert np.abs(row @ res.basis).max() < 1e-14


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 5), st.integers(0, 4), st.integers(0, 2**31 - 1))
def test_nullspace_of_random_low_rank(rank, extra, seed):
    r = np.random.default_rng(seed)
    cols = rank + extra
    a = r.normal(size=(7, rank)) @ r.normal(size=(rank, cols))
    res = nullspace(a)
    assert res.dim == cols - min(rank, cols)
    if res.dim:
        assert np.abs(a @ res.basis).max() < 1e-9 * max(1.0, np.abs(a).max())
    # the basis is orthonormal
    g = res.basis.conj().T @ res.basis
    assert np.allclose(g, np.eye(res.dim), atol=1e-12)


def test_eig_spectrum_examples(rng):
    assert np.allclose(eig_spectrum(np.diag([3.0, 1.0, 2.0])), [1, 2, 3])
    assert np.allclose(eig_spectrum(np.array([[0, 1], [1, 0]])), [-1, 1])
    a = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    h = a + a.conj().T
    assert np.abs(eig_spectrum(h).imag).max() <= 1e-10


def test_eig_spectrum_nonfinite():
    with pytest.raises((ConvergenceError, UsageError)):
        eig_spectrum(np.array([[np.inf, 0], [0, 1]]))


def test_permutator_swaps():
    p = permutator(3)
    a, b = np.arange(3.0), np.array([1.0, -2.0, 0.5])
    assert np.allclose(p @ np.kron(a, b), np.kron(b, a))
    assert np.allclose(p @ p, np.eye(9))


def test_basis_digits_most_significant_first():
    d = basis_digits(2, 3)
    assert d.tolist()[5] == [1, 0, 1]


def test_site_operator_and_embedding_agree(rng):
    L, n = 4, 2
    a = rng.normal(size=(n, n))
    b = rng.normal(size=(n, n))
    direct = site_operator(a, 1, L) @ site_operator(b, 3, L)
    assert np.allclose(embed_two_site(np.kron(a, b), 1, 3, L), direct)
    # reversed order means the first factor lands on the second site
    assert np.allclose(embed_two_site(np.kron(b, a), 3, 1, L), direct)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**31 - 1))
def test_embedding_of_entangled_operator_against_loop(seed):
    r = np.random.default_rng(seed)
    n, L, i, j = 2, 3, 2, 0
    op = r.normal(size=(4, 4))
    got = embed_two_site(op, i, j, L)
    want = np.zeros((8, 8))
    dig = basis_digits(n, L)
    for row in range(8):
        for col in range(8):
            r_, c_ = dig[row], dig[col]
            if r_[1] != c_[1]:
                continue
            want[row, col] = op[r_[i] * n + r_[j], c_[i] * n + c_[j]]
    assert np.allclose(got, want)


def test_unit_and_rel_frobenius():
    e = unit(3, 0, 2)
    assert e[0, 2] == 1 and e.sum() == 1
    assert rel_frobenius(np.zeros((2, 2)), np.eye(2)) == 0
    assert rel_frobenius(np.eye(2), np.eye(2)) == pytest.approx(1)
