import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from latticemap.equivmap import (MapKind, ising_mixed8v, ising_mixed8v_from_map,
                                 isotropic_edge_weights, liwu_sixteen, map_spin_to_vertex,
                                 rotated_diag_transfer, verify_transfer_identity)
from latticemap.errors import UsageError
from latticemap.matcore import mat_trace_power
from latticemap.spin import (EdgeWeights, IsingParams, ising_edge_weights, random_edge_weights,
                             t_diag, z_spin_bruteforce)
from latticemap.vertex import (t_vertex, tensor_from_mixed8v, tensor_from_sixteen,
                               z_vertex_bruteforce)

ISING = IsingParams(1.0, 0.7, 0.3, 0.2)


def test_map_kind_parse():
    assert MapKind.parse("a") is MapKind.A
    assert MapKind.parse("B") is MapKind.B
    assert MapKind.parse(MapKind.A) is MapKind.A
    with pytest.raises(UsageError):
        MapKind.parse("c")


@pytest.mark.parametrize("kind", ["a", "b"])
def test_all_ones_gives_eight_unit_weights(kind):
    ones = EdgeWeights(np.ones((2, 2)), np.ones((2, 2)))
    w = map_spin_to_vertex(ones, kind).w
    assert np.count_nonzero(w) == 8 and np.all(w[w != 0] == 1)


@pytest.mark.parametrize("kind", ["a", "b"])
def test_ising_closed_form_matches_generic_map(kind):
    for p in (ISING, IsingParams(0.6, -0.4, 1.1, -0.3)):
        closed = ising_mixed8v(p, kind).as_dict()
        mapped = ising_mixed8v_from_map(p, kind).as_dict()
        for name in closed:
            assert closed[name] == pytest.approx(mapped[name], rel=1e-14)


def test_zero_field_weights():
    b, jh, jv = 0.8, 0.7, 0.3
    a = ising_mixed8v(IsingParams(b, jh, jv, 0), "a")
    assert a.w1 == a.w2 == pytest.approx(math.exp(b * (jh + jv)))
    assert a.v5 == a.v6 == pytest.approx(math.exp(-b * (jh + jv)))
    bb = ising_mixed8v(IsingParams(b, jh, jv, 0), "b")
    assert bb.v1 == bb.v2 == pytest.approx(math.exp(b * (-jh + jv)))
    assert bb.v5 == bb.v6 == pytest.approx(math.exp(b * (jh - jv)))
    unit = ising_mixed8v(IsingParams(1, 0, 0, 0), "a").as_dict()
    assert all(v == 1 for v in unit.values())


def test_transfer_identity_all_ones():
    ones = EdgeWeights(np.ones((2, 2)), np.ones((2, 2)))
    assert verify_transfer_identity(ones, "a", 2) == 0
    assert verify_transfer_identity(ones, "b", 2) == 0


def test_map_a_target_is_rotated_t_diag():
    # the map-A closed form is t_diag of the lattice turned by 90 degrees
    ew = random_edge_weights(3, 2)
    assert np.allclose(rotated_diag_transfer(ew, 3), t_diag(ew.swapped(), 3))


@pytest.mark.parametrize("kind", ["a", "b"])
@pytest.mark.parametrize("n,L", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (4, 2), (4, 3)])
def test_transfer_identity_grid(kind, n, L):
    ew = random_edge_weights(n, 100 + n * 10 + L)
    assert verify_transfer_identity(ew, kind, L) <= 1e-12


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["a", "b"]), st.integers(2, 3), st.integers(2, 3), st.integers(0, 2**31 - 1))
def test_transfer_identity_random_complex(kind, n, L, seed):
    r = np.random.default_rng(seed)
    shape = (n, n)
    ew = EdgeWeights(r.normal(size=shape) + 1j * r.normal(size=shape),
                     r.normal(size=shape) + 1j * r.normal(size=shape))
    scale = max(np.abs(ew.wh).max(), np.abs(ew.wv).max())
    ew = EdgeWeights(ew.wh / scale, ew.wv / scale)
    assert verify_transfer_identity(ew, kind, L) <= 1e-12


@pytest.mark.stress
@pytest.mark.parametrize("n,L", [(4, 6), (2, 10)])
def test_transfer_identity_stress(n, L, monkeypatch):
    monkeypatch.setenv("LATTICEMAP_MAX_DIM", "4096")
    ew = random_edge_weights(n, 9)
    # scale so every entry is at most 1; the identity is homogeneous
    ew = EdgeWeights(ew.wh / 1.5, ew.wv / 1.5)
    for kind in "ab":
        assert verify_transfer_identity(ew, kind, L) <= 1e-12


@pytest.mark.parametrize("kind", ["a", "b"])
@pytest.mark.parametrize("L", [2, 3])
def test_partition_equality(kind, L):
    for ew in (ising_edge_weights(ISING), random_edge_weights(3, 7)):
        if ew.n**(L * L) > 2**20:
            continue
        z_spin = z_spin_bruteforce(ew, L)
        z_ver = mat_trace_power(t_vertex(map_spin_to_vertex(ew, kind), L), L)
        assert abs(z_ver - z_spin) <= 1e-10 * abs(z_spin)


def test_partition_through_closed_form_weights():
    for kind in "ab":
        z = mat_trace_power(t_vertex(tensor_from_mixed8v(ising_mixed8v(ISING, kind)), 3), 3)
        ref = z_spin_bruteforce(ising_edge_weights(ISING), 3)
        assert abs(z - ref) <= 1e-10 * abs(ref)


def test_liwu_weights():
    p = IsingParams(1.0, 0.4, 0.4, 0.3)
    s = liwu_sixteen(p)
    assert s.w1 == pytest.approx(2 * math.cosh(0.3) * math.cosh(0.4) ** 2)
    zero = liwu_sixteen(IsingParams(1.0, 0.4, 0.4, 0.0))
    assert all(getattr(zero, f"v{i}") == 0 for i in range(1, 9))
    with pytest.raises(UsageError):
        liwu_sixteen(IsingParams(1.0, -0.4, -0.4, 0.3))


def test_liwu_partition_l2():
    p = IsingParams(1.0, 0.4, 0.4, 0.3)
    z16 = z_vertex_bruteforce(tensor_from_sixteen(liwu_sixteen(p)), 2)
    zi = z_spin_bruteforce(isotropic_edge_weights(p), 2)
    assert abs(z16 - zi) <= 1e-10 * abs(zi)


@pytest.mark.stress
def test_liwu_partition_l3():
    p = IsingParams(1.0, 0.4, 0.4, 0.3)
    z16 = z_vertex_bruteforce(tensor_from_sixteen(liwu_sixteen(p)), 3)
    zi = z_spin_bruteforce(isotropic_edge_weights(p), 3)
    assert abs(z16 - zi) <= 1e-10 * abs(zi)
