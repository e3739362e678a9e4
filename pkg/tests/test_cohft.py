"""Graph-sum engine: stable graphs, psi-integrals, the dressed correlators
and the appendix identities."""
import pytest
from gmpy2 import mpq

from mirrorforge.cohft import (
    StableGraph,
    build_cohft_input,
    enumerate_stable_graphs,
    frame_basis_vector,
    frame_phi0,
    graph_contributions,
    psi_integral,
    rt_omega_integral,
    tqft_omega,
    tqft_only_input,
    verify_appendix,
)


def test_graph_enumeration():
    assert len(enumerate_stable_graphs(0, 3)) == 1
    four = enumerate_stable_graphs(0, 4)
    assert len(four) == 4
    assert sum(len(G.edges) for G in four) == 3
    one_one = enumerate_stable_graphs(1, 1)
    assert len(one_one) == 2
    assert one_one[0].genus == (1,)
    assert one_one[1].aut == 2
    assert all(G.total_genus() == 1 for G in one_one)
    with pytest.raises(ValueError):
        enumerate_stable_graphs(2, 0)
    with pytest.raises(ValueError):
        enumerate_stable_graphs(0, 5)


def test_unstable_vertex_rejected():
    with pytest.raises(ValueError):
        StableGraph((0,), (), (0, 0), 1, "bad")


def test_graph_json():
    G = enumerate_stable_graphs(1, 1)[1]
    blob = G.to_json()
    assert blob["genus"] == [0]
    assert blob["edges"] == [[0, 0]]
    assert blob["aut"] == 2


def test_psi_integral_genus_zero():
    assert psi_integral(0, (0, 0, 0)) == 1
    assert psi_integral(0, (1, 0, 0, 0)) == 1
    assert psi_integral(0, (2, 0, 0, 0, 0)) == 1
    assert psi_integral(0, (1, 1, 0, 0, 0)) == 2
    assert psi_integral(0, (0, 2, 0, 0)) == 0
    with pytest.raises(ValueError):
        psi_integral(0, (0, 0))
    with pytest.raises(ValueError):
        psi_integral(0, (-1, 0, 0))


def test_psi_integral_genus_one():
    assert psi_integral(1, (1,)) == mpq(1, 24)
    assert psi_integral(1, (0,)) == 0
    assert psi_integral(1, (0, 2)) == mpq(1, 24)
    assert psi_integral(1, (1, 1)) == mpq(1, 24)
    assert psi_integral(1, (1, 1, 1)) == mpq(1, 12)
    assert psi_integral(1, (0, 1, 2)) == mpq(1, 12)
    assert psi_integral(1, (0, 0, 3)) == mpq(1, 24)
    with pytest.raises(ValueError):
        psi_integral(2, (0, 0, 0))


def test_three_point_values():
    N = 6
    data = build_cohft_input(N)
    for a in range(5):
        val = rt_omega_integral(
            0, 3, [frame_basis_vector(a, N)] * 3, (0, 0, 0), data
        )
        assert (val - data.delta_inv[a]).is_zero()


def test_tqft_and_pure_tail():
    N = 6
    data = build_cohft_input(N)
    assert tqft_omega(data, 1, [frame_phi0(N)])[0] == mpq(5)
    tq = tqft_only_input(N)
    val = rt_omega_integral(1, 1, [frame_phi0(N)], (1,), tq)
    assert val[0] == mpq(5, 24)
    assert all(c.is_zero() for c in val.coeffs[1:])


def test_loop_graph_is_half_the_diagonal_entry():
    N = 6
    data = build_cohft_input(N)
    for b in range(5):
        parts = graph_contributions(
            1, 1, [frame_basis_vector(b, N)], (0,), data
        )
        names = [G.name for G, _ in parts]
        assert names == ["vertex", "loop"]
        loop = dict((G.name, v) for G, v in parts)["loop"]
        assert loop == data.r1[b][b].scale(mpq(1, 2))


def test_insertion_count_checked():
    data = build_cohft_input(4)
    with pytest.raises(ValueError):
        rt_omega_integral(1, 1, [frame_phi0(4)], (0, 0), data)


def test_appendix_suite():
    rep = verify_appendix(8)
    assert rep.passed, rep.first_failure
    assert rep.checks == 26
