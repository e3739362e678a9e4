"""The hypergeometric tower: component tables, Birkhoff ladder, mirror map,
and the coefficient identities the rest of the package stands on."""
import json
import pathlib

import pytest
from gmpy2 import mpq

from mirrorforge.exactnum import LAM, LambdaPoly
from mirrorforge.ifun import (
    FJRW,
    TWISTED,
    build_ifunction,
    birkhoff_M,
    ext_pairing,
    i_over_z,
    ipq_table,
    l_series,
    mirror_map,
    phi_coefficient,
    picard_fuchs_check,
    s_operator,
    slot_coefficient,
    verify_club_spade,
    verify_ipp,
    verify_s_unitarity,
    verify_zz_identity,
    yukawa,
)

ORACLES = json.loads(
    (pathlib.Path(__file__).parent / "oracles" / "recorded.json").read_text()
)


def q(name):
    return mpq(ORACLES[name])


def test_component_leading_normalization():
    tab = build_ifunction(kmax=6, N=8, flag=FJRW)
    for k in range(5):
        assert tab.component(k)[k] == mpq(1, [1, 1, 2, 6, 24][k])


def test_frozen_low_order_values():
    tab = build_ifunction(kmax=4, N=8, flag=FJRW)
    assert tab.component(0)[5] == q("i0_t5")
    assert tab.component(1)[6] == q("i1_t6")


def test_components_graded_by_lambda_level():
    tab = build_ifunction(kmax=10, N=14, flag=TWISTED)
    for k in range(11):
        level = k // 5
        for c in tab.component(k).coeffs:
            assert all(x == 0 for i, x in enumerate(c.c) if i != level)


def test_slot_coefficients_pool_to_full_product():
    for a in range(0, 16):
        pooled = sum(
            slot_coefficient(a % 5 + 5 * i, a, TWISTED) for i in range(a // 5 + 1)
        )
        assert pooled == phi_coefficient(a, TWISTED)
        assert phi_coefficient(a, FJRW) == phi_coefficient(a, TWISTED).at_zero()


def test_fjrw_columns_match_twisted_specialization():
    tw = build_ifunction(kmax=4, N=10, flag=TWISTED)
    fj = build_ifunction(kmax=4, N=10, flag=FJRW)
    for k in range(5):
        assert [c.at_zero() for c in tw.component(k).coeffs] == fj.component(k).coeffs


def test_mirror_map_leading_terms():
    tau = mirror_map(6)
    assert tau[0] == 0 and tau[1] == 1
    assert tau[6] == q("tau_t6")
    assert tau.derivative()[5] == q("tau_prime_t5")


def test_mirror_map_flag_independent():
    assert mirror_map(8, FJRW) == mirror_map(8, TWISTED).map_coeffs(
        lambda c: c.at_zero(), mirror_map(8, FJRW).ring
    )


def test_l_series_value_and_defining_equation():
    from mirrorforge.pseries import RING_Q, TruncatedSeries

    L = l_series(10)
    t = TruncatedSeries.variable(RING_Q, 10)
    assert L[0] == 1 and L[5] == q("L_t5")
    assert L**-5 == 1 - t**5 / 3125


def test_ladder_shape_and_monic_diagonal():
    tab = ipq_table(3, 6, 10, FJRW)
    for p in range(4):
        assert tab.diagonal(p)[0] == 1
        for col in range(p, 7):
            assert tab.entry(p, col).valuation() in (col - p, None)
    assert tab.diagonal(1)[5] == q("tau_prime_t5")


def test_i11_equals_tau_derivative():
    tab = ipq_table(1, 1, 9, FJRW)
    assert tab.diagonal(1) == mirror_map(10).derivative()


def test_birkhoff_step_raises_off_units():
    F = i_over_z(4, 6, FJRW)
    step = birkhoff_M(F)
    assert step.stage == 1
    bad = type(F)(stage=2, slots={3: F.slots[3]})
    with pytest.raises(ValueError):
        birkhoff_M(bad)


def test_s_operator_rows():
    row1 = s_operator(1, 8, FJRW, kmax=4)
    assert row1.slots[1][0] == 1
    tab = ipq_table(1, 4, 8, FJRW)
    assert row1.slots[2] == tab.entry(1, 2) / tab.diagonal(1)
    with pytest.raises(ValueError):
        s_operator(6, 8)
    with pytest.raises(ValueError):
        s_operator(5, 8, FJRW)


def test_s_operator_row_five_strips_lambda():
    row5 = s_operator(5, 12)
    assert row5.slots[5][0] == LambdaPoly((1,))
    assert row5.slots[10].valuation() == 5


def test_ext_pairing_values():
    assert ext_pairing(0, 3) == LambdaPoly((5,))
    assert ext_pairing(4, 4) == LAM * 5
    assert ext_pairing(9, 4) == LAM * 5
    assert ext_pairing(1, 1).is_zero()
    assert ext_pairing(4, 4, FJRW) == 0
    assert ext_pairing(2, 1, FJRW) == 5


def test_suite_reports_pass():
    for rep in (
        verify_ipp(10),
        verify_zz_identity(10),
        verify_zz_identity(10, FJRW),
        picard_fuchs_check(12),
        verify_club_spade(3),
        verify_s_unitarity(8),
        verify_s_unitarity(8, FJRW),
    ):
        assert rep.passed, rep.first_failure


def test_yukawa_normalization():
    Y, rep = yukawa(10)
    assert rep.passed, rep.first_failure
    assert Y[0] == LambdaPoly((1,))


def test_report_shape_round_trip():
    rep = verify_ipp(6)
    blob = rep.to_json()
    assert blob["suite"] == "ipp" and blob["status"] == "PASS"
