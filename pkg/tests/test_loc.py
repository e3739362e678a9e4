"""Sector towers and their rational-function layer: ZRational arithmetic,
recursion coefficients, edge factors, the residue relations, and the
tail-coefficient reads."""
import json
import pathlib
from fractions import Fraction

import pytest
from gmpy2 import mpq

from mirrorforge.exactnum import LAM, LP_ONE, LP_ZERO, LambdaPoly
from mirrorforge.loc import (
    STAR_LAMBDA,
    STAR_W,
    ZRational,
    build_sector_ifunctions,
    edge_contribution,
    recursion_coeff,
    residue_check_C2,
    tail_extraction,
)

ORACLES = json.loads(
    (pathlib.Path(__file__).parent / "oracles" / "recorded.json").read_text()
)


def q(name):
    return mpq(ORACLES[name])


def zr(num, den=(1,)):
    return ZRational(num, den)


# --- ZRational ------------------------------------------------------------


def test_zrational_normalizes_to_monic_reduced_form():
    # 2z/(2z - 2) reduces to z/(z - 1)
    a = zr((0, 2), (-2, 2))
    assert a.den == (mpq(-1), mpq(1))
    assert a.num == (LP_ZERO, LambdaPoly((mpq(1),)))
    # common factor (z - 1) cancels out of (z^2 - z)/(z - 1)
    b = zr((0, -1, 1), (-1, 1))
    assert b == zr((0, 1))
    assert b.den == (mpq(1),)


def test_zrational_arithmetic():
    one_left = zr((1,), (-1, 1))
    one_right = zr((1,), (1, 1))
    s = one_left + one_right
    assert s == zr((0, 2), (-1, 0, 1))
    assert one_left - one_left == ZRational.zero()
    assert (one_left * (1 - LAM)) * 3 == zr((3 - 3 * LAM,), (-1, 1))
    assert 2 - one_right == zr((1, 2), (1, 1))


def test_zrational_division_rules():
    a = zr((0, 0, 1), (-1, 1))
    b = zr((0, 1), (-1, 1))
    assert a / b == zr((0, 1))
    assert a / 2 == zr((0, 0, mpq(1, 2)), (-1, 1))
    with pytest.raises(TypeError):
        a / zr((LAM,))
    with pytest.raises(ZeroDivisionError):
        a / ZRational.zero()
    with pytest.raises(ZeroDivisionError):
        zr((1,), (0,))


def test_zrational_eval_and_residue():
    a = zr((2, 1), (-6, 5, 1))  # (z + 2)/((z + 6)(z - 1))
    assert a.eval(2) == LambdaPoly((mpq(1, 2),))
    assert a.residue(1) == LambdaPoly((mpq(3, 7),))
    assert a.residue(-6) == LambdaPoly((mpq(4, 7),))
    assert a.residue(3) == LP_ZERO
    with pytest.raises(ZeroDivisionError):
        a.eval(1)
    double = zr((1,), (1, -2, 1))
    with pytest.raises(ValueError):
        double.residue(1)


def test_zrational_laurent_coefficients():
    a = zr((1,), (-1, 1))  # 1/(z - 1) = -1 - z - z^2 - ...
    assert all(a.z_coefficient(k) == LambdaPoly((mpq(-1),)) for k in range(4))
    b = zr((1,), (0, -1, 1))  # 1/(z^2 - z) starts at z^-1
    assert b.z_coefficient(-2) == LP_ZERO
    assert b.z_coefficient(-1) == LambdaPoly((mpq(-1),))
    assert b.z_coefficient(0) == LambdaPoly((mpq(-1),))


def test_zrational_denominator_profile():
    a = zr((1,), (-4, 8, -5, 1))  # (z - 1)(z - 2)^2
    mult, rest = a.denominator_profile([1, 2, 7])
    assert mult == {mpq(1): 1, mpq(2): 2}
    assert rest == (mpq(1),)


# --- towers ---------------------------------------------------------------


def test_tower_leading_terms_match_displays():
    heart, diamond = build_sector_ifunctions(2, STAR_LAMBDA)
    assert heart.coefficient(1) == zr((0, 5), (-5, 1))
    assert diamond.coefficient(0) == zr((0, mpq(-1, 5)))
    assert heart.coefficient(2) == zr((mpq(5, 2),), (mpq(-5, 2), 1))


def test_tower_tags():
    heart, diamond = build_sector_ifunctions(7, STAR_W)
    assert [heart.tag(n) for n in (1, 2, 5, 6)] == ["phi0", "phi1", "phi4", "phi0"]
    assert diamond.tag(3) == "diamond"
    with pytest.raises(ValueError):
        heart.tag(0)


def test_tower_validation():
    with pytest.raises(ValueError):
        build_sector_ifunctions(0, STAR_W)
    with pytest.raises(ValueError):
        build_sector_ifunctions(3, "omega")


def test_heart_pole_structure():
    heart, _ = build_sector_ifunctions(8, STAR_LAMBDA)
    mult, rest = heart.coefficient(7).denominator_profile([mpq(5, 2), mpq(5, 7)])
    assert mult == {mpq(5, 2): 1, mpq(5, 7): 1}
    assert rest == (0, 0, 0, 0, 0, mpq(1))  # z^5 from the a=6 shift


# --- recursion coefficients and edge factors ------------------------------


def test_recursion_coeff_frozen_values():
    for fd in range(1, 6):
        d = Fraction(fd, 5)
        want = q(f"recursion_coeff_5d_{fd}")
        assert recursion_coeff(d, STAR_W) == want
        # ladders this short never meet the twist
        assert recursion_coeff(d, STAR_LAMBDA) == want


def test_recursion_coeff_first_twisted_slice():
    val = recursion_coeff(Fraction(6, 5), STAR_LAMBDA).eval(0)
    assert val.c == (q("recursion_coeff_5d_6_lam0"), q("recursion_coeff_5d_6_lam1"))
    dropped = recursion_coeff(Fraction(6, 5), STAR_W)
    assert dropped == q("recursion_coeff_5d_6_lam0")


def test_recursion_coeff_degree_validation():
    for bad in (0, -1, Fraction(3, 7)):
        with pytest.raises(ValueError):
            recursion_coeff(bad, STAR_W)


def test_edge_contribution_frozen_values():
    cases = [
        (1, Fraction(1, 5), "edge_case1_5d_1"),
        (2, Fraction(1, 5), "edge_case2_5d_1"),
        (2, Fraction(2, 5), "edge_case2_5d_2"),
        (3, Fraction(1), "edge_case3_d_1"),
    ]
    for case, d, key in cases:
        e = edge_contribution(case, d, STAR_W)
        assert e.value == q(key)
        assert e.q_power == d


def test_edge_case1_is_25_times_recursion_coeff():
    for fd in range(1, 7):
        d = Fraction(fd, 5)
        for star in (STAR_W, STAR_LAMBDA):
            got = edge_contribution(1, d, star).value
            assert got == recursion_coeff(d, star) * 25


def test_edge_contribution_validation():
    with pytest.raises(ValueError):
        edge_contribution(3, Fraction(2, 5), STAR_W)
    with pytest.raises(ValueError):
        edge_contribution(4, Fraction(1, 5), STAR_W)


# --- residue relations ----------------------------------------------------


def test_residue_relations_hold_with_frozen_constants():
    for star in (STAR_W, STAR_LAMBDA):
        rr = residue_check_C2(1, star)
        assert rr.passed, rr.report.first_failure
        assert rr.heart_constant == q("c2_heart_constant")
        assert rr.diamond_constant == q("c2_diamond_constant")
        assert [s for _, s in rr.per_degree] == ["PASS"] * 5
        assert rr.degrees[0] == Fraction(1, 5)


def test_residue_report_serializes():
    rr = residue_check_C2(Fraction(2, 5), STAR_W)
    blob = rr.to_json()
    assert blob["heart_constant"] == "-625"
    assert blob["per_degree"][1] == {"degree": "2/5", "status": "PASS"}
    assert blob["report"]["status"] == "PASS"


def test_residue_check_needs_a_degree():
    with pytest.raises(ValueError):
        residue_check_C2(Fraction(1, 10), STAR_W)


def test_frozen_leading_residues():
    heart, diamond = build_sector_ifunctions(6, STAR_LAMBDA)
    assert heart.coefficient(1).residue(5) == LambdaPoly((q("c2_heart_res_d15_q1"),))
    assert diamond.coefficient(1).residue(-5) == LambdaPoly(
        (q("c2_diamond_res_d15_Q1"),)
    )
    assert heart.coefficient(6).residue(5) == LambdaPoly(
        (q("c2_heart_res_d15_q6_lam0"), q("c2_heart_res_d15_q6_lam1"))
    )
    assert diamond.coefficient(2).residue(-1) == LambdaPoly(
        (mpq(0), q("c2_diamond_res_d1_Q2_lam1"))
    )


# --- tails ----------------------------------------------------------------


def test_tail_extraction_matches_transported_components():
    tr = tail_extraction(15)
    assert tr.passed, tr.report.first_failure
    assert tr.phi0_unit_power == int(ORACLES["tail_phi0_unit_power"])
    assert tr.phi1_unit_power == int(ORACLES["tail_phi1_unit_power"])
    assert tr.phi0[6] == q("tail_phi0_q6")
    assert tr.phi0[11] == q("tail_phi0_q11")
    assert tr.phi1[2] == q("tail_phi1_q2")
    assert tr.phi1[7] == q("tail_phi1_q7")
    assert tr.first_lambda == (6, q("tail_phi0_q6_lam1"))


def test_tail_extraction_needs_enough_orders():
    with pytest.raises(ValueError):
        tail_extraction(6)
