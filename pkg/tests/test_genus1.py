"""Genus-one layer: recorded coefficients for both theories, support and
vanishing, the one-point constants, and the comparison shift."""
import json
import pathlib

import pytest
from gmpy2 import mpq

from mirrorforge.genus1 import (
    f1_closed_fjrw,
    f1_closed_twisted,
    f1_from_formula,
    one_point_constants,
    verify_comparison,
    verify_genus1,
)
from mirrorforge.rmat import sample_constants

ORACLES = json.loads(
    (pathlib.Path(__file__).parent / "oracles" / "recorded.json").read_text()
)


def q(name):
    return mpq(ORACLES[name])


def test_recorded_twisted_coefficients():
    s = f1_closed_twisted(10)
    assert s[5] == q("f1_twisted_t5")
    assert s[10] == q("f1_twisted_t10")


def test_recorded_fjrw_coefficients():
    s = f1_closed_fjrw(10)
    assert s[5] == q("f1_fjrw_t5")
    assert s[10] == q("f1_fjrw_t10")


def test_formula_matches_recorded_value():
    assert f1_from_formula(6)[5] == q("f1_twisted_t5")


def test_formula_support():
    s = f1_from_formula(12)
    assert s[0] == mpq(0)
    assert all(s[k] == 0 for k in range(13) if k % 5)


def test_constant_freedom_cancels():
    assert f1_from_formula(8, sample_constants()) == f1_from_formula(8)
    assert f1_from_formula(8, sample_constants(3)) == f1_from_formula(8)


def test_one_point_constants():
    assert one_point_constants("w") == mpq(-25, 3)
    assert one_point_constants("lambda") == mpq(5, 24)
    with pytest.raises(ValueError):
        one_point_constants("mu")


def test_comparison_shift():
    rep = verify_comparison(12)
    assert rep.passed, rep.first_failure
    # the shift moves one closed form onto the other at t^5 already
    shift = one_point_constants("w") - one_point_constants("lambda")
    lhs = q("f1_fjrw_t5")
    rhs = q("f1_twisted_t5") + shift * q("i0_t5")
    assert lhs == rhs


def test_verify_genus1_bundle():
    out = verify_genus1(10)
    assert out.report.passed, out.report.first_failure
    assert out.order == 10
    assert out.F1_formula[5] == q("f1_twisted_t5")
    blob = out.to_json()
    assert set(blob) == {
        "order",
        "formula",
        "closed_twisted",
        "closed_fjrw",
        "report",
    }
    assert blob["report"]["status"] == "PASS"
