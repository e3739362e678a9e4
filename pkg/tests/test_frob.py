"""Frobenius layer: pairing values, product structure, frame constants,
dC differentials."""
from gmpy2 import mpq

import pytest

from mirrorforge.exactnum import Cyc, LambdaLaurent
from mirrorforge.frob import (
    build_frame,
    build_pairing,
    build_product,
    dC,
    lam,
    verify_frobenius,
    xi,
)
from mirrorforge.pseries import RING_CYC, TruncatedSeries


def test_pairing_matrix_entries():
    eta = build_pairing()
    assert eta[1, 2] == LambdaLaurent.from_rat(5)
    assert eta[3, 0] == LambdaLaurent.from_rat(5)
    assert eta[4, 4] == lam(10) * 5
    assert eta[0, 0].is_zero()
    assert eta[2, 4].is_zero()


def test_product_structure_series():
    prod = build_product(8)
    assert prod.f[0] == mpq(1)
    assert prod.g[0] == mpq(1)
    # phi_4 * phi_4 = lambda^5 phi_3, exactly
    s44 = prod.basis_product_scalar(4, 4)
    assert s44[0] == lam(10)
    assert all(c.is_zero() for c in s44.coeffs[1:])
    # phi_1 * phi_4 lands on phi_0 with weight lambda^5 g
    s14 = prod.basis_product_scalar(1, 4)
    assert s14[0] == lam(10)
    assert prod.mats[1][0][4] == s14
    assert prod.mats[1][2][4].is_zero()


def test_frame_constants():
    frame = build_frame(8)
    assert frame.u[0] == mpq(0)
    assert frame.u[6] == mpq(1, 93750)
    for a in range(5):
        assert frame.delta[a][0] == lam(6) * xi(3 * a)
    assert frame.c_of(-1)[0] == lam(5)
    assert frame.c_of(4)[0] == lam(-5)
    with pytest.raises(IndexError):
        frame.c_of(5)


def test_idempotent_leading_coordinates():
    frame = build_frame(6)
    for a in range(5):
        # phi_0-coordinate of every idempotent starts at 1/5
        assert frame.idempotents[a][0][0] == LambdaLaurent.from_rat(mpq(1, 5))


def test_dC_symmetries():
    zero = TruncatedSeries.zero(RING_CYC, 6)
    assert dC(0, 6) == zero
    assert dC(2, 6) + dC(-2, 6) == zero
    assert dC(1, 6) == dC(6, 6)
    assert not dC(1, 6).is_zero()


def test_dC_coefficients_live_in_the_cyclotomic_field():
    d = dC(1, 6)
    assert d.ring is RING_CYC
    assert isinstance(d[4], Cyc)


def test_frame_json_shape():
    blob = build_frame(4).to_json()
    assert set(blob) >= {"order", "u", "delta", "c", "psi", "idempotents"}
    assert len(blob["delta"]) == 5
    assert set(blob["c"]) == {str(j) for j in range(-1, 5)}


def test_verify_frobenius_passes():
    rep = verify_frobenius(10)
    assert rep.passed, rep.first_failure
