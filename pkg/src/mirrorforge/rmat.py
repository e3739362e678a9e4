"""First-order R-matrix in the normalized canonical frame.

Off-diagonal entries come from flatness of the quantum connection, the
diagonal from the log-potential 5/4 log L - 4 log I0 - log I11, with a
constrained constant freedom C_alpha.  Every entry carries exactly one
inverse power of the weight; differentials are handled as their
dt-coefficients (dividing by du means dividing by the series L).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from gmpy2 import mpq

from .exactnum import Cyc, LambdaLaurent, rationality_project
from .frob import DIM, build_frame, dC, lam, lift_cyc, lift_laurent, xi
from .ifun import FJRW, ipq_table, l_series
from .pseries import RING_CYC, RING_LAURENT, RING_Q, TruncatedSeries
from .report import Report


def default_constants() -> tuple:
    return (LambdaLaurent.from_rat(0),) * DIM


def sample_constants(c=1) -> tuple:
    """The constrained perturbation (c, -c/xi, 0, 0, 0) / lambda."""
    w = LambdaLaurent.lambda_power(-2)
    return (
        w * c,
        w * (Cyc.zeta_power(-1) * (-c)),
        LambdaLaurent.from_rat(0),
        LambdaLaurent.from_rat(0),
        LambdaLaurent.from_rat(0),
    )


def check_constants(C: tuple) -> tuple:
    if C is None:
        return default_constants()
    if len(C) != DIM:
        raise ValueError("need five constants")
    total = LambdaLaurent.from_rat(0)
    for a, ca in enumerate(C):
        total = total + LambdaLaurent.from_cyc(xi(a)) * ca
    if not total.is_zero():
        raise ValueError("constants violate the xi-weighted sum constraint")
    return tuple(C)


@lru_cache(maxsize=None)
def log_potential(N: int) -> TruncatedSeries:
    """5/4 log L - 4 log I0 - log I11 as a rational series."""
    tab = ipq_table(1, 1, N + 1, FJRW)
    L = l_series(N)
    i00 = tab.diagonal(0).truncate(N)
    i11 = tab.diagonal(1).truncate(N)
    return (
        L.log().scale(mpq(5, 4)) - i00.log().scale(4) - i11.log()
    )


def r1_offdiag(alpha: int, beta: int, N: int) -> TruncatedSeries:
    """dC^(alpha-beta) / (5 (xi^a - xi^b) lambda du), as a t-series."""
    if alpha % DIM == beta % DIM:
        raise ValueError("off-diagonal entry needs distinct indices")
    d = dC(alpha - beta, N)
    w = (xi(alpha) - xi(beta)).inverse() * mpq(1, 5)
    s = (d / lift_cyc(l_series(N))).scale(w)
    return s.map_coeffs(LambdaLaurent.from_cyc, RING_LAURENT).scale(lam(-2))


def r1_diag(alpha: int, N: int, C: tuple | None = None) -> TruncatedSeries:
    """Closed-form diagonal entry plus the constant C_alpha."""
    C = check_constants(C)
    dP = log_potential(N + 1).derivative() / l_series(N)
    w = lam(-2) * xi(-alpha) / 5
    out = lift_laurent(dP).scale(w)
    return out + TruncatedSeries.constant(RING_LAURENT, C[alpha % DIM], N)


@dataclass(frozen=True, eq=False)
class RMatrixData:
    """Full 5x5 first-order matrix and the constants used for it."""

    order: int
    R1: tuple
    Cconst: tuple

    def entry(self, a: int, b: int) -> TruncatedSeries:
        return self.R1[a][b]

    def to_json(self):
        return {
            "order": self.order,
            "R1": [[s.to_json() for s in row] for row in self.R1],
            "Cconst": [c.to_json() for c in self.Cconst],
        }


def build_rmatrix(N: int, C: tuple | None = None) -> RMatrixData:
    C = check_constants(C)
    rows = tuple(
        tuple(
            r1_diag(a, N, C) if a == b else r1_offdiag(a, b, N)
            for b in range(DIM)
        )
        for a in range(DIM)
    )
    return RMatrixData(order=N, R1=rows, Cconst=C)


def verify_flatness(N: int = 25) -> Report:
    """Psi d(Psi^-1) against dC, and the off-diagonal solve that uses it."""
    rep = Report("rmatrix-flatness")
    frame = build_frame(N + 1)
    L = lift_laurent(l_series(N))
    for a in range(DIM):
        for b in range(DIM):
            acc = TruncatedSeries.zero(RING_LAURENT, N)
            for j in range(DIM):
                acc = acc + frame.psi[a][j] * frame.psi_inv[j][b].derivative()
            target = dC(a - b, N).map_coeffs(
                LambdaLaurent.from_cyc, RING_LAURENT
            ).scale(LambdaLaurent.from_rat(mpq(1, 5)))
            rep.check_series(f"(i) psi dpsi-inv ({a},{b})", acc, target, order=N)
            if a != b:
                # (du^a - du^b) R1_ab, as a dt-coefficient
                w = LambdaLaurent.from_cyc(xi(a) - xi(b)) * lam(2)
                lhs = r1_offdiag(a, b, N) * L.scale(w)
                rep.check_series(f"(ii) solve ({a},{b})", lhs, target, order=N)
                rep.check_series(
                    f"symmetry ({a},{b})",
                    r1_offdiag(a, b, N),
                    r1_offdiag(b, a, N),
                    order=N,
                )
    trace = TruncatedSeries.zero(RING_LAURENT, N)
    for a in range(DIM):
        w = LambdaLaurent.from_cyc(xi(a)) * lam(2)
        trace = trace + r1_diag(a, N).scale(w)
    dP = log_potential(N + 1).derivative() / l_series(N)
    try:
        flat = trace.map_coeffs(rationality_project, RING_Q)
    except ArithmeticError as err:  # pragma: no cover - failure path
        rep.fail("trace rationality", None, repr(err), "rational series")
        return rep
    rep.check_series("weighted trace is dP/du", flat, dP, order=N)
    return rep


def verify_diag_consistency(N: int = 25) -> Report:
    """The derivative of the diagonal entries, three ways."""
    rep = Report("rmatrix-diag")
    L = l_series(N)
    lL = lift_laurent(L)
    frame = build_frame(N + 1)
    dlog = []
    for j in (2, 3):
        s = frame.c_rat[j]
        dlog.append((s.derivative() / s.truncate(N)) / L)
    square_sum = dlog[0] * dlog[0] + dlog[1] * dlog[1]
    ddP = (log_potential(N + 2).derivative() / l_series(N + 1)).derivative() / l_series(N)

    rep.check_series("main identity", square_sum, ddP, order=N)

    for a in range(DIM):
        closed = r1_diag(a, N + 1).derivative()
        acc = TruncatedSeries.zero(RING_LAURENT, N)
        for b in range(DIM):
            if b == a:
                continue
            w = LambdaLaurent.from_cyc(xi(b) - xi(a)) * lam(2)
            acc = acc + r1_offdiag(a, b, N) * r1_offdiag(b, a, N) * lL.scale(w)
        rep.check_series(f"(a)=(b) alpha={a}", acc, closed, order=N)
        reduced = lift_laurent(square_sum * L).scale(lam(-2) * xi(-a) / 5)
        rep.check_series(f"(a)=(c) alpha={a}", acc, reduced, order=N)
        rep.check_equal(f"vanishing at 0 alpha={a}", acc[0], RING_LAURENT.zero)
    return rep
