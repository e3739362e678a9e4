"""Frobenius structure on the small phase space: pairing, quantum product,
idempotent frame, canonical coordinate, Delta-factors, the c-constants, the
transition matrix Psi, and the differentials dC^gamma.

Everything is kept in the internal curve parameter t.  The equivariant
weight enters only through explicit Laurent monomials (lambda^5 in the
product, (xi^alpha lambda)^3 in Delta, half-integer steps in the c's), so
coefficients live in the monomial-friendly Laurent ring while the honest
series content stays rational.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from gmpy2 import mpq

from .exactnum import Cyc, LambdaLaurent, zeta_half_power
from .ifun import FJRW, ipq_table, l_series, mirror_map
from .pseries import RING_CYC, RING_LAURENT, RING_Q, TruncatedSeries
from .report import Report

DIM = 5


def lam(half: int) -> LambdaLaurent:
    """lambda^(half/2) as a Laurent scalar."""
    return LambdaLaurent.lambda_power(half)


def xi(n: int) -> Cyc:
    return Cyc.zeta_power(n)


def xi_half(n: int) -> Cyc:
    return zeta_half_power(n)


def lift_laurent(s: TruncatedSeries) -> TruncatedSeries:
    """Embed a rational series into the Laurent coefficient ring."""
    return s.map_coeffs(LambdaLaurent.from_rat, RING_LAURENT)


def lift_cyc(s: TruncatedSeries) -> TruncatedSeries:
    return s.map_coeffs(Cyc.from_rat, RING_CYC)


# -- pairing -------------------------------------------------------------


@dataclass(frozen=True)
class PairingMatrix:
    """Constant 5x5 pairing in the phi-basis."""

    eta: tuple

    def __getitem__(self, ij):
        i, j = ij
        return self.eta[i][j]

    def pair(self, v, w) -> TruncatedSeries:
        """Pairing of two phi-coordinate vectors of Laurent series."""
        n = min(s.order for s in (*v, *w))
        acc = TruncatedSeries.zero(RING_LAURENT, n)
        for i in range(DIM):
            if v[i].is_zero():
                continue
            for j in range(DIM):
                e = self.eta[i][j]
                if e.is_zero() or w[j].is_zero():
                    continue
                acc = acc + (v[i] * w[j]).scale(e)
        return acc

    def to_json(self):
        return [[e.to_json() for e in row] for row in self.eta]


def build_pairing() -> PairingMatrix:
    """Antidiagonal 5s on slots summing to 3, and 5*lambda^5 at (4,4)."""
    zero = LambdaLaurent.from_rat(0)
    rows = []
    for i in range(DIM):
        row = []
        for j in range(DIM):
            if i + j == 3:
                row.append(LambdaLaurent.from_rat(5))
            elif i == j == 4:
                row.append(lam(10) * 5)
            else:
                row.append(zero)
        rows.append(tuple(row))
    return PairingMatrix(tuple(rows))


# -- quantum product -----------------------------------------------------


@dataclass(frozen=True)
class QuantumProductTable:
    """Multiplication by each basis vector, plus the two structure series.

    mats[a][i][j] is the phi_i-coordinate of phi_a * phi_j; every product
    of basis vectors is a single scalar times phi_{a+j mod 5}.
    """

    order: int
    f: TruncatedSeries
    g: TruncatedSeries
    mats: tuple

    def basis_product_scalar(self, a: int, b: int) -> TruncatedSeries:
        return self.mats[a][(a + b) % DIM][b]

    def apply(self, a: int, w) -> tuple:
        """phi_a * (vector of Laurent series coordinates)."""
        n = min(s.order for s in w)
        out = []
        for i in range(DIM):
            acc = TruncatedSeries.zero(RING_LAURENT, n)
            for j in range(DIM):
                m = self.mats[a][i][j]
                if not (m.is_zero() or w[j].is_zero()):
                    acc = acc + m * w[j]
            out.append(acc)
        return tuple(out)

    def multiply(self, v, w) -> tuple:
        """Bilinear extension of the basis products."""
        n = min(s.order for s in (*v, *w))
        out = [TruncatedSeries.zero(RING_LAURENT, n) for _ in range(DIM)]
        for a in range(DIM):
            if v[a].is_zero():
                continue
            piece = self.apply(a, w)
            for i in range(DIM):
                if not piece[i].is_zero():
                    out[i] = out[i] + v[a] * piece[i]
        return tuple(out)

    def to_json(self):
        return {
            "order": self.order,
            "f": self.f.to_json(),
            "g": self.g.to_json(),
            "mats": [
                [[s.to_json() for s in row] for row in mat] for mat in self.mats
            ],
        }


@lru_cache(maxsize=None)
def build_product(N: int) -> QuantumProductTable:
    """Structure constants of the product in the phi-basis at order N."""
    tab = ipq_table(4, 4, N + 4, FJRW)
    i11 = tab.diagonal(1)
    f = (tab.diagonal(2) / i11).truncate(N)
    g = (tab.diagonal(4) / i11).truncate(N)
    lf, lg = lift_laurent(f), lift_laurent(g)
    one = TruncatedSeries.one(RING_LAURENT, N)
    l5 = lam(10)

    m = [[None] * DIM for _ in range(DIM)]
    for j in range(DIM):
        m[0][j] = one
    m[1][1] = lf
    m[1][2] = one
    m[1][3] = lg
    m[1][4] = lg.scale(l5)
    m[2][2] = lg / lf
    m[2][3] = (lg * lg / lf).scale(l5)
    m[2][4] = (lg / lf).scale(l5)
    m[3][3] = m[2][3]
    m[3][4] = lg.scale(l5)
    m[4][4] = one.scale(l5)
    for a in range(DIM):
        for b in range(a):
            m[a][b] = m[b][a]

    zero = TruncatedSeries.zero(RING_LAURENT, N)
    mats = tuple(
        tuple(
            tuple(m[a][j] if (a + j) % DIM == i else zero for j in range(DIM))
            for i in range(DIM)
        )
        for a in range(DIM)
    )
    return QuantumProductTable(order=N, f=f, g=g, mats=mats)


# -- canonical frame -----------------------------------------------------


@dataclass(frozen=True, eq=False)
class CanonicalFrame:
    """Idempotents, canonical coordinate, Delta-factors, c-constants, Psi.

    c holds c_{-1}..c_4 (index j at position j+1) as Laurent-coefficient
    series; c_rat holds the rational series parts of c_0..c_4 for the
    log-derivatives downstream.
    """

    order: int
    idempotents: tuple
    u: TruncatedSeries
    delta: tuple
    c: tuple
    c_rat: tuple
    psi: tuple
    psi_inv: tuple

    def c_of(self, j: int) -> TruncatedSeries:
        if not -1 <= j <= 4:
            raise IndexError("c-index out of range")
        return self.c[j + 1]

    def to_json(self):
        return {
            "order": self.order,
            "u": self.u.to_json(),
            "delta": [d.to_json() for d in self.delta],
            "c": {str(j): self.c_of(j).to_json() for j in range(-1, 5)},
            "psi": [[s.to_json() for s in row] for row in self.psi],
            "idempotents": [
                [s.to_json() for s in e] for e in self.idempotents
            ],
        }


@lru_cache(maxsize=None)
def build_frame(N: int) -> CanonicalFrame:
    tab = ipq_table(4, 4, N + 4, FJRW)
    i00 = tab.diagonal(0).truncate(N)
    i11 = tab.diagonal(1).truncate(N)
    L = l_series(N)
    prod = build_product(N)
    fr = prod.f.nth_root(5)
    gr = prod.g.nth_root(5)

    # tilde-phi_i = norm[i] * phi_i, written monomial-in-lambda times a
    # monic rational series
    norms = (
        (0, TruncatedSeries.one(RING_Q, N)),
        (-2, gr**-2 * fr**-1),
        (-4, gr**-4 * fr**3),
        (-6, gr**-6 * fr**2),
        (-8, gr**-3 * fr),
    )
    idempotents = []
    for alpha in range(DIM):
        coords = []
        for i in range(DIM):
            half, s = norms[i]
            w = lam(half) * xi(-i * alpha) / 5
            coords.append(lift_laurent(s).scale(w))
        idempotents.append(tuple(coords))

    u = L.antiderivative().truncate(N)

    d0 = gr**6 / fr**2
    delta = tuple(
        lift_laurent(d0).scale(lam(6) * xi(3 * alpha)) for alpha in range(DIM)
    )

    c_rat = (
        TruncatedSeries.one(RING_Q, N),
        i00 / L,
        i00 * i11 / L**2,
        L**2 / (i00 * i11),
        L / i00,
        TruncatedSeries.one(RING_Q, N),
    )
    halves = (5, 3, 1, -1, -3, -5)
    c = tuple(lift_laurent(s).scale(lam(h)) for h, s in zip(halves, c_rat))

    psi = tuple(
        tuple(
            c[(3 - j) + 1].scale(LambdaLaurent.from_cyc(xi_half(alpha * (2 * j - 3))))
            for j in range(DIM)
        )
        for alpha in range(DIM)
    )
    psi_inv = tuple(
        tuple(
            c[j + 1].scale(
                LambdaLaurent.from_cyc(xi_half(alpha * (3 - 2 * j))) / 5
            )
            for alpha in range(DIM)
        )
        for j in range(DIM)
    )
    return CanonicalFrame(
        order=N,
        idempotents=tuple(idempotents),
        u=u,
        delta=delta,
        c=c,
        c_rat=c_rat[1:],
        psi=psi,
        psi_inv=psi_inv,
    )


def dC(gamma: int, N: int) -> TruncatedSeries:
    """dt-coefficient of the xi-weighted sum of dlog c_j, j = 0..4.

    The lambda-monomials drop out of the log-derivative, so the result is
    a cyclotomic-coefficient series of order N.  Periodic in gamma mod 5
    and odd under gamma -> -gamma.
    """
    frame = build_frame(N + 1)
    acc = TruncatedSeries.zero(RING_CYC, N)
    for j in range(DIM):
        s = frame.c_rat[j]
        if (s - 1).is_zero():
            continue
        dlog = (s.derivative() / s.truncate(N)).truncate(N)
        acc = acc + lift_cyc(dlog).scale(xi_half(gamma * (2 * j - 3)))
    return acc


# -- verification --------------------------------------------------------


def _basis(N: int) -> tuple:
    vecs = []
    for i in range(DIM):
        vecs.append(
            tuple(
                TruncatedSeries.one(RING_LAURENT, N)
                if j == i
                else TruncatedSeries.zero(RING_LAURENT, N)
                for j in range(DIM)
            )
        )
    return tuple(vecs)


def verify_frobenius(N: int = 20) -> Report:
    """Every structural identity of the pairing, product, and frame."""
    rep = Report("frobenius")
    eta = build_pairing()
    prod = build_product(N)
    frame = build_frame(N)
    basis = _basis(N)
    zero = TruncatedSeries.zero(RING_LAURENT, N)

    for i in range(DIM):
        for j in range(DIM):
            rep.check_equal(f"eta sym ({i},{j})", eta[i, j], eta[j, i])
    rep.check_equal("eta(1,2)", eta[1, 2], LambdaLaurent.from_rat(5))
    rep.check_equal("eta(4,4)", eta[4, 4], lam(10) * 5)
    rep.check_equal("eta(0,1)", eta[0, 1], LambdaLaurent.from_rat(0))

    rep.check_equal("f(0)", prod.f[0], mpq(1))
    rep.check_equal("g(0)", prod.g[0], mpq(1))
    tab = ipq_table(4, 4, N + 4, FJRW)
    rep.check_series("g = I00/I11", prod.g, tab.diagonal(0) / tab.diagonal(1), order=N)

    for i in range(DIM):
        for j in range(DIM):
            rep.check_series(
                f"identity column ({i},{j})",
                prod.mats[0][i][j],
                basis[i][j],
                order=N,
            )
            lhs = prod.basis_product_scalar(i, j)
            rhs = prod.basis_product_scalar(j, i)
            rep.check_series(f"commutativity ({i},{j})", lhs, rhs, order=N)

    for i in range(DIM):
        for j in range(DIM):
            ij = prod.multiply(basis[i], basis[j])
            for k in range(DIM):
                left = prod.multiply(ij, basis[k])
                right = prod.multiply(basis[i], prod.multiply(basis[j], basis[k]))
                for comp in range(DIM):
                    rep.check_series(
                        f"assoc ({i},{j},{k})[{comp}]",
                        left[comp],
                        right[comp],
                        order=N,
                    )
                if not rep.passed:
                    return rep

    es = frame.idempotents
    for a in range(DIM):
        for b in range(DIM):
            got = prod.multiply(es[a], es[b])
            want = es[a] if a == b else (zero,) * DIM
            for comp in range(DIM):
                rep.check_series(
                    f"idempotent ({a},{b})[{comp}]", got[comp], want[comp], order=N
                )
    for comp in range(DIM):
        total = es[0][comp]
        for a in range(1, DIM):
            total = total + es[a][comp]
        rep.check_series(f"sum e_alpha [{comp}]", total, basis[0][comp], order=N)

    L = l_series(N)
    i00 = tab.diagonal(0).truncate(N)
    dref = lift_laurent(i00**2 / L**2)
    for a in range(DIM):
        rep.check_series(
            f"delta closed form a={a}",
            frame.delta[a],
            dref.scale(lam(6) * xi(3 * a)),
            order=N,
        )
        rep.check_equal(f"delta at 0 a={a}", frame.delta[a][0], lam(6) * xi(3 * a))
        for b in range(DIM):
            got = eta.pair(es[a], es[b])
            want = (
                TruncatedSeries.one(RING_LAURENT, N) / frame.delta[a]
                if a == b
                else zero
            )
            rep.check_series(f"eta(e_{a},e_{b})", got, want, order=N)

    half_delta = [d.sqrt() for d in frame.delta]
    for a in range(DIM):
        ea_t = tuple(s * half_delta[a] for s in es[a])
        for b in range(DIM):
            eb_t = tuple(s * half_delta[b] for s in es[b])
            got = eta.pair(ea_t, eb_t)
            want = TruncatedSeries.one(RING_LAURENT, N) if a == b else zero
            rep.check_series(f"orthonormal ({a},{b})", got, want, order=N)
        for j in range(DIM):
            rep.check_series(
                f"psi = eta(tilde e,phi) ({a},{j})",
                frame.psi[a][j],
                eta.pair(ea_t, basis[j]),
                order=N,
            )

    for a in range(DIM):
        for b in range(DIM):
            acc = TruncatedSeries.zero(RING_LAURENT, N)
            for j in range(DIM):
                acc = acc + frame.psi[a][j] * frame.psi_inv[j][b]
            want = TruncatedSeries.one(RING_LAURENT, N) if a == b else zero
            rep.check_series(f"psi inverse ({a},{b})", acc, want, order=N)

    for j in range(DIM):
        rep.check_series(
            f"c_j c_(3-j) j={j}",
            frame.c_of(j) * frame.c_of(3 - j),
            TruncatedSeries.one(RING_LAURENT, N),
            order=N,
        )
    rep.check_series(
        "c_-1 c_4",
        frame.c_of(-1) * frame.c_of(4),
        TruncatedSeries.one(RING_LAURENT, N),
        order=N,
    )
    i22 = tab.diagonal(2).truncate(N)
    i33 = tab.diagonal(3).truncate(N)
    i11 = tab.diagonal(1).truncate(N)
    rep.check_series(
        "c_2 long form",
        frame.c_of(2),
        lift_laurent(i00 * i11 * i22 / L**3).scale(lam(-1)),
        order=N,
    )
    rep.check_series(
        "c_3 long form",
        frame.c_of(3),
        lift_laurent(i00 * i11 * i22 * i33 / L**4).scale(lam(-3)),
        order=N,
    )

    rep.check_equal("u(0)", frame.u[0], mpq(0))
    if N >= 6:
        rep.check_equal("u t^6", frame.u[6], mpq(1, 93750))

    tau_prime = mirror_map(N + 1, FJRW).derivative()
    lhs_du = [TruncatedSeries.zero(RING_LAURENT, N) for _ in range(DIM)]
    lam_L = lift_laurent(L)
    for a in range(DIM):
        w = lam(2) * xi(a)
        for comp in range(DIM):
            lhs_du[comp] = lhs_du[comp] + es[a][comp] * lam_L.scale(w)
    for comp in range(DIM):
        want = lift_laurent(tau_prime.truncate(N)) if comp == 1 else zero
        rep.check_series(f"du recovery [{comp}]", lhs_du[comp], want, order=N)
    rep.check_series(
        "du = g^(2/5) f^(1/5) dtau",
        prod.g.nth_root(5) ** 2 * prod.f.nth_root(5) * tau_prime.truncate(N),
        L,
        order=N,
    )

    M = max(N - 1, 1)
    zc = TruncatedSeries.zero(RING_CYC, M)
    rep.check_series("dC^0", dC(0, M), zc, order=M)
    for gm in range(1, DIM):
        rep.check_series(f"dC odd gamma={gm}", dC(gm, M) + dC(-gm, M), zc, order=M)
        rep.check_series(
            f"dC periodic gamma={gm}", dC(gm + 5, M), dC(gm, M), order=M
        )
    return rep
