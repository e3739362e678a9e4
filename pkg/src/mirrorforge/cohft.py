"""Graph-sum engine for the dressed topological field theory at genus at
most one.

Vertices carry the diagonal field theory (Delta to the power g-1 on equal
idempotent labels), legs carry the first-order tail 1 - R1 psi, vertices may
absorb one extra tail point R1 phi_0 psi^2, and edges carry the constant
part R1 eta^(-1) of the splitting bivector.  Contributions are reduced to
psi-integrals immediately; everything above the first-order truncation is
dimension-dead in the supported range and guarded by assertions.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product as iproduct
from math import factorial

from gmpy2 import mpq

from .frob import DIM, build_frame, lam, lift_laurent, xi
from .genus1 import f1_from_formula
from .ifun import FJRW, ipq_table, l_series
from .pseries import RING_LAURENT, TruncatedSeries
from .report import Report
from .rmat import build_rmatrix, check_constants

SUPPORTED = {(0, 3), (0, 4), (1, 1)}


# -- stable graphs -------------------------------------------------------


@dataclass(frozen=True)
class StableGraph:
    """Vertices with genus labels, edges (loops allowed), leg placement."""

    genus: tuple
    edges: tuple
    legs: tuple
    aut: int
    name: str

    def __post_init__(self):
        for v, gv in enumerate(self.genus):
            if 2 * gv - 2 + self.valence(v) <= 0:
                raise ValueError(f"unstable vertex {v}")

    def valence(self, v: int) -> int:
        n = sum(1 for w in self.legs if w == v)
        for a, b in self.edges:
            n += (a == v) + (b == v)
        return n

    def total_genus(self) -> int:
        betti = len(self.edges) - len(self.genus) + 1
        return sum(self.genus) + betti

    def to_json(self):
        return {
            "name": self.name,
            "genus": list(self.genus),
            "edges": [list(e) for e in self.edges],
            "legs": list(self.legs),
            "aut": self.aut,
        }


def enumerate_stable_graphs(g: int, n: int) -> list:
    """All stable graphs for the supported (g, n) windows."""
    if (g, n) == (0, 3):
        return [StableGraph((0,), (), (0, 0, 0), 1, "vertex")]
    if (g, n) == (0, 4):
        out = [StableGraph((0,), (), (0, 0, 0, 0), 1, "vertex")]
        for legs, tag in (
            ((0, 0, 1, 1), "split(12|34)"),
            ((0, 1, 0, 1), "split(13|24)"),
            ((0, 1, 1, 0), "split(14|23)"),
        ):
            out.append(StableGraph((0, 0), ((0, 1),), legs, 1, tag))
        return out
    if (g, n) == (1, 1):
        return [
            StableGraph((1,), (), (0,), 1, "vertex"),
            StableGraph((0,), ((0, 0),), (0,), 2, "loop"),
        ]
    raise ValueError(f"unsupported stable-graph range (g, n) = ({g}, {n})")


# -- psi integrals -------------------------------------------------------


@lru_cache(maxsize=None)
def _psi_genus1(exps: tuple) -> mpq:
    # callers guarantee sum(exps) == len(exps)
    if exps == (1,):
        return mpq(1, 24)
    if 0 in exps:
        i = exps.index(0)
        rest = exps[:i] + exps[i + 1 :]
        total = mpq(0)
        for j, a in enumerate(rest):
            if a >= 1:
                total += _psi_genus1(
                    tuple(sorted(rest[:j] + (a - 1,) + rest[j + 1 :]))
                )
        return total
    # all exponents equal one
    n = len(exps)
    return (n - 1) * _psi_genus1((1,) * (n - 1))


def psi_integral(g: int, exponents) -> mpq:
    """Moduli integral of a psi-monomial; zero off the dimension."""
    exps = tuple(int(a) for a in exponents)
    if any(a < 0 for a in exps):
        raise ValueError("negative psi-exponent")
    n = len(exps)
    if g == 0:
        if n < 3:
            raise ValueError("genus zero needs at least three points")
        if sum(exps) != n - 3:
            return mpq(0)
        out = mpq(factorial(n - 3))
        for a in exps:
            out /= factorial(a)
        return out
    if g == 1:
        if n < 1:
            raise ValueError("genus one needs a point")
        if sum(exps) != n:
            return mpq(0)
        return _psi_genus1(tuple(sorted(exps)))
    raise ValueError("genus at most one")


# -- dressed field theory ------------------------------------------------


@dataclass(frozen=True, eq=False)
class CohFTInput:
    """Frame data the engine consumes: Delta-factors with their square
    roots, the first-order matrix in the normalized frame, and the tail
    vector R1 phi_0."""

    order: int
    delta: tuple
    delta_inv: tuple
    half_delta: tuple
    half_delta_inv: tuple
    r1: tuple
    t1: tuple

    def r1_apply(self, v: tuple) -> tuple:
        out = []
        for a in range(DIM):
            acc = TruncatedSeries.zero(RING_LAURENT, self.order)
            for b in range(DIM):
                if not (self.r1[a][b].is_zero() or v[b].is_zero()):
                    acc = acc + self.r1[a][b] * self.half_delta_inv[b] * v[b]
            out.append(acc * self.half_delta[a])
        return tuple(out)

    def pair(self, v: tuple, w: tuple) -> TruncatedSeries:
        acc = TruncatedSeries.zero(RING_LAURENT, self.order)
        for a in range(DIM):
            if not (v[a].is_zero() or w[a].is_zero()):
                acc = acc + v[a] * w[a] * self.delta_inv[a]
        return acc


def frame_basis_vector(alpha: int, N: int) -> tuple:
    return tuple(
        TruncatedSeries.one(RING_LAURENT, N)
        if b == alpha
        else TruncatedSeries.zero(RING_LAURENT, N)
        for b in range(DIM)
    )


def frame_phi0(N: int) -> tuple:
    return (TruncatedSeries.one(RING_LAURENT, N),) * DIM


@lru_cache(maxsize=None)
def build_cohft_input(N: int, C: tuple | None = None) -> CohFTInput:
    frame = build_frame(N)
    delta = frame.delta
    one = TruncatedSeries.one(RING_LAURENT, N)
    delta_inv = tuple(one / d for d in delta)
    half = tuple(d.sqrt() for d in delta)
    half_inv = tuple(one / h for h in half)
    r1 = build_rmatrix(N, check_constants(C)).R1
    t1 = []
    for a in range(DIM):
        acc = TruncatedSeries.zero(RING_LAURENT, N)
        for b in range(DIM):
            if not r1[a][b].is_zero():
                acc = acc + r1[a][b] * half_inv[b]
        t1.append(acc * half[a])
    return CohFTInput(
        order=N,
        delta=delta,
        delta_inv=delta_inv,
        half_delta=half,
        half_delta_inv=half_inv,
        r1=r1,
        t1=tuple(t1),
    )


def tqft_only_input(N: int) -> CohFTInput:
    """Same frame data with the first-order matrix switched off."""
    base = build_cohft_input(N)
    zero = TruncatedSeries.zero(RING_LAURENT, N)
    return CohFTInput(
        order=N,
        delta=base.delta,
        delta_inv=base.delta_inv,
        half_delta=base.half_delta,
        half_delta_inv=base.half_delta_inv,
        r1=tuple((zero,) * DIM for _ in range(DIM)),
        t1=(zero,) * DIM,
    )


def tqft_omega(data: CohFTInput, g: int, vectors) -> TruncatedSeries:
    """Diagonal evaluation Delta^(g-1) on coinciding idempotent labels."""
    acc = TruncatedSeries.zero(RING_LAURENT, data.order)
    for a in range(DIM):
        term = TruncatedSeries.one(RING_LAURENT, data.order)
        dead = False
        for v in vectors:
            if v[a].is_zero():
                dead = True
                break
            term = term * v[a]
        if dead:
            continue
        if g == 0:
            term = term * data.delta_inv[a]
        elif g != 1:
            raise ValueError("genus at most one")
        acc = acc + term
    return acc


def _contribution(
    graph: StableGraph, data: CohFTInput, insertions, psi_exponents
) -> TruncatedSeries:
    N = data.order
    nv = len(graph.genus)
    for v, gv in enumerate(graph.genus):
        # two or more tail points always overshoot these dimensions, and
        # edge factors beyond the constant bivector term would need room
        dim = 3 * gv - 3 + graph.valence(v)
        assert dim <= 1, "second tail point could survive here"
    for a, b in graph.edges:
        for v in (a, b):
            assert 3 * graph.genus[v] - 3 + graph.valence(v) == 0, (
                "edge tensor beyond its constant term would be required"
            )

    basis = [frame_basis_vector(al, N) for al in range(DIM)]
    r1_basis = [data.r1_apply(vec) for vec in basis]
    leg_options = []
    for leg, (vec, extra) in enumerate(zip(insertions, psi_exponents)):
        v = graph.legs[leg]
        corrected = tuple(-s for s in data.r1_apply(vec))
        leg_options.append(((v, vec, extra), (v, corrected, extra + 1)))

    total = TruncatedSeries.zero(RING_LAURENT, N)
    edge_ranges = [range(DIM)] * len(graph.edges)
    tail_ranges = [range(2)] * nv
    for leg_pick in iproduct(*leg_options):
        for edge_pick in iproduct(*edge_ranges):
            for tails in iproduct(*tail_ranges):
                items = [[] for _ in range(nv)]
                for v, vec, exp in leg_pick:
                    items[v].append((vec, exp))
                for (a, b), al in zip(graph.edges, edge_pick):
                    items[a].append((r1_basis[al], 0))
                    items[b].append((basis[al], 0))
                for v, m in enumerate(tails):
                    for _ in range(m):
                        items[v].append((data.t1, 2))
                value = None
                for v in range(nv):
                    num = psi_integral(
                        graph.genus[v], [e for _, e in items[v]]
                    )
                    if num == 0:
                        value = None
                        break
                    omega = tqft_omega(
                        data, graph.genus[v], [vec for vec, _ in items[v]]
                    )
                    if omega.is_zero():
                        value = None
                        break
                    omega = omega.scale(num)
                    value = omega if value is None else value * omega
                if value is None:
                    continue
                for al in edge_pick:
                    value = data.delta[al] * value
                total = total + value
    return total.scale(mpq(1, graph.aut))


def graph_contributions(
    g: int, n: int, insertions, psi_exponents, data: CohFTInput
) -> list:
    """Per-graph values of the dressed correlator, in enumeration order."""
    if (g, n) not in SUPPORTED:
        raise ValueError(f"unsupported correlator range (g, n) = ({g}, {n})")
    if len(insertions) != n or len(psi_exponents) != n:
        raise ValueError("need one insertion and one psi-exponent per point")
    return [
        (G, _contribution(G, data, insertions, psi_exponents))
        for G in enumerate_stable_graphs(g, n)
    ]


def rt_omega_integral(
    g: int, n: int, insertions, psi_exponents, data: CohFTInput
) -> TruncatedSeries:
    """Sum over stable graphs of the integrated dressed field theory."""
    acc = TruncatedSeries.zero(RING_LAURENT, data.order)
    for _, val in graph_contributions(g, n, insertions, psi_exponents, data):
        acc = acc + val
    return acc


# -- verification --------------------------------------------------------


def verify_appendix(N: int = 20, C: tuple | None = None) -> Report:
    """Both sides of the four appendix identities, order by order."""
    rep = Report("appendix")
    C = check_constants(C)
    data = build_cohft_input(N, C)
    one = TruncatedSeries.one(RING_LAURENT, N)
    basis = [frame_basis_vector(b, N) for b in range(DIM)]

    rep.check_equal("graph count (0,3)", len(enumerate_stable_graphs(0, 3)), 1)
    rep.check_equal("graph count (0,4)", len(enumerate_stable_graphs(0, 4)), 4)
    rep.check_equal("graph count (1,1)", len(enumerate_stable_graphs(1, 1)), 2)

    rep.check_series(
        "tqft omega_{1,1}(phi_0)",
        tqft_omega(data, 1, [frame_phi0(N)]),
        one.scale(mpq(5)),
        order=N,
    )
    tq = tqft_only_input(N)
    rep.check_series(
        "pure-tail one-point at R=1",
        rt_omega_integral(1, 1, [frame_phi0(N)], (1,), tq),
        one.scale(mpq(5, 24)),
        order=N,
    )
    for a in range(DIM):
        rep.check_series(
            "three-point TQFT a=%d" % a,
            rt_omega_integral(0, 3, [basis[a]] * 3, (0, 0, 0), data),
            data.delta_inv[a],
            order=N,
        )

    # eta-contractions of the first-order matrix, straight from entries:
    # eta(R1 phi_0, e^b) is the b-coordinate of the tail vector and
    # eta(R1 e_b, e^a) sums the coordinates of the corrected basis vector
    t1_pair = [data.t1[b] for b in range(DIM)]
    r1_row_sum = []
    for b in range(DIM):
        r1_eb = data.r1_apply(basis[b])
        acc = TruncatedSeries.zero(RING_LAURENT, N)
        for al in range(DIM):
            acc = acc + r1_eb[al]
        r1_row_sum.append(acc)

    one_point = []
    for b in range(DIM):
        lhs = rt_omega_integral(1, 1, [basis[b]], (0,), data)
        one_point.append(lhs)
        rhs = data.r1[b][b].scale(mpq(1, 2)) + (
            t1_pair[b] - r1_row_sum[b]
        ).scale(mpq(1, 24))
        rep.check_series(f"(A1) beta={b}", lhs, rhs, order=N)

    four_point = {}
    for a in range(DIM):
        for b in range(DIM):
            four_point[a, b] = rt_omega_integral(
                0, 4, [basis[a]] * 3 + [basis[b]], (0, 0, 0, 0), data
            )
    for b in range(DIM):
        acc = TruncatedSeries.zero(RING_LAURENT, N)
        for a in range(DIM):
            acc = acc + data.delta[a] * four_point[a, b]
        rep.check_series(
            f"(A2) beta={b}", acc, t1_pair[b] - r1_row_sum[b], order=N
        )

    tab = ipq_table(1, 1, N + 2, FJRW)
    i11 = tab.diagonal(1).truncate(N + 1)
    du_dtau = [
        lift_laurent(l_series(N + 1) / i11).scale(
            lam(2) * xi(b)
        )
        for b in range(DIM)
    ]
    frame_hi = build_frame(N + 1)
    for a in range(DIM):
        acc = TruncatedSeries.zero(RING_LAURENT, N)
        for b in range(DIM):
            acc = acc + du_dtau[b].truncate(N) * four_point[a, b]
        dinv = TruncatedSeries.one(RING_LAURENT, N + 1) / frame_hi.delta[a]
        rhs = (dinv.derivative() / lift_laurent(i11.truncate(N))).scale(
            mpq(-1, 2)
        )
        rep.check_series(f"(A3) alpha={a}", acc, rhs, order=N)

    acc = TruncatedSeries.zero(RING_LAURENT, N)
    for b in range(DIM):
        acc = acc + du_dtau[b].truncate(N) * one_point[b]
    df1 = f1_from_formula(N + 1, C).derivative() / i11.truncate(N)
    rep.check_series("(MAIN) dF1/dtau", acc, lift_laurent(df1), order=N)
    return rep
