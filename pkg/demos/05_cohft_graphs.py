"""
Graph sums
==========

Enumerates the stable graphs behind the genus-zero and genus-one
correlators, integrates psi-monomials, and evaluates the dressed field
theory graph by graph.
"""
from gmpy2 import mpq

from mirrorforge.cohft import (
    build_cohft_input,
    enumerate_stable_graphs,
    frame_phi0,
    graph_contributions,
    psi_integral,
    verify_appendix,
)

# the supported shapes and their graphs
for g, n in ((0, 3), (0, 4), (1, 1)):
    names = [(G.name, G.aut) for G in enumerate_stable_graphs(g, n)]
    print(f"(g,n)=({g},{n}):", names)

# psi integrals on the moduli of curves, exact
print("\nint psi over M_{1,1} =", psi_integral(1, (1,)))
print("int psi1^2 over M_{0,5} =", psi_integral(0, (2, 0, 0, 0, 0)))
print("string-reduced (1,1,1) at genus 1 =", psi_integral(1, (1, 1, 1)))

# per-graph contributions to the dressed one-point correlator: the
# single vertex leads with the one-point constant, the loop graph enters
# through the edge tensor
N = 10
data = build_cohft_input(N)
for G, val in graph_contributions(1, 1, [frame_phi0(N)], (1,), data):
    print(f"\ngraph {G.name} (aut {G.aut}):")
    print("  ", val)

rep = verify_appendix(N)
print("\nappendix suite:", rep.status, f"({rep.checks} checks)")
