"""Exact verification of genus-one mirror-symmetry series for twisted and
5-spin quintic invariants.

Submodules, bottom to top: exactnum (coefficient arithmetic), pseries
(truncated series), ifun (hypergeometric tower), frob (Frobenius structure),
rmat (first-order R-matrix), genus1 (genus-one potential), cohft (graph-sum
engine), loc (localization shadow), cli (command line).
"""

__version__ = "0.1.0"
