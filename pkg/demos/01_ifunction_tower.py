"""
The hypergeometric tower
========================

Builds the I-function components in both theories, shows the five-term
coefficient recurrence that generates them, and derives the mirror map
and the L-series everything downstream feeds on.
"""
from gmpy2 import mpq

from mirrorforge.ifun import (
    FJRW,
    TWISTED,
    build_ifunction,
    l_series,
    mirror_map,
    phi_coefficient,
)

# the first few slots of the five-spin tower
tab = build_ifunction(kmax=6, N=20, flag=FJRW)
print("i0 =", tab.component(0))
print("i1 =", tab.component(1))

# the same slots with the twist tracked: coefficients become polynomials
# in the equivariant parameter
tw = build_ifunction(kmax=6, N=20, flag=TWISTED)
print("\ntwisted slot 5 =", tw.component(5))

# each coefficient ladder climbs by a factorial-weighted fifth power
a = 7
lhs = mpq(a + 1, 5) ** 5 * phi_coefficient(a, FJRW)
rhs = phi_coefficient(a + 5, FJRW) * (8 * 9 * 10 * 11 * 12)
print("\nrecurrence at a=7 holds:", lhs == rhs)

# the mirror map is the ratio of the first two components
tau = mirror_map(12, FJRW)
print("\ntau(t) =", tau)
print("tau[6] =", tau[6])

# and the L-series is the fifth root that linearizes the quintic bracket
L = l_series(12)
print("\nL(t)   =", L)
print("L^-5 has two terms:", [(k, c) for k, c in enumerate((L**-5).coeffs) if c != 0])
