"""
Diagonal ladder and the Yukawa coupling
=======================================

Runs the Birkhoff-style normalization that turns the I-function into the
table I_{p,q}, then checks the three diagonal identities and derives the
three-point coupling.
"""
from mirrorforge.exactnum import LAM
from mirrorforge.ifun import (
    TWISTED,
    ipq_table,
    l_series_in,
    verify_ipp,
    verify_zz_identity,
    yukawa,
)

N = 20
tab = ipq_table(5, 10, N + 5, TWISTED)

# the diagonals are units; their product collapses to a fifth power
prod = tab.diagonal(0)
for p in range(1, 5):
    prod = prod * tab.diagonal(p)
L5 = l_series_in(N + 5, TWISTED) ** 5
print("product of diagonals = L^5 through t^20:", all(prod[k] == L5[k] for k in range(N + 1)))

# one step past the window the twist surfaces as a clean factor
i55, i00 = tab.entry(5, 5), tab.diagonal(0)
print("I_{5,5} = Lam * I_{0,0}:", all(i55[k] == LAM * i00[k] for k in range(N + 1)))

# and the ladder is palindromic around its middle
print("I_{1,1} = I_{3,3}:", all(tab.diagonal(1)[k] == tab.diagonal(3)[k] for k in range(N + 1)))

# the full identity suite, plus the squared-log-derivative identity that
# the R-matrix diagonal later consumes
print("\nipp suite:", verify_ipp(N).status)
print("zz  suite:", verify_zz_identity(N).status)

# the coupling Y = I_{2,2}/I_{1,1} and its closed form
Y, rep = yukawa(15)
print("\nYukawa Y =", Y)
print("closed form check:", rep.status)
