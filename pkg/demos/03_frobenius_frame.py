"""
Semisimple frame
================

Multiplication table of the quantum product, the idempotent basis that
diagonalizes it, the canonical coordinate, and the normalizing constants
carried into the R-matrix.
"""
from gmpy2 import mpq

from mirrorforge.frob import build_frame, build_pairing, build_product, verify_frobenius

N = 12
prod = build_product(N)

# two structure series drive the whole table
print("f =", prod.f)
print("g =", prod.g)

# a sample product: phi_1 * phi_1 lands on phi_2 with coefficient f
scalar = prod.basis_product_scalar(1, 1)
print("\nphi1*phi1 = f * phi2:", all(scalar[k].rational_part() == prod.f[k] for k in range(N + 1)))

# the residue pairing is antidiagonal with a weight on the top class
eta = build_pairing()
print("pairing eta[phi_1, phi_2] =", eta[1, 2])
print("pairing eta[phi_4, phi_4] =", eta[4, 4])

frame = build_frame(N)
# the canonical coordinate starts as t and bends at t^6
print("\nu(t) =", frame.u)

# Delta normalizes the idempotents to an orthonormal frame; its leading
# value is a root-of-unity times the cube of the weight
print("delta_0 at t=0:", frame.delta[0][0])

# every structural identity at once: associativity on all 125 triples,
# idempotency, orthogonality, Psi inversion, frame orthonormality
rep = verify_frobenius(N)
print("\nfrobenius suite:", rep.status, f"({rep.checks} checks)")
