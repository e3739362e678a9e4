"""
Sector towers and residues
==========================

The two towers of rational-function coefficients, their pole structure,
the recursion coefficients that link them residue by residue, and the
tail reads that close the loop back to the power-series components.
"""
from fractions import Fraction

from mirrorforge.loc import (
    STAR_LAMBDA,
    STAR_W,
    build_sector_ifunctions,
    edge_contribution,
    recursion_coeff,
    residue_check_C2,
    tail_extraction,
)

heart, diamond = build_sector_ifunctions(8, STAR_LAMBDA)

# the first rungs of each tower, exact in z
print("heart  q^1 :", heart.coefficient(1).to_json())
print("diamond Q^0:", diamond.coefficient(0).to_json())

# heart slot 7 has poles marching down 5/m for m = 2, 7
c7 = heart.coefficient(7)
profile, rest = c7.denominator_profile([Fraction(5, m) for m in (2, 7)])
print("\nslot 7 pole multiplicities:", {str(r): m for r, m in profile.items()})

# recursion coefficients, with the twist surfacing at degree 6/5
for five_d in (1, 2, 5, 6):
    d = Fraction(five_d, 5)
    print(f"RC({d}) =", recursion_coeff(d, STAR_LAMBDA).to_json())

# the three stable-unstable edge cases collapse to scalars
print("\nedge case 1 at d=1/5:", edge_contribution(1, Fraction(1, 5)).value.to_json())
print("edge case 3 at d=1  :", edge_contribution(3, 1).value.to_json())

# both residue families close with one global constant each
for star in (STAR_LAMBDA, STAR_W):
    rr = residue_check_C2(2, star)
    print(
        f"\nresidues [{star}]:",
        rr.report.status,
        "heart constant", rr.heart_constant,
        "diamond constant", rr.diamond_constant,
    )

# the tail coefficients reproduce the transported series components
tr = tail_extraction(12)
print("\ntails:", tr.report.status)
print("phi0 reads:", {n: str(v) for n, v in sorted(tr.phi0.items())})
print("first twisted payload at order", tr.first_lambda[0], "=", tr.first_lambda[1])
