"""Crossed homomorphisms, coboundaries and the universal coefficient check.

H^1(G; Hom(M, Z/n)) should equal Hom(H_1(G; M), Z/n) whenever the
coinvariants of M vanish.  The dual of L is H/L, so the check pairs
homology of one module with cohomology of the other.

    python demos/04_cohomology_and_duality.py
"""
from hbmcg import (
    build_presentation, derive_module, h0_coinvariants, h1_cohomology, h1_homology,
    homology_representation,
)

for g in (2, 3):
    P, rho = build_presentation(g), homology_representation(g)
    print(f"genus {g}")
    for ring in ("Z", "Z/2", "Z/3", "Z/4", "Z/8"):
        print(f"  H^1(H_{g}; H) over {ring:4s} = {h1_cohomology(P, rho, ring).group}")

print()
g = 3
P, rho = build_presentation(g), homology_representation(g)
for module in ("H", "L", "HmodL"):
    M = derive_module(rho, module)
    hom = h1_homology(P, M).group
    print(f"{module:6s} coinvariants {h0_coinvariants(M).group}, H_1 = {hom}")
    for n in (2, 4):
        lhs = h1_cohomology(P, derive_module(rho, f"dual({module})"), f"Z/{n}").group
        print(f"    n={n}: H^1(dual) = {str(lhs):12s}  Hom(H_1, Z/{n}) = {hom.hom_to_cyclic(n)}")
