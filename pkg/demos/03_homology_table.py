"""First homology of the handlebody group with twisted coefficients.

H is the first homology of the surface, L the kernel of the map to the
handlebody's homology and H/L the quotient.

    python demos/03_homology_table.py [max_genus]
"""
import sys
import time

from hbmcg import abelianization, build_presentation, derive_module, h1_homology, homology_representation

top = int(sys.argv[1]) if len(sys.argv) > 1 else 4

print(f"{'g':>2}  {'H_1(trivial)':16s} {'H_1(H)':14s} {'H_1(L)':14s} {'H_1(H/L)':14s} time")
for g in range(2, top + 1):
    t0 = time.perf_counter()
    P = build_presentation(g)
    rho = homology_representation(g)
    cells = [abelianization(P)]
    cells += [h1_homology(P, derive_module(rho, m)).group for m in ("H", "L", "HmodL")]
    print(f"{g:>2}  {str(cells[0]):16s} " + " ".join(f"{str(c):14s}" for c in cells[1:])
          + f" {time.perf_counter() - t0:.1f}s")

# at genus 2 the L column has a class beyond the commonly quoted Z/2; it is
# spanned by a1 -> y2, a2 -> y1, d12 -> y1 + y2 in the H/L dual picture
