"""Sanity check of the presentation machinery on groups small enough for the
bar resolution: the dihedral group S3 = <a, b | a^2, b^2, (ab)^3>.

    python demos/05_oracle_small_groups.py
"""
import numpy as np

from hbmcg import Representation, bar_oracle_h1, h1_cohomology, h1_homology
from hbmcg.homology import permutation_group
from hbmcg.freegroup import Word, parse_word
from hbmcg.wajnryb import Presentation, RelationInstance

gens = [(1, 0, 2), (0, 2, 1)]
G, elems, gen_idx = permutation_group(gens)
P = Presentation(("a", "b"), tuple(RelationInstance(r, parse_word(r), Word())
                                   for r in ("a^2", "b^2", "a b a b a b")))


def standard(p):
    # permutation action on the lattice spanned by e0 - e2, e1 - e2
    M = np.zeros((3, 3), dtype=np.int64)
    for k in range(3):
        M[p[k], k] = 1
    return (M @ np.array([[1, 0], [0, 1], [-1, -1]]))[:2].astype(np.int64)


action = [standard(p) for p in elems]
rho = Representation({x: action[gen_idx[k]] for k, x in enumerate(P.generators)})
print(f"|S3| = {len(elems)}")
for ring in ("Z", "Z/2", "Z/3"):
    a = h1_homology(P, rho, ring).group
    b = bar_oracle_h1(G, action, ring)
    print(f"H_1(S3; standard) over {ring:4s}: presentation {str(a):6s} bar complex {b}")
print("H^1 over Z/3:", h1_cohomology(P, rho, "Z/3").group)
