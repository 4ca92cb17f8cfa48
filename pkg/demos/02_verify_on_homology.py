"""Every relation must hold after mapping generators to their action on H_1
of the surface.  This is the main guard against misreading an index range.

    python demos/02_verify_on_homology.py
"""
import time

import numpy as np

from hbmcg import build_presentation, derive_module, homology_representation, verify_presentation

for g in (2, 3, 4):
    P = build_presentation(g)
    rho = homology_representation(g)
    for module in ("H", "L", "HmodL"):
        t0 = time.perf_counter()
        rep = verify_presentation(P, derive_module(rho, module), spec=module)
        print(f"g={g} {module:6s} {rep.summary()}  ({time.perf_counter() - t0:.2f}s)")

# a deliberately broken matrix for t1 should be caught straight away
print()
rho = homology_representation(3)
M = rho.matrix("t1").copy()
M[:, 0] *= -1
rep = verify_presentation(build_presentation(3), rho.with_matrix("t1", M))
print("with t1 perturbed:", rep.summary())
print("first failures:", ", ".join(rep.failures[:6]))

# the matrices are symplectic: M^T J M = J
g = 3
J = np.block([[np.zeros((g, g)), np.eye(g)], [-np.eye(g), np.zeros((g, g))]]).astype(int)
ok = all((rho.matrix(x).T @ J @ rho.matrix(x) == J).all() for x in build_presentation(g).generators)
print("all generators symplectic:", ok)
