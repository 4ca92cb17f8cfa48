"""Twisted first homology of handlebody mapping class groups.

Modules:

* ``linalg``    exact integer linear algebra (HNF, SNF, kernels, subquotients)
* ``freegroup`` freely reduced words
* ``wajnryb``   the finite presentation of the handlebody group
* ``action``    integral action on H_1 of the boundary surface and derived modules
* ``homology``  H_0, H_1 and H^1 with twisted coefficients, plus a bar-complex oracle
* ``cli``       command-line front end
"""
from .action import (
    ModuleSpec, Representation, derive_module, homology_representation, verify_presentation,
)
from .freegroup import Word, parse_word
from .homology import (
    HomologyResult, abelianization, bar_oracle_h1, h0_coinvariants, h0_invariants,
    h1_cohomology, h1_homology,
)
from .linalg import AbelianGroup, Ring, ZZ, hnf, snf
from .wajnryb import GenusError, Presentation, build_presentation

__version__ = "0.1.0"

__all__ = [
    "AbelianGroup", "GenusError", "HomologyResult", "ModuleSpec", "Presentation",
    "Representation", "Ring", "Word", "ZZ", "abelianization", "bar_oracle_h1",
    "build_presentation", "derive_module", "h0_coinvariants", "h0_invariants",
    "h1_cohomology", "h1_homology", "hnf", "homology_representation", "parse_word",
    "snf", "verify_presentation",
]
