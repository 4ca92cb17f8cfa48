"""Acceptance suite: one test per criterion, each recording a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``; the lines are repeated in
an "acceptance criteria" section at the end of the pytest output.
"""
import math
import random
import time

import numpy as np
import pytest

from hbmcg.action import derive_module, homology_representation, verify_presentation
from hbmcg.homology import (
    abelianization, bar_oracle_h1, bar_oracle_h1_cohomology, h0_coinvariants, h1_cohomology,
    h1_homology,
)
from hbmcg.linalg import (
    AbelianGroup, Ring, ZZ, cokernel_structure, det_bareiss, exact_matmul, hnf, int_matrix, snf,
)
from hbmcg.wajnryb import build_presentation

import smallgroups
from acceptance_log import record


def torsion(*t):
    return AbelianGroup.from_diagonal(list(t))


def two_torsion_part(k, n):
    """{w in A : k w = 0} for A = Z (n None) or Z/n."""
    return AbelianGroup() if n is None else torsion(math.gcd(k, n))


def test_criterion_1_presentation_consistency():
    failures, times = [], {}
    for g in (2, 3, 4):
        t0 = time.perf_counter()
        P = build_presentation(g)
        rho = homology_representation(g)
        for module in ("H", "L", "HmodL"):
            rep = verify_presentation(P, derive_module(rho, module), spec=module)
            failures += [f"g={g} {module} {label}" for label in rep.failures]
        times[g] = time.perf_counter() - t0
    ok = not failures and times[2] + times[3] < 10 and times[4] < 300
    record(1, ok, f"relations + closed forms on H, L, H/L for g=2..4; "
                  f"{len(failures)} failures; g<=3 {times[2] + times[3]:.1f}s, g=4 {times[4]:.1f}s")
    assert ok, failures[:10]


def test_criterion_2_first_homology_with_coefficients_in_H():
    expected = {2: torsion(2, 2), 3: torsion(2, 4), 4: torsion(6), 5: torsion(8)}
    got, t5 = {}, 0.0
    for g in expected:
        t0 = time.perf_counter()
        got[g] = h1_homology(build_presentation(g), homology_representation(g)).group
        if g == 5:
            t5 = time.perf_counter() - t0
    ok = got == expected and t5 < 1800
    record(2, ok, "H_1(H_g; H): " + ", ".join(f"g={g} {got[g]}" for g in got) + f" (g=5 {t5:.1f}s)")
    assert ok


@pytest.mark.xfail(strict=True, reason="genus-2 L value: the computation finds an extra Z/2 "
                                        "(see README, 'Known disagreement')")
def test_criterion_3_L_and_H_mod_L():
    expected = {
        ("L", 2): torsion(2), ("L", 3): torsion(2, 2), ("L", 4): torsion(3),
        ("HmodL", 2): torsion(2, 2), ("HmodL", 3): torsion(2, 2), ("HmodL", 4): torsion(2),
    }
    got = {}
    for module, g in expected:
        rho = derive_module(homology_representation(g), module)
        got[(module, g)] = h1_homology(build_presentation(g), rho).group
    bad = [f"{m} g={g}: got {got[(m, g)]}, expected {expected[(m, g)]}"
           for (m, g) in expected if got[(m, g)] != expected[(m, g)]]
    record(3, not bad, "H_1 with L and H/L coefficients, g=2..4" + ("; " + "; ".join(bad) if bad else ""))
    assert not bad


def test_criterion_4_abelianization():
    expected = {2: AbelianGroup(1, (2, 2)), 3: torsion(2), 4: torsion(2)}
    got = {g: abelianization(build_presentation(g)) for g in expected}
    ok = got == expected
    record(4, ok, "abelianization: " + ", ".join(f"g={g} {got[g]}" for g in got))
    assert ok


def test_criterion_5_cohomology_displays():
    bad = []
    for g in (2, 3):
        P, rho = build_presentation(g), homology_representation(g)
        for n in (None, 2, 3, 4, 8):
            ring = Ring(n) if n else ZZ
            if g == 2:
                exp = two_torsion_part(2, n).direct_sum(two_torsion_part(2, n))
            else:
                exp = two_torsion_part(4, n).direct_sum(two_torsion_part(2, n))
            got = h1_cohomology(P, rho, ring).group
            if got != exp:
                bad.append(f"g={g} A={ring}: {got} vs {exp}")
    record(5, not bad, "H^1(H_g; H_A), g=2,3, A in Z, Z/2, Z/3, Z/4, Z/8" + ("; " + "; ".join(bad) if bad else ""))
    assert not bad


def test_criterion_6_coinvariants():
    bad = []
    for g in (2, 3, 4):
        rho = homology_representation(g)
        for module in ("H", "L"):
            grp = h0_coinvariants(derive_module(rho, module)).group
            if not grp.is_trivial:
                bad.append(f"g={g} {module}: {grp}")
        if g <= 3:
            for module in ("LxLdual", "LxH"):
                grp = h0_coinvariants(derive_module(rho, module)).group
                if grp != AbelianGroup(1):
                    bad.append(f"g={g} {module}: {grp}")
    record(6, not bad, "coinvariants of H, L (g=2..4), L(x)L*, L(x)H (g=2,3)" + ("; " + "; ".join(bad) if bad else ""))
    assert not bad


def test_criterion_7_universal_coefficients():
    # H^1(G; Hom(M, Z/n)) = Hom(H_1(G; M), Z/n) + Ext(H_0(G; M), Z/n), and H_0 vanishes for
    # these modules; Hom(M, Z/n) is the dual module read mod n (H is self-dual, L* = H/L), so the
    # cohomology side uses dual(M).  Pairing M with itself is recorded for information only.
    bad, same, count = [], [], 0
    for g in (2, 3, 4):
        P, rho = build_presentation(g), homology_representation(g)
        for module in ("H", "L", "HmodL"):
            M = derive_module(rho, module)
            assert h0_coinvariants(M).group.is_trivial
            hom = h1_homology(P, M).group
            dual = derive_module(rho, f"dual({module})")
            for n in (2, 3, 4, 8):
                count += 1
                want = hom.hom_to_cyclic(n)
                got = h1_cohomology(P, dual, Ring(n)).group
                if got != want:
                    bad.append(f"g={g} {module} n={n}: {got} vs {want}")
                if h1_cohomology(P, M, Ring(n)).group != want:
                    same.append(f"g={g} {module} n={n}")
    record(7, not bad, f"UCT cross-check with Hom(M, Z/n) coefficients, {count} cases"
                       + ("; " + "; ".join(bad) if bad else "")
                       + f" (same-module pairing differs in {len(same)}: {', '.join(same) or 'none'})")
    assert not bad


def test_criterion_8_bar_oracle():
    t0 = time.perf_counter()
    bad, count = [], 0
    for label, G, action, P, rho in smallgroups.cases():
        for ring in ("Z", "Z/2", "Z/3"):
            count += 1
            if h1_homology(P, rho, ring).group != bar_oracle_h1(G, action, ring):
                bad.append(f"{label} {ring} homology")
            if h1_cohomology(P, rho, ring).group != bar_oracle_h1_cohomology(G, action, ring):
                bad.append(f"{label} {ring} cohomology")
    dt = time.perf_counter() - t0
    ok = not bad and dt < 1.0
    record(8, ok, f"presentation vs bar complex on C2, C3, S3: {count} module/ring cases, {dt:.2f}s"
                  + ("; " + ", ".join(bad) if bad else ""))
    assert ok


def _random_unimodular(n, rng):
    U = np.eye(n, dtype=np.int64)
    for _ in range(3 * n):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            U[i] *= -1
            continue
        U[i] += rng.randint(-2, 2) * U[j]
    return U


def test_criterion_9_exact_linalg_properties():
    rng = random.Random(2024)
    failures = 0
    for _ in range(1000):
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        A = int_matrix([[rng.randint(-20, 20) for _ in range(n)] for _ in range(m)])
        H, U = hnf(A)
        D, P, Q = snf(A)
        ok = (exact_matmul(U, A) == H).all() and abs(det_bareiss(U.tolist())) == 1
        ok &= (exact_matmul(exact_matmul(P, A), Q) == D).all()
        ok &= abs(det_bareiss(P.tolist())) == 1 and abs(det_bareiss(Q.tolist())) == 1
        diag = [int(D[i, i]) for i in range(min(m, n))]
        ok &= all(d >= 0 for d in diag)
        ok &= int(np.count_nonzero(D)) == sum(1 for d in diag if d)
        nz = [d for d in diag if d]
        ok &= all(b % a == 0 for a, b in zip(nz, nz[1:])) and diag == nz + [0] * (len(diag) - len(nz))
        X, Y = _random_unimodular(m, rng), _random_unimodular(n, rng)
        ok &= cokernel_structure(exact_matmul(exact_matmul(X, A), Y)) == cokernel_structure(A)
        failures += not ok
    record(9, failures == 0, f"1000 random matrices (entries in [-20,20], dims <= 6): {failures} failures")
    assert failures == 0


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
