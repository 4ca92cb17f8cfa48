"""Command-line front end.

    hbmcg presentation -g 3 [--format json]
    hbmcg verify -g 3 --module L [--corrupt t1]
    hbmcg homology -g 3 --module H --ring Z --theory homology --degree 1
    hbmcg report [--max-genus 4] [--allow-large-genus]

Exit codes: 0 success, 1 verification failure or expectation mismatch,
2 usage error.  ``HBMCG_THREADS`` caps the number of worker processes used
by ``report`` (default 1).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .action import ModuleSpec, derive_module, homology_representation, verify_presentation
from .homology import (
    HomologyResult, abelianization, h0_coinvariants, h0_invariants, h1_cohomology, h1_homology,
)
from .linalg import AbelianGroup, Ring, ZZ
from .wajnryb import GenusError, build_presentation

LARGE_GENUS = 5


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# expected values (known results; anything else is reported unverified)


_SHORT_NAMES = {"tensor(L,dual(L))": "LxLdual", "tensor(L,H)": "LxH", "trivial(1)": "trivial"}


def _grp(torsion=(), free=0) -> AbelianGroup:
    return AbelianGroup.from_diagonal(list(torsion) + [0] * free, ambient_rank=len(torsion) + free)


def _h1_integral(module: str, g: int) -> AbelianGroup | None:
    if module == "H":
        return _grp({2: (2, 2), 3: (2, 4)}.get(g, (2 * g - 2,)))
    if module == "L":
        return _grp({2: (2,), 3: (2, 2)}.get(g, (g - 1,)))
    if module == "HmodL":
        return _grp((2, 2) if g <= 3 else (2,))
    if module == "trivial":
        return _grp((2, 2), free=1) if g == 2 else _grp((2,))
    return None


def expected_value(genus: int, module: str, ring: Ring, theory: str, degree: int) -> AbelianGroup | None:
    canon = str(ModuleSpec.parse(module))
    module = _SHORT_NAMES.get(canon, canon)
    if theory == "abelianization":
        return _h1_integral("trivial", genus) if ring.modulus is None else None
    if theory == "homology" and degree == 1 and ring.modulus is None:
        return _h1_integral(module, genus)
    if theory == "homology" and degree == 0 and ring.modulus is None:
        if module in ("LxLdual", "LxH"):
            return _grp(free=1) if genus in (2, 3) else None
        return {"H": _grp(), "L": _grp()}.get(module)
    if theory == "cohomology" and degree == 1 and module == "H" and genus in (2, 3):
        # H^1(H_g; H_A) = Hom(H_1(H_g; H), A) for the explicitly solved genera
        base = _h1_integral("H", genus)
        if ring.modulus is None:
            return _grp()
        return base.hom_to_cyclic(ring.modulus)
    return None


@dataclass
class ReportRow:
    genus: int
    module: str
    ring: str
    theory: str
    degree: int
    computed: AbelianGroup
    expected: AbelianGroup | None
    status: str

    def to_dict(self) -> dict:
        return {
            "genus": self.genus,
            "module": self.module,
            "ring": self.ring,
            "theory": self.theory,
            "degree": self.degree,
            "computed": self.computed.to_dict(),
            "expected": self.expected.to_dict() if self.expected is not None else "none",
            "status": self.status,
        }


def _row(genus, module, ring, theory, degree, computed) -> ReportRow:
    exp = expected_value(genus, module, ring, theory, degree)
    if exp is None:
        status = "unverified"
    else:
        status = "match" if computed == exp else "mismatch"
    return ReportRow(genus, module, str(ring), theory, degree, computed, exp, status)


def compute(genus: int, module: str, ring, theory: str, degree: int) -> HomologyResult:
    """The (co)homology of the genus-g handlebody group asked for on the
    command line."""
    ring = Ring.parse(ring)
    spec = ModuleSpec.parse(module)
    rho = derive_module(homology_representation(genus), spec)
    if degree == 0:
        res = h0_coinvariants(rho, ring) if theory == "homology" else h0_invariants(rho, ring)
    else:
        P = build_presentation(genus)
        res = h1_homology(P, rho, ring) if theory == "homology" else h1_cohomology(P, rho, ring)
    res.module = module
    res.genus = genus
    return res


def report_rows(genus: int) -> list[ReportRow]:
    P = build_presentation(genus)
    rho_H = homology_representation(genus)
    rows = [_row(genus, "trivial", ZZ, "abelianization", 1, abelianization(P))]
    for m in ("H", "L", "HmodL", "trivial"):
        rows.append(_row(genus, m, ZZ, "homology", 1, h1_homology(P, derive_module(rho_H, m)).group))
    for m in ("H", "L", "LxLdual", "LxH"):
        rows.append(_row(genus, m, ZZ, "homology", 0, h0_coinvariants(derive_module(rho_H, m)).group))
    for r in ("Z", "Z/2", "Z/3", "Z/4", "Z/8"):
        rows.append(_row(genus, "H", Ring.parse(r), "cohomology", 1, h1_cohomology(P, rho_H, r).group))
    return rows


# ---------------------------------------------------------------------------
# commands


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("HBMCG_THREADS", "1")))
    except ValueError:
        return 1


def cmd_presentation(args) -> tuple[int, str]:
    P = build_presentation(args.genus)
    if args.format == "json":
        data = json.loads(P.to_json())
        data["family_counts"] = P.family_counts()
        return 0, json.dumps(data, indent=2)
    lines = [f"genus {P.genus}: {len(P.generators)} generators, {len(P.relations)} relation instances",
             "generators: " + " ".join(P.generators), "relation families:"]
    lines += [f"  {fam:10s} {n}" for fam, n in P.family_counts().items()]
    return 0, "\n".join(lines)


def _corrupt(rho, gen: str):
    # negate the image of the first basis vector: still invertible over Z
    M = rho.matrix(gen).astype(np.int64).copy()
    M[:, 0] *= -1
    return rho.with_matrix(gen, M)


def cmd_verify(args) -> tuple[int, str]:
    P = build_presentation(args.genus)
    rho = derive_module(homology_representation(args.genus), args.module)
    if args.corrupt:
        if args.corrupt not in P.generators:
            raise UsageError(f"unknown generator {args.corrupt!r}")
        rho = _corrupt(rho, args.corrupt)
    rep = verify_presentation(P, rho, spec=args.module)
    code = 0 if rep.ok else 1
    if args.format == "json":
        return code, json.dumps({"genus": args.genus, "module": args.module, "ok": rep.ok,
                                 "relations": len(rep.relations), "closed_forms": len(rep.closed_forms),
                                 "failures": rep.failures}, indent=2)
    lines = [f"genus {args.genus}, module {args.module}: {rep.summary()}"]
    lines += [f"FAIL {label}" for label in rep.failures]
    return code, "\n".join(lines)


def cmd_homology(args) -> tuple[int, str]:
    res = compute(args.genus, args.module, args.ring, args.theory, args.degree)
    if args.format == "json":
        return 0, json.dumps(res.to_dict())
    sub = "_" if args.theory == "homology" else "^"
    return 0, f"H{sub}{args.degree}(H_{args.genus}; {args.module}) over {res.ring} = {res.group}"


def cmd_report(args) -> tuple[int, str]:
    top = args.max_genus
    if top < 2:
        raise GenusError("genus must be ≥ 2")
    if top >= LARGE_GENUS:
        if not args.allow_large_genus:
            raise UsageError(f"--max-genus {top} needs --allow-large-genus")
        print(f"warning: genus {top} builds {top}-fold larger systems; this may take minutes",
              file=sys.stderr)
    genera = list(range(2, top + 1))
    n = min(_threads(), len(genera))
    if n > 1:
        with ProcessPoolExecutor(max_workers=n) as ex:
            rows = [r for chunk in ex.map(report_rows, genera) for r in chunk]
    else:
        rows = [r for g in genera for r in report_rows(g)]
    code = 1 if any(r.status == "mismatch" for r in rows) else 0
    if args.format == "json":
        return code, json.dumps([r.to_dict() for r in rows], indent=2)
    head = f"{'g':>2}  {'theory':14s} {'deg':>3}  {'module':8s} {'ring':5s} {'computed':18s} {'expected':18s} status"
    lines = [head, "-" * len(head)]
    for r in rows:
        exp = str(r.expected) if r.expected is not None else "none"
        lines.append(f"{r.genus:>2}  {r.theory:14s} {r.degree:>3}  {r.module:8s} {r.ring:5s} "
                     f"{str(r.computed):18s} {exp:18s} {r.status}")
    return code, "\n".join(lines)


# ---------------------------------------------------------------------------


def _module_arg(text: str) -> str:
    try:
        ModuleSpec.parse(text)
        return text
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _ring_arg(text: str) -> str:
    try:
        return str(Ring.parse(text))
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hbmcg", description="Twisted homology of handlebody groups.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, genus=True):
        if genus:
            sp.add_argument("--genus", "-g", type=int, required=True)
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")

    sp = sub.add_parser("presentation", help="print the presentation")
    common(sp)
    sp.set_defaults(func=cmd_presentation)

    sp = sub.add_parser("verify", help="check every relation on a module")
    common(sp)
    sp.add_argument("--module", type=_module_arg, default="H")
    sp.add_argument("--corrupt", metavar="GEN",
                    help="debug: perturb the matrix of GEN before checking")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("homology", help="compute one (co)homology group")
    common(sp)
    sp.add_argument("--module", type=_module_arg, default="H")
    sp.add_argument("--ring", type=_ring_arg, default="Z")
    sp.add_argument("--theory", choices=("homology", "cohomology"), default="homology")
    sp.add_argument("--degree", type=int, choices=(0, 1), default=1)
    sp.set_defaults(func=cmd_homology)

    sp = sub.add_parser("report", help="table of computed vs known values")
    common(sp, genus=False)
    sp.add_argument("--max-genus", type=int, default=4)
    sp.add_argument("--allow-large-genus", action="store_true",
                    help=f"permit --max-genus >= {LARGE_GENUS}")
    sp.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code, text = args.func(args)
    except (GenusError, UsageError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
