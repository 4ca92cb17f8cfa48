"""Integral action of the presentation generators on H = H_1(Sigma_g).

Basis order is (x_1, ..., x_g, y_1, ..., y_g); matrices act on column
vectors from the left, so column c of a matrix is the image of basis
vector c and a word evaluates as rho(u v) = rho(u) rho(v).

Derived modules: L (span of the x's, top-left block), H/L (bottom-right
block, basis ybar_1..ybar_g), duals (inverse transpose), tensor products
(Kronecker products), trivial modules and reductions mod n.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .freegroup import Word
from .linalg import Ring, ZZ, _eye, _hnf_lists, _shrink, _to_lists, exact_matmul
from .wajnryb import (
    D12, S1, Presentation, derived_word, generator_names, index_sets, _check_genus,
)

__all__ = [
    "UnknownGenerator",
    "BlockError",
    "Representation",
    "ModuleSpec",
    "generator_matrix",
    "closed_form_matrix",
    "printed_d_matrix",
    "homology_representation",
    "evaluate",
    "exact_matmul",
    "derive_module",
    "module_matrix",
    "VerificationReport",
    "verify_presentation",
    "is_symplectic",
    "symplectic_form",
]

class UnknownGenerator(KeyError):
    pass


class BlockError(ValueError):
    pass


def _as_exact(A) -> np.ndarray:
    return _shrink(np.asarray(A, dtype=object) if not isinstance(A, np.ndarray) else A.astype(object))


def _integer_inverse(A: np.ndarray) -> np.ndarray:
    """Inverse of a unimodular integer matrix, computed exactly."""
    rows, n, m = _to_lists(A.astype(object))
    if n != m:
        raise ValueError("square matrix required")
    aug = [rows[i] + _eye(n)[i] for i in range(n)]
    _hnf_lists(aug, n, n, None)
    for i in range(n):
        if aug[i][i] != 1 or any(aug[i][j] for j in range(n) if j != i):
            raise ValueError("matrix is not invertible over Z")
    inv = np.array([row[n:] for row in aug], dtype=object).reshape(n, n)
    return _shrink(inv)


# ---------------------------------------------------------------------------
# generator matrices


def _blank(g: int) -> np.ndarray:
    return np.eye(2 * g, dtype=np.int64)


def _eps(i: int) -> int:
    return 1 if i > 0 else -1


def _x(l: int) -> int:
    return l - 1


def _y(g: int, l: int) -> int:
    return g + l - 1


def _a(g: int, i: int) -> np.ndarray:
    M = _blank(g)
    M[_x(i), _y(g, i)] += 1
    return M


def _s(g: int, i: int) -> np.ndarray:
    M = _blank(g)
    M[_x(i), _x(i)] = -1
    M[_x(i), _y(g, i)] = 2
    M[_y(g, i), _y(g, i)] = -1
    return M


def _t(g: int, i: int) -> np.ndarray:
    M = np.zeros((2 * g, 2 * g), dtype=np.int64)
    for l in range(1, g + 1):
        if l not in (i, i + 1):
            M[_x(l), _x(l)] = 1
            M[_y(g, l), _y(g, l)] = 1
    M[_x(i + 1), _x(i)] = 1
    M[_x(i), _x(i + 1)] = 1
    # y_i -> x_i + y_{i+1}, y_{i+1} -> x_{i+1} + y_i
    M[_x(i), _y(g, i)] = 1
    M[_y(g, i + 1), _y(g, i)] = 1
    M[_x(i + 1), _y(g, i + 1)] = 1
    M[_y(g, i), _y(g, i + 1)] = 1
    return M


def _k(g: int, i: int) -> np.ndarray:
    M = np.zeros((2 * g, 2 * g), dtype=np.int64)
    perm = {l: l for l in range(1, g + 1)}
    perm[i], perm[i + 1] = i + 1, i
    for l, m in perm.items():
        M[_x(m), _x(l)] = 1
        M[_y(g, m), _y(g, l)] = 1
    return M


def _d(g: int, i: int, j: int) -> np.ndarray:
    """Dehn twist along delta_{i,j}: y_|k| -> y_|k| + eps(k) * c for k in {i, j},
    where c = eps(i) x_|i| + eps(j) x_|j| is the class of the curve."""
    M = _blank(g)
    c = np.zeros(2 * g, dtype=np.int64)
    c[_x(abs(i))] += _eps(i)
    c[_x(abs(j))] += _eps(j)
    for k in {i, j} if abs(i) != abs(j) else {j}:
        M[:, _y(g, abs(k))] += _eps(k) * c
    return M


def printed_d_matrix(g: int, i: int, j: int) -> np.ndarray:
    """The d_{i,j} action exactly as printed: both y_|i| and y_|j| gain
    +c.  For index pairs of mixed sign this matrix does not preserve the
    intersection form (kept for comparison only)."""
    M = _blank(g)
    c = np.zeros(2 * g, dtype=np.int64)
    c[_x(abs(i))] += _eps(i)
    c[_x(abs(j))] += _eps(j)
    for l in {abs(i), abs(j)}:
        M[:, _y(g, l)] += c
    return M


def _r(g: int, i: int, j: int) -> np.ndarray:
    lo = 1 if i == 1 else -i + 1
    M = _blank(g)
    span = np.zeros(2 * g, dtype=np.int64)
    for l in range(lo, j + 1):
        span[_x(l)] = 1
    M[:, _x(j)] = -span
    for l in range(lo, j):
        col = span.copy()
        col[_y(g, l)] += 1
        col[_y(g, j)] -= 1
        M[:, _y(g, l)] = col
    col = span.copy()
    col[_x(j)] = 2
    col[_y(g, j)] = -1
    M[:, _y(g, j)] = col
    return M


def _c(g: int, i: int, j: int) -> np.ndarray:
    """Twist along the curve around boundaries i..j of the 2g-holed sphere.

    Its class is the signed sum of enclosed x's; paired boundaries -l, l
    cancel.  For 0 < i and for (i, j) in Itilde this reduces to the
    displayed closed forms."""
    M = _blank(g)
    enclosed = [k for k in range(i, j + 1) if k != 0 and abs(k) <= g]
    c = np.zeros(2 * g, dtype=np.int64)
    for k in enclosed:
        c[_x(abs(k))] += _eps(k)
    for k in enclosed:
        M[:, _y(g, abs(k))] += _eps(k) * c
    # a k with both signs enclosed contributed +c and -c: net zero, as it should
    return M


_GEN = re.compile(r"^(a|t|s)(\d+)$|^d12$|^r\((-?\d+),(-?\d+)\)$")


def generator_matrix(gen: str, g: int) -> np.ndarray:
    """2g x 2g integer matrix of a presentation generator on H."""
    _check_genus(g)
    if gen not in generator_names(g):
        raise UnknownGenerator(gen)
    if gen == D12:
        return _d(g, 1, 2)
    if gen == S1:
        return _s(g, 1)
    m = _GEN.match(gen)
    if m.group(1) == "a":
        return _a(g, int(m.group(2)))
    if m.group(1) == "t":
        return _t(g, int(m.group(2)))
    return _r(g, int(m.group(3)), int(m.group(4)))


_SYM = re.compile(r"^\s*(d|k|s|c)\s*\(\s*(-?\d+)\s*(?:,\s*(-?\d+)\s*)?\)\s*$")


def closed_form_matrix(symbol, g: int) -> np.ndarray:
    """Action of d(i,j), k(i), s(i) or c(i,j) read off the closed formulas."""
    _check_genus(g)
    if isinstance(symbol, tuple):
        head, args = symbol[0], tuple(symbol[1:])
    else:
        m = _SYM.match(symbol)
        if not m:
            raise ValueError(f"no closed form for {symbol!r}")
        head = m.group(1)
        args = tuple(int(x) for x in m.groups()[1:] if x is not None)
    I0 = index_sets(g).I0
    if head == "d":
        i, j = args
        if not (i < j and i in I0 and j in I0):
            raise IndexError(f"d({i},{j}) invalid for g={g}")
        return _d(g, i, j)
    if head == "k":
        (i,) = args
        if not 1 <= i <= g - 1:
            raise IndexError(f"k({i}) invalid for g={g}")
        return _k(g, i)
    if head == "s":
        (i,) = args
        if not 1 <= i <= g:
            raise IndexError(f"s({i}) invalid for g={g}")
        return _s(g, i)
    if head == "c":
        i, j = args
        if i > j or not (-g <= i and j <= g):
            raise IndexError(f"c({i},{j}) invalid for g={g}")
        return _c(g, i, j)
    raise ValueError(f"no closed form for {symbol!r}")


def symplectic_form(g: int) -> np.ndarray:
    J = np.zeros((2 * g, 2 * g), dtype=np.int64)
    for l in range(g):
        J[l, g + l] = 1
        J[g + l, l] = -1
    return J


def is_symplectic(M: np.ndarray, g: int) -> bool:
    J = symplectic_form(g)
    M = np.asarray(M).astype(object)
    return bool(np.array_equal(M.T @ J.astype(object) @ M, J.astype(object)))


# ---------------------------------------------------------------------------
# representations and coefficient modules


@dataclass(frozen=True)
class Representation:
    """Matrices for each generator over a coefficient ring.

    Matrices are stored over Z; ``ring`` records the coefficients the module
    is read over (entries are not reduced).
    """

    matrices: Mapping[str, np.ndarray]
    ring: Ring = ZZ
    genus: int | None = None
    basis_note: str = ""
    name: str = ""
    _inverses: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def dim(self) -> int:
        return next(iter(self.matrices.values())).shape[0] if self.matrices else 0

    @property
    def generators(self) -> tuple[str, ...]:
        return tuple(self.matrices)

    def matrix(self, gen: str) -> np.ndarray:
        try:
            return self.matrices[gen]
        except KeyError:
            raise UnknownGenerator(gen) from None

    def inverse(self, gen: str) -> np.ndarray:
        inv = self._inverses.get(gen)
        if inv is None:
            inv = _integer_inverse(self.matrix(gen))
            self._inverses[gen] = inv
        return inv

    def letter(self, name: str, sign: int) -> np.ndarray:
        return self.matrix(name) if sign > 0 else self.inverse(name)

    def with_matrix(self, gen: str, M) -> "Representation":
        mats = dict(self.matrices)
        mats[gen] = _as_exact(M)
        return Representation(mats, self.ring, self.genus, self.basis_note, self.name)

    def with_ring(self, ring) -> "Representation":
        return Representation(dict(self.matrices), Ring.parse(ring), self.genus,
                              self.basis_note, self.name)


def homology_representation(g: int, ring=ZZ) -> Representation:
    """The action on H_1(Sigma_g) of every presentation generator."""
    mats = {gen: generator_matrix(gen, g) for gen in generator_names(g)}
    return Representation(mats, Ring.parse(ring), g,
                          "x_1..x_g, y_1..y_g (column vectors)", "H")


def evaluate(rho: Representation, w: Word) -> np.ndarray:
    """rho(w) as an exact integer matrix."""
    M = np.eye(rho.dim, dtype=np.int64)
    for name, sign in w:
        M = exact_matmul(M, rho.letter(name, sign))
    return M


@dataclass(frozen=True)
class ModuleSpec:
    """Coefficient module description.

    kind is one of "H", "L", "HmodL", "dual", "tensor", "trivial", "mod";
    ``args`` carries sub-specs or integers.
    """

    kind: str
    args: tuple = ()

    @classmethod
    def parse(cls, text: "str | ModuleSpec") -> "ModuleSpec":
        if isinstance(text, ModuleSpec):
            return text
        s = text.replace(" ", "")
        aliases = {
            "H": cls("H"), "L": cls("L"), "HmodL": cls("HmodL"), "H/L": cls("HmodL"),
            "trivial": cls("trivial", (1,)), "Z": cls("trivial", (1,)),
            "LxLdual": cls("tensor", (cls("L"), cls("dual", (cls("L"),)))),
            "LxH": cls("tensor", (cls("L"), cls("H"))),
        }
        if s in aliases:
            return aliases[s]
        m = re.match(r"^(\w+)\((.*)\)$", s)
        if not m:
            raise ValueError(f"cannot parse module {text!r}")
        head, inner = m.group(1), _split_args(m.group(2))
        if head == "dual" and len(inner) == 1:
            return cls("dual", (cls.parse(inner[0]),))
        if head == "tensor" and len(inner) == 2:
            return cls("tensor", (cls.parse(inner[0]), cls.parse(inner[1])))
        if head == "trivial" and len(inner) == 1:
            return cls("trivial", (int(inner[0]),))
        if head == "mod" and len(inner) == 2:
            return cls("mod", (cls.parse(inner[0]), int(inner[1])))
        raise ValueError(f"cannot parse module {text!r}")

    def __str__(self):
        if self.kind in ("H", "L", "HmodL"):
            return self.kind
        return f"{self.kind}({','.join(str(a) for a in self.args)})"


def _split_args(s: str) -> list[str]:
    out, depth, cur = [], 0, ""
    for ch in s:
        if ch == "," and depth == 0:
            out.append(cur)
            cur = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur += ch
    out.append(cur)
    return out


def _l_block(M: np.ndarray, g: int) -> np.ndarray:
    if np.any(np.asarray(M[g:, :g]) != 0):
        raise BlockError("matrix does not preserve L = span(x_1..x_g)")
    return M[:g, :g].copy()


def module_matrix(M_H: np.ndarray, spec, g: int, inverse_H: np.ndarray | None = None) -> np.ndarray:
    """Push a matrix acting on H through a module construction."""
    spec = ModuleSpec.parse(spec)
    k = spec.kind
    if k == "H":
        return M_H
    if k == "L":
        return _l_block(M_H, g)
    if k == "HmodL":
        _l_block(M_H, g)
        return M_H[g:, g:].copy()
    if k == "trivial":
        return np.eye(spec.args[0], dtype=np.int64)
    if k == "mod":
        return module_matrix(M_H, spec.args[0], g, inverse_H)
    if k == "dual":
        inner = module_matrix(M_H, spec.args[0], g, inverse_H)
        return _integer_inverse(inner).T.copy()
    if k == "tensor":
        A = module_matrix(M_H, spec.args[0], g, inverse_H)
        B = module_matrix(M_H, spec.args[1], g, inverse_H)
        return _shrink(np.kron(A.astype(object), B.astype(object)))
    raise ValueError(f"unknown module kind {k!r}")


def _spec_ring(spec: ModuleSpec, ring: Ring) -> Ring:
    if spec.kind == "mod":
        return Ring(spec.args[1])
    return ring


def derive_module(rho_H: Representation, spec) -> Representation:
    """Representation on a module built from H (see ModuleSpec)."""
    spec = ModuleSpec.parse(spec)
    g = rho_H.genus
    if g is None:
        raise ValueError("derive_module needs the genus-g action on H")
    mats = {gen: module_matrix(M, spec, g) for gen, M in rho_H.matrices.items()}
    return Representation(mats, _spec_ring(spec, rho_H.ring), g, f"derived: {spec}", str(spec))


def dual_representation(rho: Representation) -> Representation:
    mats = {gen: _integer_inverse(M).T.copy() for gen, M in rho.matrices.items()}
    return Representation(mats, rho.ring, rho.genus, f"dual of {rho.basis_note}",
                          f"dual({rho.name})" if rho.name else "")


def trivial_representation(generators, rank: int = 1, ring=ZZ) -> Representation:
    return Representation({gen: np.eye(rank, dtype=np.int64) for gen in generators},
                          Ring.parse(ring), None, "trivial", f"trivial({rank})")


# ---------------------------------------------------------------------------
# verification


@dataclass
class CheckResult:
    label: str
    ok: bool


@dataclass
class VerificationReport:
    relations: list[CheckResult] = field(default_factory=list)
    closed_forms: list[CheckResult] = field(default_factory=list)

    @property
    def failures(self) -> list[str]:
        return [c.label for c in self.relations + self.closed_forms if not c.ok]

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        nr = sum(c.ok for c in self.relations)
        nc = sum(c.ok for c in self.closed_forms)
        return (f"relations {nr}/{len(self.relations)} pass, "
                f"closed forms {nc}/{len(self.closed_forms)} pass")


def _closed_form_symbols(g: int) -> list[str]:
    I0 = index_sets(g).I0
    out = [f"d({i},{j})" for i in I0 for j in I0 if i < j]
    out += [f"k({i})" for i in range(1, g)]
    out += [f"s({i})" for i in range(1, g + 1)]
    out += [f"c({i},{j})" for i in range(1, g + 1) for j in range(i, g + 1)]
    out += [f"c({i},{j})" for i, j in index_sets(g).Itilde if i < 0]
    return out


def _reduce(M: np.ndarray, ring: Ring) -> np.ndarray:
    if ring.modulus is None:
        return M
    return M.astype(object) % ring.modulus


def verify_presentation(P: Presentation, rho: Representation, spec=None,
                        closed_forms: bool = True) -> VerificationReport:
    """Check rho(lhs) == rho(rhs) for every relation, and (for genus-g
    modules) compare evaluated derived words with the closed formulas."""
    report = VerificationReport()
    ring = rho.ring
    for rel in P.relations:
        ok = np.array_equal(_reduce(evaluate(rho, rel.lhs), ring), _reduce(evaluate(rho, rel.rhs), ring))
        report.relations.append(CheckResult(rel.label, bool(ok)))
    g = P.genus
    if closed_forms and g is not None and rho.genus == g:
        spec = ModuleSpec.parse(spec or (rho.name or "H"))
        for sym in _closed_form_symbols(g):
            w = derived_word(sym, g)
            expected = module_matrix(closed_form_matrix(sym, g), spec, g)
            ok = np.array_equal(_reduce(evaluate(rho, w), ring), _reduce(expected, ring))
            report.closed_forms.append(CheckResult(f"closed-form {sym}", bool(ok)))
    return report
