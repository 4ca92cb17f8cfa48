"""Twisted (co)homology of a finitely presented group in degrees 0 and 1.

For a presentation <x_1..x_n | r_1..r_k> and a left module M given by
matrices rho(x_i):

* a crossed homomorphism d (d(uv) = d(u) + u d(v)) is determined by the
  values d(x_i), and d(w) = sum_i D_i(w) d(x_i) with D_i(w) the Fox
  derivative of w evaluated through rho.  Z^1 is the kernel of the stacked
  constraints D(lhs) - D(rhs), B^1 the image of m -> (x_i m - m)_i.
* H_1 uses the presentation complex M^k -> M^n -> M with
  (m_i) -> sum_i (rho(x_i)^-1 - 1) m_i, and the relator block
  sum_w c_w rho(w)^-1 for Fox derivative sum_w c_w w (antipode applied).

``bar_oracle_h1`` recomputes H_1 (and ``bar_oracle_h1_cohomology`` H^1)
from the truncated bar complex of a finite group given by its
multiplication table; it shares no code with the presentation route.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .action import (
    Representation, UnknownGenerator, exact_matmul, _integer_inverse,
)
from .freegroup import Word
from .linalg import AbelianGroup, Ring, ZZ, cokernel_structure, homology_group, int_matrix
from .wajnryb import Presentation

__all__ = [
    "NotAGroup",
    "CrossedDifferential",
    "HomologyResult",
    "crossed_differential",
    "fox_blocks",
    "cocycle_matrix",
    "coboundary_matrix",
    "h1_cohomology",
    "h1_homology",
    "h0_coinvariants",
    "h0_invariants",
    "abelianization",
    "bar_oracle_h1",
    "bar_oracle_h1_cohomology",
    "FiniteGroup",
    "permutation_group",
]


class NotAGroup(ValueError):
    pass


@dataclass
class CrossedDifferential:
    """Blocks D_i(w) with d(w) = sum_i D_i(w) d(x_i) for every crossed
    homomorphism d.  Generators absent from ``blocks`` have zero block."""

    blocks: dict[str, np.ndarray]
    dim: int

    def block(self, gen: str) -> np.ndarray:
        B = self.blocks.get(gen)
        return np.zeros((self.dim, self.dim), dtype=np.int64) if B is None else B

    def __sub__(self, other: "CrossedDifferential") -> "CrossedDifferential":
        out = dict(self.blocks)
        for gen, B in other.blocks.items():
            out[gen] = _sub(out[gen], B) if gen in out else _neg(B)
        return CrossedDifferential(out, self.dim)

    def row_block(self, generators: Sequence[str]) -> np.ndarray:
        """dim x (n*dim) matrix [D_1 | D_2 | ... ]."""
        return np.concatenate([self.block(x).astype(object) for x in generators], axis=1) \
            if generators else np.zeros((self.dim, 0), dtype=object)


def _sub(A, B):
    if A.dtype == np.int64 and B.dtype == np.int64:
        return A - B  # entries bounded by 2**62 from exact_matmul
    return A.astype(object) - B.astype(object)


def _add(A, B):
    if A.dtype == np.int64 and B.dtype == np.int64:
        return A + B
    return A.astype(object) + B.astype(object)


def _neg(A):
    return -A if A.dtype == np.int64 else -(A.astype(object))


def crossed_differential(w: Word, rho: Representation) -> CrossedDifferential:
    """Fox derivatives of w evaluated through rho."""
    dim = rho.dim
    P = np.eye(dim, dtype=np.int64)
    blocks: dict[str, np.ndarray] = {}
    for name, sign in w:
        if sign > 0:
            blocks[name] = _add(blocks[name], P) if name in blocks else P.copy()
            P = exact_matmul(P, rho.matrix(name))
        else:
            P = exact_matmul(P, rho.inverse(name))
            blocks[name] = _sub(blocks[name], P) if name in blocks else _neg(P)
    return CrossedDifferential(blocks, dim)


def fox_blocks(w: Word, rho: Representation) -> CrossedDifferential:
    """Fox derivatives of w with the antipode applied before evaluation:
    each group element u in a derivative contributes rho(u)^-1."""
    dim = rho.dim
    Q = np.eye(dim, dtype=np.int64)  # rho(prefix)^-1
    blocks: dict[str, np.ndarray] = {}
    for name, sign in w:
        if sign > 0:
            blocks[name] = _add(blocks[name], Q) if name in blocks else Q.copy()
            Q = exact_matmul(rho.inverse(name), Q)
        else:
            Q = exact_matmul(rho.matrix(name), Q)
            blocks[name] = _sub(blocks[name], Q) if name in blocks else _neg(Q)
    return CrossedDifferential(blocks, dim)


def _check_alphabet(P: Presentation, rho: Representation):
    missing = [x for x in P.generators if x not in rho.matrices]
    if missing:
        raise UnknownGenerator(missing[0])


def _cocycle_rows(P: Presentation, rho: Representation) -> Iterator[list[int]]:
    gens = P.generators
    for rel in P.relations:
        D = crossed_differential(rel.lhs, rho) - crossed_differential(rel.rhs, rho)
        yield from D.row_block(gens).tolist()


def _boundary2_cols(P: Presentation, rho: Representation) -> Iterator[list[int]]:
    """Columns of the degree-2 boundary, relation by relation."""
    gens = P.generators
    for rel in P.relations:
        D = fox_blocks(rel.lhs, rho) - fox_blocks(rel.rhs, rho)
        # block (i, r) is D_i; columns of the stacked N x dim block
        yield from np.concatenate([D.block(x).astype(object) for x in gens], axis=0).T.tolist()


def cocycle_matrix(P: Presentation, rho: Representation) -> np.ndarray:
    """Stacked constraints D(lhs_r) - D(rhs_r); its kernel is Z^1."""
    _check_alphabet(P, rho)
    N = len(P.generators) * rho.dim
    rows = list(_cocycle_rows(P, rho))
    return int_matrix(rows, (len(rows), N))


def coboundary_matrix(rho: Representation, generators: Sequence[str] | None = None) -> np.ndarray:
    """Stacked blocks rho(x_i) - 1: the map M -> M^n, m -> (x_i m - m)_i."""
    gens = tuple(generators) if generators is not None else rho.generators
    I = np.eye(rho.dim, dtype=object)
    blocks = [rho.matrix(x).astype(object) - I for x in gens]
    if not blocks:
        return np.zeros((0, rho.dim), dtype=object)
    return np.concatenate(blocks, axis=0)


def _boundary1(rho: Representation, gens: Sequence[str]) -> np.ndarray:
    I = np.eye(rho.dim, dtype=object)
    blocks = [rho.inverse(x).astype(object) - I for x in gens]
    if not blocks:
        return np.zeros((rho.dim, 0), dtype=object)
    return np.concatenate(blocks, axis=1)


@dataclass
class HomologyResult:
    group: AbelianGroup
    theory: str
    degree: int
    module: str = ""
    genus: int | None = None
    ring: Ring = ZZ
    diagnostics: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "genus": self.genus,
            "module": self.module,
            "ring": str(self.ring),
            "theory": self.theory,
            "degree": self.degree,
            "free_rank": self.group.free_rank,
            "torsion": list(self.group.torsion),
        }


def _result(group, theory, degree, rho: Representation, P: Presentation | None, ring, t0, **diag):
    diag["seconds"] = round(time.perf_counter() - t0, 3)
    genus = P.genus if P is not None else rho.genus
    return HomologyResult(group, theory, degree, rho.name, genus, ring, diag)


def _ring(rho: Representation, ring) -> Ring:
    return rho.ring if ring is None else Ring.parse(ring)


def h1_cohomology(P: Presentation, rho: Representation, ring=None) -> HomologyResult:
    """H^1(G; M) = Z^1 / B^1."""
    _check_alphabet(P, rho)
    ring = _ring(rho, ring)
    t0 = time.perf_counter()
    N = len(P.generators) * rho.dim
    delta = coboundary_matrix(rho, P.generators)
    group = homology_group(_cocycle_rows(P, rho), delta.T.tolist(), N, ring)
    return _result(group, "cohomology", 1, rho, P, ring, t0, unknowns=N,
                   constraint_rows=len(P.relations) * rho.dim)


def h1_homology(P: Presentation, rho: Representation, ring=None) -> HomologyResult:
    """H_1(G; M) from the presentation complex."""
    _check_alphabet(P, rho)
    ring = _ring(rho, ring)
    t0 = time.perf_counter()
    N = len(P.generators) * rho.dim
    d1 = _boundary1(rho, P.generators)
    group = homology_group(d1.tolist(), _boundary2_cols(P, rho), N, ring)
    return _result(group, "homology", 1, rho, P, ring, t0, chains=N,
                   boundary_columns=len(P.relations) * rho.dim)


def h0_coinvariants(rho: Representation, ring=None) -> HomologyResult:
    """M_G = M / <g m - m>."""
    ring = _ring(rho, ring)
    t0 = time.perf_counter()
    gens = rho.generators
    I = np.eye(rho.dim, dtype=object)
    blocks = [rho.matrix(x).astype(object) - I for x in gens]
    A = np.concatenate(blocks, axis=1) if blocks else np.zeros((rho.dim, 0), dtype=object)
    group = cokernel_structure(A, ring)
    return _result(group, "homology", 0, rho, None, ring, t0)


def h0_invariants(rho: Representation, ring=None) -> HomologyResult:
    """M^G = {m : g m = m for all generators g}."""
    ring = _ring(rho, ring)
    t0 = time.perf_counter()
    A = coboundary_matrix(rho)
    group = homology_group(A.tolist(), [], rho.dim, ring)
    return _result(group, "cohomology", 0, rho, None, ring, t0)


def abelianization(P: Presentation) -> AbelianGroup:
    """Cokernel of the exponent-sum matrix of the relators."""
    gens = list(P.generators)
    pos = {x: k for k, x in enumerate(gens)}
    cols = []
    for rel in P.relations:
        v = [0] * len(gens)
        for name, e in rel.relator().exponent_sums().items():
            v[pos[name]] += e
        cols.append(v)
    A = np.zeros((len(gens), len(cols)), dtype=object)
    for j, v in enumerate(cols):
        A[:, j] = v
    return cokernel_structure(A, ZZ)


# ---------------------------------------------------------------------------
# finite groups and the bar-resolution oracle


@dataclass(frozen=True)
class FiniteGroup:
    """Finite group as a multiplication table on 0..n-1 (0 need not be the
    identity).  ``table[a][b]`` is the product ab."""

    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.table)
        T = self.table
        if any(len(row) != n for row in T):
            raise NotAGroup("table is not square")
        if any(not 0 <= v < n for row in T for v in row):
            raise NotAGroup("table entries out of range")
        ids = [e for e in range(n) if all(T[e][a] == a and T[a][e] == a for a in range(n))]
        if not ids:
            raise NotAGroup("no identity element")
        for row in T:
            if sorted(row) != list(range(n)):
                raise NotAGroup("not a Latin square")
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if T[T[a][b]][c] != T[a][T[b][c]]:
                        raise NotAGroup("multiplication is not associative")

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def identity(self) -> int:
        T = self.table
        return next(e for e in range(self.order) if all(T[e][a] == a for a in range(self.order)))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        e = self.identity
        return next(b for b in range(self.order) if self.table[a][b] == e)


def permutation_group(generators: Sequence[Sequence[int]]) -> tuple[FiniteGroup, list[tuple[int, ...]], list[int]]:
    """Close a set of permutations under composition.

    Returns the group table, the list of elements as permutations, and the
    element index of each generator.  Composition (pq)(k) = p(q(k)).
    """
    gens = [tuple(p) for p in generators]
    n = len(gens[0])
    e = tuple(range(n))
    elems = [e]
    index = {e: 0}
    frontier = [e]
    while frontier:
        nxt = []
        for p in frontier:
            for q in gens:
                pq = tuple(q[p[k]] for k in range(n))
                if pq not in index:
                    index[pq] = len(elems)
                    elems.append(pq)
                    nxt.append(pq)
        frontier = nxt

    def compose(p, q):
        return tuple(p[q[k]] for k in range(n))

    table = tuple(tuple(index[compose(p, q)] for q in elems) for p in elems)
    return FiniteGroup(table), elems, [index[q] for q in gens]


def _check_action(G: FiniteGroup, action: Sequence[np.ndarray]):
    n = G.order
    if len(action) != n:
        raise ValueError("one matrix per group element required")
    mats = [np.asarray(A, dtype=object) for A in action]
    for a in range(n):
        for b in range(n):
            if not np.array_equal(mats[a] @ mats[b], mats[G.mul(a, b)]):
                raise ValueError("action matrices do not form a representation")
    return mats


def bar_oracle_h1(G: FiniteGroup | Sequence[Sequence[int]], action: Sequence[np.ndarray], ring=ZZ) -> AbelianGroup:
    """H_1(G; M) from the bar complex M[G x G] -> M[G] -> M.

    d(m[g]) = g^-1 m - m and d(m[g|h]) = (g^-1 m)[h] - m[gh] + m[g].
    """
    if not isinstance(G, FiniteGroup):
        G = FiniteGroup(tuple(tuple(r) for r in G))
    mats = _check_action(G, action)
    n, m = G.order, mats[0].shape[0]
    inv = [_integer_inverse(np.asarray(A, dtype=object)).astype(object) for A in mats]
    I = np.eye(m, dtype=object)

    def c1(g):  # slice of C_1 = M^G
        return slice(g * m, (g + 1) * m)

    d1 = np.zeros((m, n * m), dtype=object)
    for g in range(n):
        d1[:, c1(g)] = inv[g] - I
    cols = []
    for g in range(n):
        for h in range(n):
            blk = np.zeros((n * m, m), dtype=object)
            blk[c1(h)] += inv[g]
            blk[c1(G.mul(g, h))] -= I
            blk[c1(g)] += I
            cols.extend(blk.T.tolist())
    return homology_group(d1.tolist(), cols, n * m, ring)


def bar_oracle_h1_cohomology(G: FiniteGroup | Sequence[Sequence[int]], action: Sequence[np.ndarray], ring=ZZ) -> AbelianGroup:
    """H^1(G; M) from bar cochains: Z^1 = {f : f(gh) = f(g) + g f(h)}."""
    if not isinstance(G, FiniteGroup):
        G = FiniteGroup(tuple(tuple(r) for r in G))
    mats = _check_action(G, action)
    n, m = G.order, mats[0].shape[0]
    I = np.eye(m, dtype=object)
    rows = []
    for g in range(n):
        for h in range(n):
            blk = np.zeros((m, n * m), dtype=object)
            blk[:, h * m:(h + 1) * m] += mats[g]
            blk[:, G.mul(g, h) * m:(G.mul(g, h) + 1) * m] -= I
            blk[:, g * m:(g + 1) * m] += I
            rows.extend(blk.tolist())
    delta0 = np.concatenate([mats[g] - I for g in range(n)], axis=0)
    return homology_group(rows, delta0.T.tolist(), n * m, ring)
