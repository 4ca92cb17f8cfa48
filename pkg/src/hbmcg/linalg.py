"""Exact integer linear algebra: Hermite and Smith normal forms, kernels,
cokernels and subquotients of lattices, over Z or Z/n.

Matrices are numpy arrays of dtype ``object`` holding Python ints, so no
arithmetic ever overflows.  Internally the algorithms work on lists of
lists, which is faster than element access on object arrays.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Ring",
    "ZZ",
    "AbelianGroup",
    "MembershipError",
    "int_matrix",
    "identity",
    "xgcd",
    "det_bareiss",
    "cokernel_of_columns",
    "exact_matmul",
    "hnf",
    "snf",
    "invariant_factors",
    "row_lattice",
    "kernel_basis",
    "cokernel_structure",
    "subquotient",
    "homology_group",
]


class MembershipError(ValueError):
    """A vector expected to lie in a lattice does not."""


@dataclass(frozen=True)
class Ring:
    """Coefficient ring: the integers (``modulus=None``) or Z/n with n >= 2."""

    modulus: int | None = None

    def __post_init__(self):
        if self.modulus is not None and self.modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {self.modulus}")

    @classmethod
    def parse(cls, text: str | int | None | "Ring") -> "Ring":
        if isinstance(text, Ring):
            return text
        if text is None:
            return cls()
        if isinstance(text, int):
            return cls(text)
        s = text.replace(" ", "")
        if s in ("Z", "ZZ", "integers"):
            return cls()
        for prefix in ("Z/", "ZZ/", "Z_"):
            if s.startswith(prefix):
                n = s[len(prefix):]
                if n.endswith("Z"):
                    n = n[:-1]
                return cls(int(n))
        raise ValueError(f"cannot parse ring {text!r}")

    @property
    def is_integers(self) -> bool:
        return self.modulus is None

    def __str__(self):
        return "Z" if self.modulus is None else f"Z/{self.modulus}"


ZZ = Ring()


@dataclass(frozen=True, order=True)
class AbelianGroup:
    """Finitely generated abelian group Z^free_rank + Z/d_1 + ... + Z/d_k
    in invariant-factor form (d_1 | d_2 | ... | d_k, all d_i >= 2)."""

    free_rank: int = 0
    torsion: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if self.free_rank < 0:
            raise ValueError("free rank must be non-negative")
        for d in self.torsion:
            if d < 2:
                raise ValueError(f"invariant factors must be >= 2, got {self.torsion}")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"torsion {self.torsion} is not a divisibility chain")

    @classmethod
    def from_diagonal(cls, diagonal: Iterable[int], ambient_rank: int | None = None) -> "AbelianGroup":
        """Group presented by a diagonal relation matrix.

        ``diagonal`` lists the diagonal entries (any order, zeros allowed);
        ``ambient_rank`` is the number of generators, defaulting to the
        number of entries.  Entries need not form a divisibility chain.
        """
        diag = [abs(int(d)) for d in diagonal]
        if ambient_rank is None:
            ambient_rank = len(diag)
        nonzero = [d for d in diag if d]
        free = ambient_rank - len(nonzero)
        return cls(free, _chain_from_orders(nonzero))

    @classmethod
    def cyclic(cls, n: int) -> "AbelianGroup":
        return cls(1, ()) if n == 0 else cls(0, _chain_from_orders([n]))

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def order(self) -> int | None:
        """Order of the group, or None when infinite."""
        return None if self.free_rank else math.prod(self.torsion)

    def direct_sum(self, other: "AbelianGroup") -> "AbelianGroup":
        return AbelianGroup(self.free_rank + other.free_rank,
                            _chain_from_orders(self.torsion + other.torsion))

    def hom_to_cyclic(self, n: int) -> "AbelianGroup":
        """Hom(self, Z/n)."""
        orders = [n] * self.free_rank + [math.gcd(d, n) for d in self.torsion]
        return AbelianGroup(0, _chain_from_orders(orders))

    def tensor_cyclic(self, n: int) -> "AbelianGroup":
        """self (x) Z/n; isomorphic to Hom(self, Z/n) for finitely generated groups."""
        return self.hom_to_cyclic(n)

    def to_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


def _chain_from_orders(orders: Iterable[int]) -> tuple[int, ...]:
    """Invariant factors of a direct sum of cyclic groups of the given orders."""
    # prime power decomposition, then recombine largest powers
    by_prime: dict[int, list[int]] = {}
    for n in orders:
        n = abs(int(n))
        if n in (0, 1):
            if n == 0:
                raise ValueError("infinite cyclic factor in torsion orders")
            continue
        for p, e in _factor(n).items():
            by_prime.setdefault(p, []).append(p**e)
    if not by_prime:
        return ()
    length = max(len(v) for v in by_prime.values())
    chain = [1] * length
    for powers in by_prime.values():
        powers.sort()
        for k, q in enumerate(powers):
            chain[length - len(powers) + k] *= q
    return tuple(chain)


def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


# ---------------------------------------------------------------------------
# matrix helpers


def int_matrix(data, shape: tuple[int, int] | None = None) -> np.ndarray:
    """Build an object-dtype integer matrix.  ``shape`` is needed for empty input."""
    if isinstance(data, np.ndarray) and data.ndim == 2:
        out = np.empty(data.shape, dtype=object)
        for idx, v in np.ndenumerate(data):
            out[idx] = int(v)
        return out
    rows = [list(r) for r in data]
    if shape is None:
        if not rows:
            raise ValueError("shape required for a matrix with no rows")
        shape = (len(rows), len(rows[0]))
    out = np.empty(shape, dtype=object)
    if shape[0] and shape[1]:
        for i, r in enumerate(rows):
            if len(r) != shape[1]:
                raise ValueError("ragged matrix")
            for j, v in enumerate(r):
                out[i, j] = int(v)
    return out


def identity(n: int) -> np.ndarray:
    out = np.zeros((n, n), dtype=object)
    for i in range(n):
        out[i, i] = 1
    return out


def _to_lists(A) -> tuple[list[list[int]], int, int]:
    A = np.asarray(A, dtype=object) if not isinstance(A, np.ndarray) else A
    if A.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    m, n = A.shape
    return [[int(v) for v in row] for row in A.tolist()], m, n


def _from_lists(rows: list[list[int]], m: int, n: int) -> np.ndarray:
    return int_matrix(rows, (m, n))


def _eye(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with x*a + y*b = g = gcd(a, b) >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def _axpy(row: list[int], q: int, other: list[int]) -> list[int]:
    """row - q*other"""
    return [a - q * b for a, b in zip(row, other)]


def _combine(r1: list[int], r2: list[int], c: int) -> tuple[list[int], list[int]]:
    """Unimodular 2x2 combination making r1[c] = gcd and r2[c] = 0."""
    a, b = r1[c], r2[c]
    g, x, y = xgcd(a, b)
    ag, bg = a // g, b // g
    n1 = [x * u + y * v for u, v in zip(r1, r2)]
    n2 = [ag * v - bg * u for u, v in zip(r1, r2)]
    return n1, n2


# ---------------------------------------------------------------------------
# matrix products with an int64 fast path

_LIMIT = 1 << 62


def _maxabs(A: np.ndarray) -> int:
    if A.size == 0:
        return 0
    return int(max(abs(int(A.max())), abs(int(A.min()))))


def exact_matmul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """A @ B without overflow: int64 while provably safe, Python ints otherwise."""
    if A.dtype == np.int64 and B.dtype == np.int64:
        if _maxabs(A) * _maxabs(B) * max(A.shape[1], 1) < _LIMIT:
            return A @ B
    C = A.astype(object) @ B.astype(object)
    return _shrink(C)


def _shrink(A: np.ndarray) -> np.ndarray:
    """Return an int64 copy when every entry fits comfortably, else object."""
    if A.dtype == np.int64:
        return A
    if A.size == 0 or _maxabs(A) < (1 << 31):
        return A.astype(np.int64)
    return A.astype(object)


# ---------------------------------------------------------------------------
# Hermite normal form


def _hnf_lists(H: list[list[int]], m: int, n: int, U: list[list[int]] | None):
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if H[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(H[i][c]))
            if piv != r:
                H[r], H[piv] = H[piv], H[r]
                if U is not None:
                    U[r], U[piv] = U[piv], U[r]
            p = H[r][c]
            clean = True
            for i in range(r + 1, m):
                if H[i][c]:
                    q = H[i][c] // p
                    H[i] = _axpy(H[i], q, H[r])
                    if U is not None:
                        U[i] = _axpy(U[i], q, U[r])
                    if H[i][c]:
                        clean = False
            if clean:
                break
        if r < m and H[r][c]:
            if H[r][c] < 0:
                H[r] = [-v for v in H[r]]
                if U is not None:
                    U[r] = [-v for v in U[r]]
            p = H[r][c]
            for i in range(r):
                q = H[i][c] // p
                if q:
                    H[i] = _axpy(H[i], q, H[r])
                    if U is not None:
                        U[i] = _axpy(U[i], q, U[r])
            r += 1
    return r


def hnf(A) -> tuple[np.ndarray, np.ndarray]:
    """Row Hermite normal form.

    Returns ``(H, U)`` with ``U @ A == H``, U unimodular, H in row echelon
    form with positive pivots and entries above each pivot in [0, pivot).
    """
    H, m, n = _to_lists(A)
    U = _eye(m)
    _hnf_lists(H, m, n, U)
    return _from_lists(H, m, n), _from_lists(U, m, m)


# ---------------------------------------------------------------------------
# Smith normal form


def _snf_lists(D: list[list[int]], m: int, n: int,
               U: list[list[int]] | None, V: list[list[int]] | None) -> list[int]:
    """In-place Smith reduction; U, V (if given) accumulate the row and
    column operations so that U A V = D.  Returns the diagonal."""

    def col_op(j: int, q: int, k: int):
        # column j -= q * column k
        for row in D:
            row[j] -= q * row[k]
        if V is not None:
            for row in V:
                row[j] -= q * row[k]

    def swap_cols(j: int, k: int):
        for row in D:
            row[j], row[k] = row[k], row[j]
        if V is not None:
            for row in V:
                row[j], row[k] = row[k], row[j]

    def swap_rows(i: int, k: int):
        D[i], D[k] = D[k], D[i]
        if U is not None:
            U[i], U[k] = U[k], U[i]

    diag = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = D[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i0, j0 = best
        swap_rows(t, i0)
        swap_cols(t, j0)
        while True:
            p = D[t][t]
            moved = False
            for i in range(t + 1, m):
                if D[i][t]:
                    q = D[i][t] // p
                    D[i] = _axpy(D[i], q, D[t])
                    if U is not None:
                        U[i] = _axpy(U[i], q, U[t])
                    if D[i][t]:
                        moved = True
            for j in range(t + 1, n):
                if D[t][j]:
                    col_op(j, D[t][j] // p, t)
                    if D[t][j]:
                        moved = True
            if moved:
                # bring the smallest remaining entry of row/column t to the pivot
                cands = [(abs(D[i][t]), i, t) for i in range(t, m) if D[i][t]]
                cands += [(abs(D[t][j]), t, j) for j in range(t, n) if D[t][j]]
                _, i1, j1 = min(cands)
                swap_rows(t, i1)
                swap_cols(t, j1)
                continue
            # divisibility: pivot must divide the rest of the submatrix
            bad = None
            for i in range(t + 1, m):
                row = D[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            D[t] = [a + b for a, b in zip(D[t], D[bad])]
            if U is not None:
                U[t] = [a + b for a, b in zip(U[t], U[bad])]
        if D[t][t] < 0:
            D[t] = [-v for v in D[t]]
            if U is not None:
                U[t] = [-v for v in U[t]]
        diag.append(D[t][t])
        t += 1
    return diag


def snf(A) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Smith normal form ``(D, U, V)`` with ``U @ A @ V == D``.

    U and V are unimodular, D is diagonal with non-negative entries forming
    a divisibility chain d_1 | d_2 | ... (zeros last).
    """
    D, m, n = _to_lists(A)
    U, V = _eye(m), _eye(n)
    _snf_lists(D, m, n, U, V)
    return _from_lists(D, m, n), _from_lists(U, m, m), _from_lists(V, n, n)


def invariant_factors(A) -> list[int]:
    """Nonzero Smith invariants of A (no transforms are tracked)."""
    D, m, n = _to_lists(A)
    if m > n:
        # fewer rows to carry around after reducing the row lattice first
        D = row_lattice(D, n)
        m = len(D)
    diag = _snf_lists(D, m, n, None, None)
    return [d for d in diag if d]


# ---------------------------------------------------------------------------
# incremental row lattice (large, redundant systems)


def row_lattice(rows: Iterable[Sequence[int]], ncols: int, modulus: int | None = None) -> list[list[int]]:
    """Echelon basis of the Z-lattice spanned by ``rows``.

    With ``modulus`` n the lattice is taken together with n*Z^ncols and all
    entries are kept reduced mod n, so the result describes the row module
    over Z/n (it always has full rank ncols).  Duplicate rows are skipped and
    each row is folded into the basis as it arrives, so huge inputs never
    need to be materialised.  Output rows have positive pivots, increasing
    pivot columns, and entries above each pivot reduced into [0, pivot).
    """
    basis: dict[int, list[int]] = {}
    seen: set[tuple[int, ...]] = set()

    def reduce_mod(row):
        return [v % modulus for v in row] if modulus else row

    def insert(row: list[int]):
        c = 0
        while True:
            while c < ncols and row[c] == 0:
                c += 1
            if c == ncols:
                return
            p = basis.get(c)
            if p is None:
                if row[c] < 0:
                    row = [-v for v in row]
                basis[c] = reduce_mod(row)
                return
            if row[c] % p[c] == 0:
                row = reduce_mod(_axpy(row, row[c] // p[c], p))
            else:
                newp, row = _combine(p, row, c)
                if newp[c] < 0:
                    newp = [-v for v in newp]
                basis[c] = reduce_mod(newp)
                row = reduce_mod(row)

    for r in rows:
        r = [int(v) for v in r]
        if len(r) != ncols:
            raise ValueError("row length mismatch")
        if modulus:
            r = [v % modulus for v in r]
        key = tuple(r)
        if key in seen or not any(r):
            continue
        seen.add(key)
        insert(r)
    if modulus:
        # mod-n reductions above only preserve span + n*Z^ncols; an exact
        # pass over the (small) basis together with n*I fixes the lattice
        rows_n = [basis[c] for c in sorted(basis)]
        rows_n += [[modulus * (i == c) for i in range(ncols)] for c in range(ncols)]
        return row_lattice(rows_n, ncols)
    out = [basis[c] for c in sorted(basis)]
    # reduce above pivots
    piv = sorted(basis)
    for k in range(len(out) - 1, -1, -1):
        c = piv[k]
        for i in range(k):
            q = out[i][c] // out[k][c]
            if q:
                out[i] = _axpy(out[i], q, out[k])
    return out


def _row_source(A) -> tuple[Iterable[Sequence[int]], int]:
    if isinstance(A, np.ndarray):
        return A.tolist(), A.shape[1]
    raise TypeError("expected a 2-d numpy matrix")


# ---------------------------------------------------------------------------
# kernels, cokernels, subquotients


def _modulus(ring) -> int | None:
    return Ring.parse(ring).modulus


def _kernel_lists(rows: list[list[int]], ncols: int, modulus: int | None) -> list[list[int]]:
    """Kernel generators as a list of column vectors."""
    if modulus is None:
        cols = _KernelChart(rows, ncols).basis()
        # canonical basis: HNF of the transposed generator list
        _hnf_lists(cols, len(cols), ncols, None)
        return [c for c in cols if any(c)]
    basis = row_lattice(rows, ncols, modulus)
    m = len(basis)
    D = [list(r) for r in basis]
    V = _eye(ncols)
    diag = _snf_lists(D, m, ncols, None, V)
    diag += [0] * (ncols - len(diag))
    cols = []
    for j in range(ncols):
        e = modulus // math.gcd(diag[j], modulus)
        col = [(e * V[i][j]) % modulus for i in range(ncols)]
        if any(col):
            cols.append(col)
    return cols


def kernel_basis(A, ring=ZZ) -> np.ndarray:
    """Kernel of A as the columns of a matrix.

    Over Z the columns are a Z-basis of ker(A) (canonicalised by HNF); over
    Z/n they generate the kernel module and entries lie in [0, n).
    """
    rows, ncols = _row_source(A)
    cols = _kernel_lists(rows, ncols, _modulus(ring))
    out = np.zeros((ncols, len(cols)), dtype=object)
    for j, c in enumerate(cols):
        for i, v in enumerate(c):
            out[i, j] = v
    return out


def _column_lattice(B, nrows: int, modulus: int | None) -> list[list[int]]:
    B = np.asarray(B, dtype=object)
    cols = B.T.tolist() if B.size else []
    return row_lattice(cols, nrows, modulus)


def cokernel_structure(A, ring=ZZ, nrows: int | None = None) -> AbelianGroup:
    """Structure of Z^rows / colspan(A), or (Z/n)^rows / colspan(A)."""
    A = np.asarray(A, dtype=object)
    if A.ndim != 2:
        if nrows is None:
            raise ValueError("nrows required for an empty matrix")
        A = np.zeros((nrows, 0), dtype=object)
    m = A.shape[0]
    mod = _modulus(ring)
    basis = _column_lattice(A, m, mod)
    diag = _snf_lists([list(r) for r in basis], len(basis), m, None, None)
    return AbelianGroup.from_diagonal(diag, ambient_rank=m)


def _solve_in_basis(basis_cols: list[list[int]], targets: list[list[int]], n: int) -> list[list[int]]:
    """Coordinates of each target vector in a Z-basis (full column rank).

    Raises MembershipError when a target is outside the lattice.
    """
    k = len(basis_cols)
    if not targets:
        return []
    if k == 0:
        if any(any(t) for t in targets):
            raise MembershipError("nonzero vector in the zero lattice")
        return [[] for _ in targets]
    # row-reduce [K | T] where K is n x k; echelon the rows of K^T instead
    # by working on the augmented matrix with columns = basis + targets.
    aug = [[basis_cols[j][i] for j in range(k)] + [t[i] for t in targets] for i in range(n)]
    width = k + len(targets)
    # echelon on the first k columns only; target columns ride along
    H = aug
    r = 0
    for c in range(k):
        while True:
            nz = [i for i in range(r, n) if H[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(H[i][c]))
            H[r], H[piv] = H[piv], H[r]
            p = H[r][c]
            clean = True
            for i in range(r + 1, n):
                if H[i][c]:
                    H[i] = _axpy(H[i], H[i][c] // p, H[r])
                    if H[i][c]:
                        clean = False
            if clean:
                break
        if r == n or not H[r][c]:
            raise ValueError("basis is not of full column rank")
        r += 1
    for i in range(k, n):
        if any(H[i][k:width]):
            raise MembershipError("vector not in the span of the lattice basis")
    coords = [[0] * k for _ in targets]
    for t in range(len(targets)):
        col = k + t
        x = [0] * k
        for i in range(k - 1, -1, -1):
            s = H[i][col] - sum(H[i][j] * x[j] for j in range(i + 1, k))
            q, rem = divmod(s, H[i][i])
            if rem:
                raise MembershipError("vector in the rational span but not in the lattice")
            x[i] = q
        coords[t] = x
    return coords


def subquotient(K, B, ring=ZZ) -> AbelianGroup:
    """Structure of span(K) / span(B) for column generating sets K, B.

    Over Z/n both spans are taken inside (Z/n)^rows.  Raises MembershipError
    if some column of B is not in span(K).
    """
    K = np.asarray(K, dtype=object)
    B = np.asarray(B, dtype=object)
    n = K.shape[0]
    mod = _modulus(ring)
    kcols = K.T.tolist() if K.size else []
    bcols = B.T.tolist() if B.size else []
    return _subquotient_lists(kcols, bcols, n, mod)


def _subquotient_lists(kcols, bcols, n: int, mod: int | None) -> AbelianGroup:
    kb = row_lattice(kcols, n, mod)
    bb = row_lattice(bcols, n, mod)
    coords = _solve_in_basis(kb, bb, n)
    k = len(kb)
    if k == 0:
        return AbelianGroup()
    M = [[coords[t][i] for t in range(len(coords))] for i in range(k)]
    diag = _snf_lists(M, k, len(coords), None, None)
    return AbelianGroup.from_diagonal(diag, ambient_rank=k)


# ---------------------------------------------------------------------------
# large systems over Z
#
# Exact echelon forms of a few thousand redundant rows suffer coefficient
# blow-up.  Over Z the work is routed through (a) mod-p rank computations to
# pick independent subsets, (b) saturated kernels computed on those small
# subsets, and (c) Hermite reduction modulo a multiple D of the lattice
# index, which is exact because a full-rank lattice contains D*Z^n whenever
# D is a nonzero maximal minor.

_P = 33554393  # largest prime below 2**25: products of residues stay int64


def _residues(vectors: list[list[int]], ncols: int) -> np.ndarray:
    A = np.array(vectors, dtype=object).reshape(len(vectors), ncols) % _P
    return A.astype(np.int64)


def _independent_mod_p(R: np.ndarray, order: Sequence[int]) -> list[int]:
    """Indices (taken in ``order``) of rows of R independent over F_p."""
    n = R.shape[1]
    B = np.zeros((0, n), dtype=np.int64)  # reduced echelon rows, pivot 1
    pivots: list[int] = []
    chosen: list[int] = []
    for idx in order:
        v = R[idx].copy()
        if pivots:
            v = (v - (v[pivots] @ B) % _P) % _P
        nz = np.flatnonzero(v)
        if nz.size == 0:
            continue
        c = int(nz[0])
        v = (v * pow(int(v[c]), -1, _P)) % _P
        B = (B - np.outer(B[:, c], v) % _P) % _P
        B = np.vstack([B, v])
        pivots.append(c)
        chosen.append(idx)
        if len(chosen) == n:
            break
    return chosen


def det_bareiss(M: list[list[int]]) -> int:
    """Exact determinant by fraction-free elimination."""
    A = [list(r) for r in M]
    n = len(A)
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            A[i] = [0] * (k + 1) + [(akk * row_i[j] - aik * row_k[j]) // prev for j in range(k + 1, n)]
        prev = akk
    return sign * A[-1][-1] if n else 1


def _rref_integral(rows: list[list[int]], n: int) -> tuple[list[int], int, list[list[int]]]:
    """Fraction-free Gauss-Jordan on linearly independent rows.

    Returns ``(pivots, den, N)`` with N[:, pivots] = den * I, so the rational
    row space is that of [I | N_F / den].
    """
    A = [list(r) for r in rows]
    r = len(A)
    pivots: list[int] = []
    prev = 1
    c = 0
    for k in range(r):
        while c < n and not any(A[i][c] for i in range(k, r)):
            c += 1
        if c == n:
            raise ValueError("rows are linearly dependent")
        i0 = next(i for i in range(k, r) if A[i][c])
        A[k], A[i0] = A[i0], A[k]
        p, rk = A[k][c], A[k]
        for i in range(r):
            if i != k:
                a, ri = A[i][c], A[i]
                A[i] = [(p * x - a * y) // prev for x, y in zip(ri, rk)]
        prev = p
        pivots.append(c)
        c += 1
    den = prev
    if den < 0:
        den, A = -den, [[-v for v in row] for row in A]
    g = den
    for row in A:
        for v in row:
            g = math.gcd(g, v)
            if g == 1:
                break
    if g > 1:
        den, A = den // g, [[v // g for v in row] for row in A]
    return pivots, den, A


class _KernelChart:
    """ker_Z(A) described through its free coordinates.

    With A in the rational echelon form den * x_P = -N_F x_F, an integer
    vector x lies in ker(A) iff it is determined by x_F and x_F lies in the
    lattice {y : N_F y = 0 mod den}; that lattice contains den * Z^f, so it
    is computed modulo den without coefficient growth.
    """

    def __init__(self, rows: Iterable[Sequence[int]], n: int):
        rows = [list(r) for r in dict.fromkeys(tuple(int(v) for v in r) for r in rows) if any(r)]
        self.n = n
        sel = []
        if rows:
            sel = _independent_mod_p(_residues(rows, n), range(len(rows)))
        self.pivots, self.den, self.N = _rref_integral([rows[i] for i in sel], n) if sel else ([], 1, [])
        pset = set(self.pivots)
        self.free = [j for j in range(n) if j not in pset]
        f = len(self.free)
        if self.den == 1:
            self.lattice = [[int(i == j) for j in range(f)] for i in range(f)]
        else:
            NF = [[row[j] % self.den for j in self.free] for row in self.N]
            gens = _kernel_lists(NF, f, self.den)
            self.lattice = row_lattice([list(c) for c in gens], f, modulus=self.den)
        if rows and len(sel) < len(rows):
            A = _shrink(np.array(rows, dtype=object))
            if np.any(exact_matmul(A, self._basis_matrix())):
                raise ArithmeticError("mod-p rank fell short of the rational rank")

    @property
    def rank(self) -> int:
        return len(self.lattice)

    def _lift(self, y: Sequence[int]) -> list[int]:
        x = [0] * self.n
        for j, v in zip(self.free, y):
            x[j] = v
        for row, c in zip(self.N, self.pivots):
            s = sum(row[j] * x[j] for j in self.free)
            x[c] = -s // self.den
        return x

    def basis(self) -> list[list[int]]:
        """Z-basis of the kernel, as a list of vectors."""
        return [self._lift(y) for y in self.lattice]

    def _basis_matrix(self) -> np.ndarray:
        K = self.basis()
        return _shrink(np.array(K, dtype=object).reshape(len(K), self.n).T)

    def coordinates(self, vectors: list[list[int]]) -> list[list[int]]:
        """Coordinates in ``basis()``; MembershipError outside the kernel."""
        out = []
        L = self.lattice
        piv = [next(j for j, v in enumerate(row) if v) for row in L]
        for x in vectors:
            if self.N:
                for row in self.N:
                    if sum(a * b for a, b in zip(row, x) if b):
                        raise MembershipError("vector not in the kernel")
            elif any(x) and not self.free:
                raise MembershipError("nonzero vector in the zero lattice")
            y = [x[j] for j in self.free]
            c = []
            for row, p in zip(L, piv):
                q, rem = divmod(y[p], row[p])
                if rem:
                    raise MembershipError("vector not in the lattice")
                c.append(q)
                if q:
                    y = _axpy(y, q, row)
            if any(y):
                raise MembershipError("vector not in the lattice")
            out.append(c)
        return out


def _cokernel_full_rank(cols: list[list[int]], n: int, R: np.ndarray, attempts: int = 3) -> AbelianGroup:
    """Z^n / span(cols) for columns known to span a rank-n lattice."""
    rng = np.random.default_rng(0)
    D = 0
    for a in range(attempts):
        order = range(len(cols)) if a == 0 else rng.permutation(len(cols)).tolist()
        sel = _independent_mod_p(R, order)
        if len(sel) < n:
            continue
        D = math.gcd(D, det_bareiss([cols[i] for i in sel]))
        if abs(D) == 1:
            return AbelianGroup()
    if D == 0:
        basis = row_lattice(cols, n)
    else:
        basis = row_lattice(cols, n, modulus=abs(D))
    diag = _snf_lists([list(r) for r in basis], len(basis), n, None, None)
    return AbelianGroup.from_diagonal(diag, ambient_rank=n)


def cokernel_of_columns(cols: Iterable[Sequence[int]], n: int) -> AbelianGroup:
    """Z^n / span(cols), robust to many redundant generators."""
    cols = [list(c) for c in dict.fromkeys(tuple(int(v) for v in c) for c in cols) if any(c)]
    if not cols:
        return AbelianGroup(free_rank=n)
    if len(cols) <= n:
        basis = row_lattice(cols, n)
        diag = _snf_lists([list(r) for r in basis], len(basis), n, None, None)
        return AbelianGroup.from_diagonal(diag, ambient_rank=n)
    R = _residues(cols, n)
    sel = _independent_mod_p(R, range(len(cols)))
    r = len(sel)
    if r == n:
        return _cokernel_full_rank(cols, n, R)
    # pass to the saturation S of span(cols): Z^n / S is free of rank n - r
    W = _KernelChart([cols[i] for i in sel], n).basis()  # orthogonal complement
    S = _KernelChart(W, n)
    inner = cokernel_of_columns(S.coordinates(cols), S.rank)
    return inner.direct_sum(AbelianGroup(free_rank=n - S.rank))


def homology_group(A_rows: Iterable[Sequence[int]], B_cols: Iterable[Sequence[int]],
                   ncols: int, ring=ZZ) -> AbelianGroup:
    """ker(A) / im(B) over ``ring`` for a complex with A @ B == 0.

    A is given by its rows and B by its columns (all of length ``ncols``).
    Raises MembershipError if im(B) is not inside ker(A).
    """
    mod = _modulus(ring)
    if isinstance(A_rows, np.ndarray):
        A_rows = A_rows.tolist()
    if mod is None:
        K = _KernelChart(A_rows, ncols)
        bcols = [list(c) for c in dict.fromkeys(tuple(int(v) for v in c) for c in B_cols)]
        return cokernel_of_columns(K.coordinates(bcols), K.rank)
    kcols = _kernel_lists(A_rows, ncols, mod)
    bb = row_lattice(B_cols, ncols, mod)
    return _subquotient_lists(kcols, bb, ncols, mod)
