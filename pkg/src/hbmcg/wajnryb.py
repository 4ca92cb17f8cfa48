"""Wajnryb's finite presentation of the genus-g handlebody mapping class group.

Generators are ``a1..ag``, ``d12``, ``s1``, ``t1..t(g-1)`` and ``r(i,j)`` for
(i, j) in the index set Itilde.  Every derived element (d_{i,j}, d_I,
c_{i,j}, k_j, s_j, z, z_j, h_2, h_3) is expanded into these generators, and
each relation family (P1)-(P12) is emitted instance by instance with a
label recording its indices.

Conventions that are not forced by the displayed formulas:

* ``a_i`` with a negative index means ``a_|i|``.
* descending products whose range is empty are the identity.
* in (P7) ``[a_i, t_j] = 1`` runs over 1 <= i <= g, 1 <= j <= g-1 with
  j not in {i, i-1}; the negative indices of I_0 add no new instances.
* ``z_j`` is the product k_{j-1} ... k_{g+1-j} z, not a conjugate.
* (P10)(b) excludes k = j-1 besides k = |i|, j.
* (P11) is only emitted when -i+1 != j.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .freegroup import Word, commutator, conjugate, product

__all__ = [
    "GenusError",
    "IndexSets",
    "RelationInstance",
    "Presentation",
    "index_sets",
    "derived_word",
    "relations",
    "build_presentation",
    "generator_names",
    "a", "t", "r", "S1", "D12",
]


class GenusError(ValueError):
    pass


def _check_genus(g: int):
    if not isinstance(g, int) or g < 2:
        raise GenusError("genus must be ≥ 2")


# generator names -------------------------------------------------------------

S1 = "s1"
D12 = "d12"


def a(i: int) -> str:
    return f"a{abs(i)}"


def t(i: int) -> str:
    return f"t{i}"


def r(i: int, j: int) -> str:
    return f"r({i},{j})"


@dataclass(frozen=True)
class IndexSets:
    genus: int
    I0: tuple[int, ...]
    Itilde: tuple[tuple[int, int], ...]


def index_sets(g: int) -> IndexSets:
    _check_genus(g)
    I0 = tuple(range(-g, 0)) + tuple(range(1, g + 1))
    tilde = [(1, j) for j in range(2, g + 1)]
    for i in range(-1, -g - 1, -1):
        tilde.extend((i, j) for j in range(-i + 1, g + i + 1))
    return IndexSets(g, I0, tuple(tilde))


def generator_names(g: int) -> list[str]:
    """Canonical generator order: a's, d12, s1, t's, then r's in Itilde order."""
    idx = index_sets(g)
    return ([a(i) for i in range(1, g + 1)] + [D12, S1]
            + [t(i) for i in range(1, g)] + [r(i, j) for i, j in idx.Itilde])


# derived words ---------------------------------------------------------------


def _gen(name: str, power: int = 1) -> Word:
    return Word.gen(name, power)


class _Words:
    """Expansion of the derived elements for a fixed genus."""

    def __init__(self, g: int):
        _check_genus(g)
        self.g = g
        self.idx = index_sets(g)
        self.I0 = self.idx.I0
        self._d = lru_cache(maxsize=None)(self._d_uncached)
        self._dI = lru_cache(maxsize=None)(self._dI_uncached)

    # small helpers
    def a(self, i: int) -> Word:
        if not 1 <= abs(i) <= self.g:
            raise IndexError(f"a_{i} undefined for g={self.g}")
        return _gen(a(i))

    def t(self, i: int, power: int = 1) -> Word:
        if not 1 <= i <= self.g - 1:
            raise IndexError(f"t_{i} undefined for g={self.g}")
        return _gen(t(i), power)

    def r(self, i: int, j: int) -> Word:
        if (i, j) not in self.idx.Itilde:
            raise IndexError(f"r_({i},{j}) undefined for g={self.g}")
        return _gen(r(i, j))

    def t_desc(self, hi: int, lo: int, power: int = 1) -> Word:
        """t_hi t_(hi-1) ... t_lo (each to ``power``); identity if hi < lo."""
        return product(self.t(k, power) for k in range(hi, lo - 1, -1))

    def k_desc(self, hi: int, lo: int) -> Word:
        return product(self.k(m) for m in range(hi, lo - 1, -1))

    # d_{i,j}
    def d(self, i: int, j: int) -> Word:
        if not (i < j and i in self.I0 and j in self.I0):
            raise IndexError(f"d_({i},{j}) needs i < j in I_0 for g={self.g}")
        return self._d(i, j)

    def _d_uncached(self, i: int, j: int) -> Word:
        s1inv = _gen(S1, -1)
        d12 = _gen(D12)
        if i + j == 0:
            phi = product(self.t(m, -1) * self.d(m, m + 1) for m in range(j - 1, 0, -1))
            return conjugate(phi, _gen(S1, 2) * _gen(a(1), 4))
        if i > 0:
            phi = self.t_desc(i - 1, 1) * self.t_desc(j - 1, 2)
        elif j < 0:
            phi = (self.t_desc(-j - 1, 1, -1) * self.t_desc(-i - 1, 2, -1)
                   * s1inv * self.t(1, -1) * s1inv)
        elif i + j > 0:
            phi = self.t_desc(-i - 1, 1, -1) * s1inv * self.t_desc(j - 1, 2)
        else:
            phi = self.t_desc(-i - 1, 1, -1) * s1inv * self.t_desc(j, 2)
        return conjugate(phi, d12)

    # d_I and c_{i,j}
    def dI(self, I) -> Word:
        I = tuple(sorted(set(I)))
        for i in I:
            if i not in self.I0:
                raise IndexError(f"{i} not in I_0 for g={self.g}")
        return self._dI(I)

    def _dI_uncached(self, I: tuple[int, ...]) -> Word:
        n = len(I)
        twists = product(self.d(p, q) for p, q in combinations(I, 2))
        return twists * product(self.a(i) for i in I) ** (2 - n)

    def c(self, i: int, j: int) -> Word:
        if i > j:
            raise IndexError(f"c_({i},{j}) needs i <= j")
        return self.dI(k for k in self.I0 if i <= k <= j)

    def k(self, j: int) -> Word:
        if not 1 <= j <= self.g - 1:
            raise IndexError(f"k_{j} undefined for g={self.g}")
        return self.a(j) * self.a(j + 1) * self.t(j) * self.d(j, j + 1).inverse()

    def s(self, j: int) -> Word:
        if not 1 <= j <= self.g:
            raise IndexError(f"s_{j} undefined for g={self.g}")
        return conjugate(self.k_desc(j - 1, 1), _gen(S1))

    def z(self) -> Word:
        g = self.g
        w = product(self.a(i) for i in range(1, g + 1))
        for m in range(g - 1, 0, -1):
            w = w * _gen(S1) * product(self.t(q) for q in range(1, m + 1))
        return w * _gen(S1) * self.dI(range(1, g + 1))

    def z_j(self, j: int) -> Word:
        if not (2 * j > self.g and j <= self.g):
            raise IndexError(f"z_{j} needs g/2 < j <= g (g={self.g})")
        return self.k_desc(j - 1, self.g + 1 - j) * self.z()

    def h2(self, j: int) -> Word:
        return self.k(j - 1).inverse() * self.t_desc(j - 2, 1, -1) * self.k_desc(j - 1, 2)

    def h3(self, i: int, j: int) -> Word:
        if i == -1:
            return _gen(S1) * self.k_desc(j - 1, 2)
        return self.s(-i) * self.t_desc(-1 - i, 1, -1) * self.k_desc(j - 1, 2)


@lru_cache(maxsize=None)
def _words(g: int) -> _Words:
    return _Words(g)


_SYMBOL = re.compile(r"^\s*([A-Za-z]+\d?)\s*(?:\(([^)]*)\))?\s*$")


def derived_word(symbol, g: int) -> Word:
    """Expand a derived element into presentation generators.

    ``symbol`` is a string such as ``"d(2,3)"``, ``"dI(1,2,3)"``,
    ``"c(1,1)"``, ``"k(1)"``, ``"s(2)"``, ``"z"``, ``"z(2)"``, ``"h2(3)"``,
    ``"h3(-1,3)"``, or a generator name; or an equivalent tuple such as
    ``("d", 2, 3)``.
    """
    W = _words(g) if isinstance(g, int) and g >= 2 else _Words(g)
    if isinstance(symbol, tuple):
        head, args = symbol[0], tuple(symbol[1:])
    else:
        if symbol in generator_names(g):
            return _gen(symbol)
        m = _SYMBOL.match(symbol)
        if not m:
            raise ValueError(f"cannot parse symbol {symbol!r}")
        head = m.group(1)
        args = tuple(int(x) for x in m.group(2).split(",")) if m.group(2) else ()
    table = {
        "d": lambda *x: W.d(*x),
        "dI": lambda *x: W.dI(x),
        "c": lambda *x: W.c(*x),
        "k": lambda *x: W.k(*x),
        "s": lambda *x: W.s(*x),
        "t": lambda *x: W.t(*x),
        "a": lambda *x: W.a(*x),
        "r": lambda *x: W.r(*x),
        "z": lambda *x: W.z_j(*x) if x else W.z(),
        "h2": lambda *x: W.h2(*x),
        "h3": lambda *x: W.h3(*x),
    }
    if head not in table:
        raise ValueError(f"unknown symbol {symbol!r}")
    return table[head](*args)


# relations -------------------------------------------------------------------


@dataclass(frozen=True)
class RelationInstance:
    label: str
    lhs: Word
    rhs: Word

    @property
    def family(self) -> str:
        return self.label.split("[", 1)[0]

    def relator(self) -> Word:
        return self.lhs * self.rhs.inverse()


def _lab(family: str, **idx) -> str:
    if not idx:
        return family
    return family + "[" + ",".join(f"{k}={v}" for k, v in idx.items()) + "]"


def _relations(W: _Words):
    g, I0 = W.g, W.I0
    one = Word()
    s1 = _gen(S1)
    d = W.d
    conj = conjugate

    # (P1)
    for i, j in combinations(range(1, g + 1), 2):
        yield RelationInstance(_lab("P1", i=i, j=j), commutator(W.a(i), W.a(j)), one)
    for i in range(1, g + 1):
        for j, k in combinations(I0, 2):
            yield RelationInstance(_lab("P1(d)", i=i, j=j, k=k), commutator(W.a(i), d(j, k)), one)

    # (P2)
    for rr, ss, i, j in _quads(I0):
        yield RelationInstance(_lab("P2(a)", r=rr, s=ss, i=i, j=j),
                               conj(d(rr, ss).inverse(), d(i, j)), d(i, j))
    for rr, i, j in combinations(I0, 3):
        yield RelationInstance(_lab("P2(b)", r=rr, i=i, j=j),
                               conj(d(rr, i).inverse(), d(i, j)), conj(d(rr, j), d(i, j)))
    for i, ss, j in combinations(I0, 3):
        yield RelationInstance(_lab("P2(c)", i=i, s=ss, j=j),
                               conj(d(i, ss).inverse(), d(i, j)), conj(d(i, j) * d(ss, j), d(i, j)))
    for rr, i, ss, j in combinations(I0, 4):
        yield RelationInstance(_lab("P2(d)", r=rr, i=i, s=ss, j=j),
                               conj(d(rr, ss).inverse(), d(i, j)),
                               conj(commutator(d(rr, j), d(ss, j)), d(i, j)))

    # (P3), (P4)
    yield RelationInstance("P3", W.dI(I0), one)
    for k in I0:
        yield RelationInstance(_lab("P4", k=k), W.dI(x for x in I0 if x != k), W.a(k))

    # (P5)
    for i in range(1, g - 1):
        yield RelationInstance(_lab("P5", i=i), W.t(i) * W.t(i + 1) * W.t(i),
                               W.t(i + 1) * W.t(i) * W.t(i + 1))
    for i in range(1, g):
        for j in range(i + 2, g):
            yield RelationInstance(_lab("P5(c)", i=i, j=j), commutator(W.t(i), W.t(j)), one)

    # (P6)
    for i in range(1, g):
        yield RelationInstance(_lab("P6", i=i), W.t(i, 2),
                               d(i, i + 1) * d(-i - 1, -i) * W.a(i) ** -2 * W.a(i + 1) ** -2)

    # (P7)
    for i in range(1, g + 1):
        yield RelationInstance(_lab("P7(a)", i=i), commutator(s1, W.a(i)), one)
    for i in range(1, g):
        yield RelationInstance(_lab("P7(b)", i=i), conj(W.t(i), W.a(i)), W.a(i + 1))
    for i in range(1, g + 1):
        for j in range(1, g):
            if j not in (i, i - 1):
                yield RelationInstance(_lab("P7(c)", i=i, j=j), commutator(W.a(i), W.t(j)), one)
    for i in range(2, g):
        yield RelationInstance(_lab("P7(d)", i=i), commutator(W.t(i), s1), one)

    # (P8)
    if g >= 3:
        yield RelationInstance("P8(a)", commutator(s1, d(2, 3)), one)
    yield RelationInstance("P8(b)", commutator(s1, d(-2, 2)), one)
    t1 = W.t(1)
    yield RelationInstance("P8(c)", s1 * t1 * s1 * t1, t1 * s1 * t1 * s1)
    for i in [1] + list(range(3, g)):
        yield RelationInstance(_lab("P8(d)", i=i), commutator(W.t(i), _gen(D12)), one)

    tilde = W.idx.Itilde
    # (P9)
    for i, j in tilde:
        sj, cij = W.s(j), W.c(i, j)
        yield RelationInstance(_lab("P9", i=i, j=j), W.r(i, j) ** 2, sj * cij * sj * cij.inverse())

    # (P10)
    for i, j in tilde:
        rij = W.r(i, j)
        yield RelationInstance(_lab("P10(a)", i=i, j=j), conj(rij, W.a(j)), W.c(i, j))
        for k in range(1, g + 1):
            if k != j:
                yield RelationInstance(_lab("P10(a')", i=i, j=j, k=k), commutator(rij, W.a(k)), one)
        for k in range(1, g):
            # t_(j-1) is excluded as well: it satisfies the braid-type (P11) instead
            if k not in (abs(i), j - 1, j) or k == i == 1 < j - 1:
                yield RelationInstance(_lab("P10(b)", i=i, j=j, k=k), commutator(rij, W.t(k)), one)
        for k in range(1, g + 1):
            if k < abs(i) or j < k or k == -i:
                yield RelationInstance(_lab("P10(c)", i=i, j=j, k=k), commutator(rij, W.s(k)), one)
        inner = {x for x in I0 if i <= x <= j - 1}
        outer = {-j} | {x for x in I0 if i <= x <= j}
        for k, m in combinations(I0, 2):
            if (k in inner and m in inner) or (k not in outer and m not in outer):
                yield RelationInstance(_lab("P10(d)", i=i, j=j, k=k, m=m), commutator(rij, d(k, m)), one)
        if (i, j) == (1, g) or j == g + i:
            yield RelationInstance(_lab("P10(e)", i=i, j=j), commutator(rij, W.z_j(j)), one)
        yield RelationInstance(_lab("P10(f)", i=i, j=j), conj(rij, d(i, j)),
                               W.dI(x for x in I0 if i < x <= j))
        if i == 1:
            yield RelationInstance(_lab("P10(g)", i=i, j=j), conj(rij, d(-j, 1 - j)),
                                   conj(W.t_desc(j - 2, 1), W.c(-1, j)))
        if i < 0 and j + i > 1:
            yield RelationInstance(_lab("P10(h)", i=i, j=j), conj(rij, d(-j, 1 - j)),
                                   conj(W.t_desc(j - 2, 1 - i), W.c(i - 1, j)))
        if j < g:
            yield RelationInstance(_lab("P10(i)", i=i, j=j), conj(rij.inverse(), d(-j - 1, -j)),
                                   conj(W.s(j + 1).inverse(), W.c(i, j + 1)))

    # (P11)
    for i, j in tilde:
        if -i + 1 != j:
            tj = W.t(j - 1)
            rij = W.r(i, j)
            yield RelationInstance(_lab("P11", i=i, j=j), conj(rij, tj), conj(tj.inverse(), rij))

    # (P12)
    for j in range(3, g + 1):
        sj, kj, h2 = W.s(j), W.k(j - 1), W.h2(j)
        c1j = W.c(1, j)
        rhs = product([
            sj, c1j, sj, c1j.inverse(), kj, W.a(j), W.c(1, j - 2), W.t(j - 1),
            W.c(1, j - 1).inverse(), W.t(j - 1, -1), W.r(1, j - 1).inverse(), W.s(j - 1),
            h2, W.r(1, 2).inverse(), h2.inverse(), kj.inverse(),
        ])
        yield RelationInstance(_lab("P12(a)", j=j), W.r(1, j), rhs)
    for j in range(2, g):
        sj, h3 = W.s(j), W.h3(-1, j)
        cm = W.c(-1, j)
        rhs = product([
            h3, W.r(1, 2).inverse(), h3.inverse(), sj, W.r(1, j).inverse(),
            W.c(-1, j - 1).inverse(), W.c(1, j - 1), W.a(1), sj, cm, sj, cm.inverse(),
        ])
        yield RelationInstance(_lab("P12(b)", j=j), W.r(-1, j), rhs)
    for i, j in tilde:
        if i < -1:
            sj, h3 = W.s(j), W.h3(i, j)
            cij = W.c(i, j)
            rhs = product([
                h3, W.r(1, 2).inverse(), h3.inverse(), sj, W.r(i + 1, j).inverse(),
                W.c(i, j - 1).inverse(), W.c(i + 1, j - 1), W.a(-i), sj, cij, sj, cij.inverse(),
            ])
            yield RelationInstance(_lab("P12(c)", i=i, j=j), W.r(i, j), rhs)


def _quads(I0):
    """(r, s, i, j) with r < s < i < j or i < r < s < j."""
    for rr, ss in combinations(I0, 2):
        for i, j in combinations(I0, 2):
            if rr < ss < i < j or i < rr < ss < j:
                yield rr, ss, i, j


def relations(g: int) -> list[RelationInstance]:
    return list(_relations(_words(g)))


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relations: tuple[RelationInstance, ...]
    genus: int | None = None

    def family_counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for rel in self.relations:
            out[rel.family] = out.get(rel.family, 0) + 1
        return out

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps({
            "genus": self.genus,
            "generators": list(self.generators),
            "relations": [{"label": x.label, "lhs": str(x.lhs), "rhs": str(x.rhs)}
                          for x in self.relations],
        }, indent=indent)

    @classmethod
    def from_json(cls, text: str) -> "Presentation":
        data = json.loads(text)
        rels = tuple(RelationInstance(x["label"], Word.parse(x["lhs"]), Word.parse(x["rhs"]))
                     for x in data["relations"])
        return cls(tuple(data["generators"]), rels, data.get("genus"))


def build_presentation(g: int) -> Presentation:
    _check_genus(g)
    return Presentation(tuple(generator_names(g)), tuple(relations(g)), g)
