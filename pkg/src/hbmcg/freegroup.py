"""Freely reduced words over a named generator alphabet.

A word is a tuple of ``(name, sign)`` letters with sign = +1 or -1; powers
are always expanded letter by letter.  The product ``u * v`` is the
concatenation; read as mapping classes, ``v`` acts first.
"""
from __future__ import annotations

import re
from typing import Iterable, Iterator

__all__ = ["Word", "multiply", "invert", "conjugate", "commutator", "product", "parse_word"]

Letter = tuple[str, int]

_TOKEN = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*(?:\([^)]*\))?)(?:\^(-?\d+))?$")


def _reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for name, sign in letters:
        if sign not in (1, -1):
            raise ValueError(f"letter exponent must be +1 or -1, got {sign}")
        if out and out[-1][0] == name and out[-1][1] == -sign:
            out.pop()
        else:
            out.append((name, sign))
    return tuple(out)


class Word:
    """Element of a free group, stored freely reduced."""

    __slots__ = ("letters", "_hash")

    def __init__(self, letters: Iterable[Letter] = ()):
        self.letters = _reduce(letters)
        self._hash = None

    @classmethod
    def gen(cls, name: str, power: int = 1) -> "Word":
        sign = 1 if power >= 0 else -1
        return cls([(name, sign)] * abs(power))

    @classmethod
    def identity(cls) -> "Word":
        return cls()

    @classmethod
    def parse(cls, text: str) -> "Word":
        return parse_word(text)

    def __mul__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        a, b = self.letters, other.letters
        k = 0
        while k < len(a) and k < len(b) and a[-1 - k][0] == b[k][0] and a[-1 - k][1] == -b[k][1]:
            k += 1
        w = Word.__new__(Word)
        w.letters = a[: len(a) - k] + b[k:]
        w._hash = None
        return w

    def inverse(self) -> "Word":
        w = Word.__new__(Word)
        w.letters = tuple((name, -sign) for name, sign in reversed(self.letters))
        w._hash = None
        return w

    __invert__ = inverse

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else self.inverse()
        out = Word()
        for _ in range(abs(n)):
            out = out * base
        return out

    def conjugate_by(self, phi: "Word") -> "Word":
        """phi * self * phi^-1"""
        return phi * self * phi.inverse()

    def generators(self) -> set[str]:
        return {name for name, _ in self.letters}

    def exponent_sums(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for name, sign in self.letters:
            out[name] = out.get(name, 0) + sign
        return out

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.letters)
        return self._hash

    def __str__(self) -> str:
        return " ".join(name if sign == 1 else f"{name}^-1" for name, sign in self.letters)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"


def parse_word(text: str) -> Word:
    """Parse the whitespace-separated syntax ``a1 t2^-1 r(-1,2) s1``.

    ``x^k`` for any integer k is accepted and expanded; ``1`` or an empty
    string is the identity.
    """
    letters: list[Letter] = []
    for tok in text.split():
        if tok == "1":
            continue
        m = _TOKEN.match(tok)
        if not m:
            raise ValueError(f"bad word token {tok!r}")
        name, exp = m.group(1), int(m.group(2) or 1)
        sign = 1 if exp >= 0 else -1
        letters.extend([(name, sign)] * abs(exp))
    return Word(letters)


def multiply(u: Word, v: Word) -> Word:
    return u * v


def invert(u: Word) -> Word:
    return u.inverse()


def conjugate(phi: Word, psi: Word) -> Word:
    """phi * psi * phi^-1"""
    return phi * psi * phi.inverse()


def commutator(u: Word, v: Word) -> Word:
    """[u, v] = u v u^-1 v^-1"""
    return u * v * u.inverse() * v.inverse()


def product(words: Iterable[Word]) -> Word:
    out = Word()
    for w in words:
        out = out * w
    return out
