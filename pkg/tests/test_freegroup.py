import pytest
from hypothesis import given, strategies as st

from hbmcg.freegroup import Word, commutator, conjugate, invert, multiply, parse_word, product

letters = st.lists(st.tuples(st.sampled_from(["a1", "a2", "t1", "r(1,2)"]), st.sampled_from([1, -1])),
                   max_size=12)


def w(text):
    return parse_word(text)


def test_multiply_reduces():
    assert multiply(w("a1"), w("a1^-1")) == Word()
    assert multiply(w("a1 t1"), w("t1^-1 a2")) == w("a1 a2")
    assert multiply(w("s1"), w("s1")) == w("s1^2")


def test_invert():
    assert invert(w("a1 t1")) == w("t1^-1 a1^-1")
    assert invert(Word()) == Word()
    assert invert(w("s1^2")) == w("s1^-2")


def test_conjugate_and_commutator():
    x = w("a1 d12")
    assert conjugate(Word(), x) == x
    assert conjugate(w("a1"), w("a1")) == w("a1")
    assert conjugate(w("t1"), w("d12")) == w("t1 d12 t1^-1")
    assert commutator(x, x) == Word()
    assert commutator(w("a1"), w("a2")) == w("a1 a2 a1^-1 a2^-1")
    assert commutator(Word(), x) == Word()


def test_parse_and_print():
    x = w("a1 t2^-1 r(-1,2) s1^3 1")
    assert str(x) == "a1 t2^-1 r(-1,2) s1 s1 s1"
    assert parse_word(str(x)) == x
    assert w("") == Word() == w("1")
    with pytest.raises(ValueError):
        parse_word("a1 ^2")


def test_exponent_sums_and_generators():
    x = w("a1 t1 a1^-1 a1 a1")
    assert x.exponent_sums() == {"a1": 2, "t1": 1}
    assert x.generators() == {"a1", "t1"}


@given(letters, letters, letters)
def test_group_axioms(u, v, x):
    U, V, X = Word(u), Word(v), Word(x)
    assert (U * V) * X == U * (V * X)
    assert U * U.inverse() == Word()
    assert (U * V).inverse() == V.inverse() * U.inverse()
    assert product([U, V, X]) == U * V * X
    # stored words are freely reduced
    for (a, s), (b, t) in zip(U.letters, U.letters[1:]):
        assert not (a == b and s == -t)


@given(letters, st.integers(-3, 3))
def test_power(u, n):
    U = Word(u)
    assert U ** n * U ** (-n) == Word()
    assert len(U ** 2) <= 2 * len(U)
