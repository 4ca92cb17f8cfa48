import json

import pytest

from hbmcg.freegroup import parse_word
from hbmcg.wajnryb import (
    GenusError, Presentation, build_presentation, derived_word, generator_names, index_sets,
)


def test_index_sets():
    assert index_sets(2).Itilde == ((1, 2),)
    assert set(index_sets(3).Itilde) == {(1, 2), (1, 3), (-1, 2)}
    assert set(index_sets(4).Itilde) == {(1, 2), (1, 3), (1, 4), (-1, 2), (-1, 3)}
    assert index_sets(3).I0 == (-3, -2, -1, 1, 2, 3)


@pytest.mark.parametrize("g,n", [(2, 6), (3, 10), (4, 14), (5, 19)])
def test_generator_counts(g, n):
    names = generator_names(g)
    assert len(names) == n == len(set(names))
    assert list(names[:g]) == [f"a{i}" for i in range(1, g + 1)]


def test_generator_names_genus2():
    assert tuple(generator_names(2)) == ("a1", "a2", "d12", "s1", "t1", "r(1,2)")


@pytest.mark.parametrize("g", [1, 0, -3])
def test_bad_genus(g):
    with pytest.raises(GenusError, match="genus must be ≥ 2"):
        build_presentation(g)


def test_derived_words():
    assert derived_word("d(-1,1)", 2) == parse_word("s1^2 a1^4")
    assert derived_word("d(2,3)", 3) == parse_word("t1 t2 d12 t2^-1 t1^-1")
    assert derived_word("c(1,1)", 2) == parse_word("a1")
    assert derived_word("z", 2) == parse_word("a1 a2 s1 t1 s1 d12")
    assert derived_word("k(1)", 2) == parse_word("a1 a2 t1 d12^-1")
    assert derived_word("d(1,2)", 2) == parse_word("d12")


def test_relation_counts_and_families():
    counts = {g: len(build_presentation(g).relations) for g in (2, 3, 4)}
    assert counts[2] < counts[3] < counts[4]
    fam = build_presentation(3).family_counts()
    assert fam["P5"] == 1
    assert "P12(a)" in fam and "P1" in fam
    # every relation mentions only presentation generators
    P = build_presentation(3)
    for rel in P.relations:
        assert (rel.lhs.generators() | rel.rhs.generators()) <= set(P.generators), rel.label


def test_labels_unique():
    P = build_presentation(4)
    labels = [r.label for r in P.relations]
    assert len(labels) == len(set(labels))


def test_json_round_trip_is_deterministic():
    P = build_presentation(3)
    text = P.to_json()
    Q = Presentation.from_json(text)
    assert Q == P
    assert Q.to_json() == text == build_presentation(3).to_json()
    assert json.loads(text)["genus"] == 3
