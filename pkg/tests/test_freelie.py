from collections import Counter

import pytest

from oracles import necklace

from pclie import freelie
from pclie.errors import InvariantViolation


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_lyndon_counts_match_necklace(n):
    counts = Counter(len(w) for w in freelie.lyndon_words(n, 6))
    assert [counts[d] for d in range(1, 7)] == [necklace(n, d) for d in range(1, 7)]
    assert [freelie.witt_dimension(n, d) for d in range(1, 7)] == [necklace(n, d) for d in range(1, 7)]


def test_letter_order_and_names():
    words = freelie.lyndon_words(2, 3)
    assert set(words) == {(1,), (2,), (2, 1), (2, 2, 1), (2, 1, 1)}
    assert all(freelie.is_lyndon(w) for w in words)
    assert freelie.format_lyndon((2, 1, 1)) == "[a2,a1,a1]"
    assert freelie.format_lyndon((2, 2, 1)) == "[a2,[a2,a1]]"
    assert freelie.standard_factorization((3, 1, 2, 1)) == ((3, 1), (2, 1))


def test_expansion_leading_word():
    for w in freelie.lyndon_words(3, 5):
        e = freelie.expansion(w)
        lead = min(e, key=freelie.letter_key)
        assert lead == w and e[w] == 1


def test_coordinates_roundtrip():
    for u in freelie.lyndon_words(3, 3):
        for v in freelie.lyndon_words(3, 3):
            coords = dict(freelie.bracket_words(u, v))
            rebuilt = {}
            for w, c in coords.items():
                for x, y in freelie.expansion(w).items():
                    rebuilt[x] = rebuilt.get(x, 0) + c * y
            rebuilt = {k: c for k, c in rebuilt.items() if c}
            assert rebuilt == freelie.commutator(freelie.expansion(u), freelie.expansion(v))


def test_non_lie_element_rejected():
    with pytest.raises(InvariantViolation):
        freelie.lyndon_coordinates({(1, 2): 1})


def test_multidegrees():
    ds = list(freelie.multidegrees(3, 2))
    assert len(ds) == freelie.count_multidegrees(3, 2) == 6
    assert ds[0] == (2, 0, 0) and all(sum(d) == 2 for d in ds)
