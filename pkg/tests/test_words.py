import itertools

import pytest

from lyndonreg.words import (
    Alphabet,
    all_words,
    constitute,
    deglex_compare,
    format_word,
    generate_lyndon,
    is_lyndon,
    lex_compare,
    lyndon_decomposition,
    lyndon_factors,
    parse_word,
    shirshov,
)

from conftest import A2, W


def brute_lyndon(u):
    return len(u) > 0 and all(lex_compare(u, u[k:] + u[:k]) > 0 for k in range(1, len(u)))


def test_lex_prefix_is_greater():
    assert lex_compare(W("22"), W("2")) == -1
    assert lex_compare(W("1"), W("2")) == -1
    assert lex_compare(W("21"), W("21")) == 0


def test_deglex_examples():
    assert deglex_compare(W("2"), W("11"), A2) == -1
    assert deglex_compare(W("21"), W("12"), A2) == 1
    assert deglex_compare(W("111"), W("2"), Alphabet((1, 2))) == 1


def test_is_lyndon_examples():
    assert is_lyndon(W("21211"))
    assert not is_lyndon(W("12"))
    assert is_lyndon(W("1"))
    assert not is_lyndon(())


def test_shirshov_examples():
    assert shirshov(W("22121")) == (W("221"), W("21"))
    assert shirshov(W("21")) == (W("2"), W("1"))
    with pytest.raises(ValueError):
        shirshov(W("2"))
    with pytest.raises(ValueError):
        shirshov(W("12"))


def test_lyndon_decomposition_examples():
    assert lyndon_decomposition(W("12")) == [W("1"), W("2")]
    assert lyndon_decomposition(W("2121")) == [W("21"), W("21")]
    assert lyndon_decomposition(W("121")) == [W("1"), W("21")]
    with pytest.raises(ValueError):
        lyndon_decomposition(())


def test_lyndon_factors():
    assert lyndon_factors(W("21")) == {W("1"), W("2"), W("21")}
    assert lyndon_factors(W("221")) == {W("1"), W("2"), W("21"), W("221")}


def test_generate_lyndon_length_five_list():
    got = [format_word(w) for w in generate_lyndon(A2, 5)]
    assert got == ["1", "2", "21", "211", "221", "2111", "2211", "2221", "21111",
                   "21211", "22111", "22121", "22211", "22221"]


def test_generate_lyndon_small_cases():
    assert generate_lyndon(Alphabet.uniform(1), 6) == [(1,)]
    assert generate_lyndon(Alphabet((1, 2)), 3) == [W("1"), W("2"), W("21")]


@pytest.mark.parametrize("n,length", [(2, 8), (3, 6)])
def test_lyndon_oracle_exhaustive(n, length):
    a = Alphabet.uniform(n)
    for L in range(1, length + 1):
        for w in itertools.product(range(1, n + 1), repeat=L):
            assert is_lyndon(w) == brute_lyndon(w), w
    assert set(generate_lyndon(a, length)) == {w for L in range(1, length + 1)
                                               for w in all_words(a, L) if brute_lyndon(w)}


def test_lex_compatible_with_multiplication_in_equal_degree():
    ws = [w for L in range(1, 5) for w in all_words(A2, L)]
    for u, v in itertools.product(ws, repeat=2):
        if len(u) != len(v) or lex_compare(u, v) >= 0:
            continue
        for x in (W("1"), W("2"), W("21")):
            assert lex_compare(x + u, x + v) < 0
            assert lex_compare(u + x, v + x) < 0


def test_constitute_and_degree():
    assert constitute(W("2211"), 2) == (2, 2)
    assert Alphabet((1, 3)).degree(W("212")) == 7


def test_word_text_round_trip():
    for w in [(), W("1"), W("2211")]:
        assert parse_word(format_word(w)) == w
    big = Alphabet.uniform(11)
    assert format_word((11, 2), big) == "[11,2]"
    assert parse_word("[11,2]", big) == (11, 2)
    with pytest.raises(ValueError):
        parse_word("3", A2)


def test_alphabet_validation():
    with pytest.raises(ValueError):
        Alphabet(())
    with pytest.raises(ValueError):
        Alphabet((1, 0))
