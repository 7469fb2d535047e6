import pytest

from lyndonreg.closedsets import (
    ClosedSet,
    close,
    closed_sets_up_to,
    fibonacci_closed,
    fibonacci_phi_formula,
    fibonacci_words,
    is_closed,
    phi,
    phibar,
    psi,
    upsilon,
)
from lyndonreg.words import Alphabet, format_word

from conftest import A2, U2, U3, U4, U5, U5P, U5PP, W, cs


def S(ws):
    return {format_word(w) for w in ws}


TABLE = [
    (U2, {"211", "221"}, {"211", "221"}),
    (U3, {"211", "221"}, {"211", "221"}),
    (U4, {"211", "2221", "22121"}, {"211", "2221", "22121"}),
    (U5, {"211", "2221", "2212121", "22122121"}, {"211", "2221", "2212121", "22122121", "222121"}),
    (U5P, {"211", "22121", "2221221", "22221"}, {"211", "22121", "2221221", "22221"}),
    (U5PP, {"2111", "21211", "2211", "22121", "2221"}, {"2111", "21211", "2211", "22121", "2221"}),
]


def test_u2_is_u3_minus_nothing():
    # U_2 = {x1, x2}: phi is {x2x1}
    assert S(phi(U2)) == {"21"}
    assert S(phibar(U2)) == {"21"}


@pytest.mark.parametrize("U,want_phi,want_bar", TABLE[1:])
def test_closed_set_table(U, want_phi, want_bar):
    assert S(phi(U)) == want_phi
    assert S(phibar(U)) == want_bar


def test_phi_differs_from_phibar_for_u5():
    assert set(phibar(U5)) - set(phi(U5)) == {W("222121")}


def test_closure():
    assert close([W("221")], A2) == U4
    assert close([], A2) == U2
    assert not is_closed([W("1"), W("2"), W("221")], A2)
    with pytest.raises(ValueError):
        ClosedSet.from_words([W("1"), W("221")], A2)


def test_fibonacci_words():
    f = fibonacci_words(6)
    assert [format_word(w) for w in f] == ["1", "2", "21", "221", "22121", "22122121"]


@pytest.mark.parametrize("p", range(2, 9))
def test_fibonacci_phi(p):
    U = fibonacci_closed(p)
    assert is_closed(U, A2)
    assert len(phi(U)) == p - 1
    assert set(phi(U)) == fibonacci_phi_formula(p)


def test_psi_inverts_phi():
    for U in (U3, U4, U5P, U5PP):
        assert set(psi(phi(U), A2, 9)) == set(U)


def test_upsilon_adjacent_pairs():
    assert [(format_word(a), format_word(b)) for a, b in upsilon(U3)] == [("2", "21"), ("21", "1")]


def test_closed_set_census_size():
    sets = closed_sets_up_to(A2, 6)
    assert len(sets) == len(set(map(frozenset, sets)))
    assert all(is_closed(U, A2) for U in sets)
    assert {frozenset(U) for U in (U2, U3, U4, U5, U5P, U5PP)} <= {frozenset(U) for U in sets}
