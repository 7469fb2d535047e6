import pytest

from lyndonreg.closedsets import ClosedSet, closed_sets_up_to
from lyndonreg.invariants import (
    fibonacci_bound,
    fibonacci_number,
    gkdim,
    gldim_info,
    gorenstein_parameter,
    hilbert_from_irr,
    hilbert_product,
    invariant_report,
    validate_setting,
)
from lyndonreg.presentations import build_G
from lyndonreg.words import Alphabet

from conftest import A2, U3, U4, U5P, U5PP, W, qmat


def test_hilbert_product_examples():
    assert hilbert_product(U3, A2, 5) == [1, 2, 4, 6, 9, 12]
    A3 = Alphabet.uniform(3)
    assert hilbert_product(A3.letters, A3, 4) == [1, 3, 6, 10, 15]
    assert hilbert_product(U4, A2, 4) == [1, 2, 4, 7, 11]


def test_hilbert_from_irr_matches():
    G = build_G(U3, qmat(1, 5, 3, 1))
    assert hilbert_from_irr(G, A2, 8) == hilbert_product(U3, A2, 8)


def test_dimensions():
    assert (gkdim(U4), gldim_info(U4).value, gorenstein_parameter(U4)) == (4, 4, 7)
    assert (gldim_info(U5PP).value, gorenstein_parameter(U5PP)) == (5, 10)
    A3 = Alphabet.uniform(3)
    X = ClosedSet.from_words(A3.letters, A3)
    assert (gldim_info(X).value, gorenstein_parameter(X)) == (3, 3)
    assert gldim_info(phi_size=4).value == 5 and not gldim_info(phi_size=4).exact
    assert gldim_info().value is None


def test_fibonacci_bound():
    assert [fibonacci_number(k) for k in range(7)] == [1, 1, 2, 3, 5, 8, 13]
    assert fibonacci_bound(4, 2) == 7
    assert fibonacci_bound(3, 2) == 4
    assert fibonacci_bound(5, 2) == 12
    assert gorenstein_parameter(U5P) == 11 <= fibonacci_bound(5, 2)
    with pytest.raises(ValueError):
        fibonacci_bound(1, 2)


def test_bound_census():
    for U in closed_sets_up_to(A2, 6):
        assert gorenstein_parameter(U) <= fibonacci_bound(len(U), 2)


def test_validate_setting():
    Q = qmat(1, 5, 3, 1)
    G = build_G(U3, Q)
    assert validate_setting(U3, G)
    assert not validate_setting(U3, G[:1])
    from lyndonreg.freealg import parse_poly
    assert not validate_setting(U3, G + [parse_poly("x2x1 - x1x2", A2)])


def test_invariant_report_json():
    rep = invariant_report(U4, G=build_G(U4, qmat(1, 1, 1, 1)), cap=6)
    doc = rep.to_json()
    assert doc["gorenstein_parameter"] == 7 and doc["bound_satisfied"]
    assert doc["hilbert"] == doc["hilbert_from_irr"]
    assert doc["obstructions"] == ["211", "2221", "22121"]
