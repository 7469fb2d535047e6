import random

import pytest

from lyndonreg.closedsets import ClosedSet, phibar
from lyndonreg.freealg import NcPoly, irr_counts, is_groebner, normal_form, parse_poly
from lyndonreg.presentations import (
    PresentationError,
    PresentationH,
    build_G,
    build_H,
    c_value,
    certify,
    extract_conditions,
    fibonacci_failure,
    fibonacci_residual,
    j_residuals,
)
from lyndonreg.qcalc import QMatrix, SuperWordExpr, super_letter
from lyndonreg.scalars import Extension, LaurentScalar, evaluate, parse_scalar
from lyndonreg.words import Alphabet, generate_lyndon, lex_key

from conftest import A2, F, U2, U3, U4, U5, U5P, U5PP, W, qmat

zeta = Extension.parse("t^2+t+1").generator


def h_of(H, u, v):
    return H.h(H.X.index(W(u)), H.X.index(W(v)))


def test_build_G_quantum_affine_space():
    A3 = Alphabet.uniform(3)
    U = ClosedSet.from_words(A3.letters, A3)
    Q = QMatrix.symbolic_generic(A3)
    G = build_G(U, Q)
    assert sorted(str(g) for g in G) == ["x2x1 - q21*x1x2", "x3x1 - q31*x1x3", "x3x2 - q32*x2x3"]
    H = build_H(U, Q)
    assert len(H.relations()) == 3 and not any(H.h(a, b) for a, b in H.pairs())


def test_build_G_sizes(generic):
    assert [str(g) for g in build_G(U2, generic)] == ["x2x1 - q21*x1x2"]
    assert len(build_G(U5, generic)) == 5


def test_h_values_u3(generic):
    H = build_H(U3, generic)
    assert not h_of(H, "2", "21")
    assert str(h_of(H, "2", "1")) == "x21"
    assert not h_of(H, "21", "1")
    assert len(H.relations()) == 3


def test_h_values_u4(generic):
    H = build_H(U4, generic)
    assert str(h_of(H, "221", "1")) == "(q11*q21 - q21*q22)*x21*x21"
    assert len(H.relations()) == 6
    assert H.check_f_contained()


def test_h_values_u5(generic):
    H = PresentationH(U5, generic)
    want = parse_scalar("q21^2*q11*(q11-q22)*(1-q22^2*q21*q12)", n=2)
    assert h_of(H, "22121", "1").terms == {(2, 2, 2): want}


def test_h_values_u5_prime(generic):
    H = PresentationH(U5P, generic)
    want6 = parse_scalar("q22^2*q21*(q21*q12*q11-1)", n=2)
    want7 = parse_scalar("q22*q21^2*(q22*q21*q12*q11+1)*(q11-q22) + q21^2*q11*(1-q22^4*q21*q12)", n=2)
    a, b, c = (H.X.index(W(s)) for s in ("221", "21", "1"))
    assert h_of(H, "2221", "21").terms == {(a, a): want6}
    assert h_of(H, "2221", "1").terms == {(b, a): want7}


def test_h_words_lex_smaller(generic):
    for U in (U4, U5, U5P, U5PP):
        H = PresentationH(U, generic)
        for a, b in H.pairs():
            for w in H.h(a, b).terms:
                assert lex_key(w) < lex_key((a, b))


def test_c_value_special_cases(generic):
    assert c_value(W("2"), W("1"), U3, generic).terms == {(W("21"),): 1}
    assert not c_value(W("21"), W("1"), U3, generic)
    with pytest.raises(PresentationError):
        c_value(W("1"), W("2"), U3, generic)


def test_g_values_validated(generic):
    bad = {W("211"): SuperWordExpr({(W("2"), W("1"), W("1")): 1})}
    with pytest.raises(PresentationError):
        build_G(U3, generic, bad)
    ok = {W("211"): SuperWordExpr({(W("1"), W("21")): 1})}
    G = build_G(U3, generic, ok)
    assert G[0] == super_letter(W("211"), generic) - super_letter(W("1"), generic) * super_letter(W("21"), generic)


def test_fibonacci_residual_r6():
    H, res = fibonacci_residual(6)
    n = 2
    a = H.X.index(W("22121"))
    b = H.X.index(W("221"))
    f5 = H.X.index(W("22122121"))
    assert res.coeff((a, b)) == parse_scalar("q22^3*q21^2*(1 - q22^6*(q21*q12)^5*q11^4)", n=n)
    c = res.coeff((f5,))
    assert isinstance(c, LaurentScalar) and c.is_unit()
    # J reduced with [x221,x22121] - x22122121 in H
    assert c == -parse_scalar("q22^3*q21^3*q12^2*q11^2", n=n)


def test_fibonacci_failure_reports():
    assert certify(U3, qmat(1, 5, 3, 1), route="thm39").route == "groebner"
    assert fibonacci_failure(5).refuted
    assert fibonacci_failure(6).refuted and fibonacci_failure(7).refuted
    with pytest.raises(ValueError):
        fibonacci_failure(4)


def test_certify_examples():
    c = certify(U3, qmat(1, 5, 3, 1))
    assert c.certified and (c.gldim, c.gorenstein_parameter, c.gkdim) == (3, 4, 3)
    c = certify(U4, qmat(1, F(1, 2), 2, 1))
    assert c.certified and (c.gldim, c.gorenstein_parameter) == (4, 7)
    c = certify(U4, qmat(2, 1, 1, 1))
    assert c.status == "refuted" and c.failures and "triple" in c.failures[0]


def test_certify_errors(generic):
    with pytest.raises(PresentationError):
        certify(U3, generic)
    with pytest.raises(ValueError):
        qmat(0, 1, 1, 1)
    with pytest.raises(PresentationError):
        certify(U3, qmat(1, 1, 1, 1), route="braided", G=[parse_poly("x2x1x1 - x1x2x1", A2)])


def test_braided_route():
    Q = QMatrix.numeric(A2)
    G = [super_letter(W("211"), Q), super_letter(W("221"), Q)]
    c = certify(U3, Q, route="braided", G=G)
    assert c.certified and c.gorenstein_parameter == 4
    Q2 = qmat(1, F(1, 3), 3, 1)
    G2 = [super_letter(W("211"), Q2), super_letter(W("221"), Q2)]
    c2 = certify(U3, Q2, route="braided", G=G2)
    assert c2.certified
    # not Groebner: rejected
    Q3 = qmat(1, 1, 3, 2)
    with pytest.raises(PresentationError):
        certify(U3, Q3, route="braided", G=build_G(U3, Q3))


def test_conditions_u3_and_affine():
    assert extract_conditions(U3).strings() == ["q11 - q22"]
    A3 = Alphabet.uniform(3)
    assert not extract_conditions(ClosedSet.from_words(A3.letters, A3))


def _random_q(rng, ext=False):
    vals = [F(rng.choice([-3, -2, -1, 1, 2, 3, 5]), rng.choice([1, 2, 3, 7])) for _ in range(4)]
    return qmat(*vals)


@pytest.mark.parametrize("U", [U3, U4, U5P, U5PP])
def test_routes_agree_and_conditions_match(U):
    rng = random.Random(7)
    system = extract_conditions(U)
    qs = [_random_q(rng) for _ in range(6)] + [qmat(1, F(1, 2), 2, 1), qmat(3, 1, 1, 3)]
    for Q in qs:
        G = build_G(U, Q)
        grob = is_groebner(G).ok
        H = PresentationH(U, Q)
        jok = not any(r.residual for r in j_residuals(H))
        assert grob == jok
        assignment = dict(Q.entries)
        assert grob == system.satisfied_by(assignment)


@pytest.mark.parametrize("U,Q", [(U3, qmat(1, 5, 3, 1)), (U4, qmat(1, F(1, 2), 2, 1)),
                                 (U5P, qmat(1, F(1, 3), 3, 1)), (U5PP, qmat(1, F(1, 7), 7, 1))])
def test_transfer_and_reducible_letters(U, Q):
    G = build_G(U, Q)
    H = build_H(U, Q)
    cap = 8
    assert irr_counts(G, A2, cap) == irr_counts(H.relations(), H.X.alphabet, cap)
    for v in generate_lyndon(A2, 7):
        if v not in U:
            assert not normal_form(super_letter(v, Q), G)
