"""Randomized property suites (seeded through the hypothesis profile in conftest)."""
import itertools
from fractions import Fraction

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from lyndonreg.chains import is_antichain
from lyndonreg.closedsets import close, phi, psi
from lyndonreg.freealg import NcPoly, is_groebner, irr_counts
from lyndonreg.linalg import rank
from lyndonreg.qcalc import (
    BraidedTensor,
    QMatrix,
    SuperWordExpr,
    bracket,
    coproduct,
    coproduct_word,
    is_primitive,
    monotonic_tuples,
    q_of,
    super_letter,
    super_word,
    to_superword_basis,
)
from lyndonreg.words import (
    Alphabet,
    all_words,
    generate_lyndon,
    is_lyndon,
    lex_compare,
    lex_key,
    lyndon_decomposition,
    shirshov,
)

from conftest import A2

GENERIC = QMatrix.symbolic_generic(A2)
A3 = Alphabet.uniform(3)
LYN2 = generate_lyndon(A2, 6)

words = lambda n, lo, hi: st.lists(st.integers(1, n), min_size=lo, max_size=hi).map(tuple)
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(bool)


def brute_lyndon(u):
    return len(u) > 0 and all(lex_compare(u, u[k:] + u[:k]) > 0 for k in range(1, len(u)))


def brute_decompositions(u):
    """All factorizations of u into lex non-decreasing Lyndon words."""
    if not u:
        return [[]]
    out = []
    for k in range(1, len(u) + 1):
        head = u[:k]
        if brute_lyndon(head):
            for rest in brute_decompositions(u[k:]):
                if not rest or lex_compare(head, rest[0]) <= 0:
                    out.append([head] + rest)
    return out


# ---------------------------------------------------------------- words

@given(st.integers(2, 3).flatmap(lambda n: words(n, 1, 8)))
def test_lyndon_oracle(u):
    assert is_lyndon(u) == brute_lyndon(u)
    if is_lyndon(u):
        assert all(lex_compare(u, u[k:]) > 0 for k in range(1, len(u)))
        assert all(lex_compare(u[:k], u[k:]) > 0 for k in range(1, len(u)))


@given(words(3, 2, 9))
def test_shirshov_oracle(u):
    assume(is_lyndon(u))
    a, b = shirshov(u)
    longest = next(u[k:] for k in range(1, len(u)) if brute_lyndon(u[k:]))
    assert b == longest and a + b == u and brute_lyndon(a)


@given(words(3, 1, 8))
def test_decomposition_oracle(u):
    assert brute_decompositions(u) == [lyndon_decomposition(u)]


# ---------------------------------------------------------------- closed sets

@given(st.lists(st.sampled_from(LYN2[2:]), min_size=0, max_size=3))
def test_psi_phi_identity_on_closed_sets(seed):
    U = close(seed, A2)
    cap = 2 * max(len(u) for u in U) + 1
    assert set(psi(phi(U), A2, cap)) == {u for u in U if len(u) <= cap}


@given(st.lists(st.sampled_from([w for w in generate_lyndon(A2, 6) if len(w) >= 2]), min_size=1, max_size=4))
def test_phi_psi_identity_on_antichains(ws):
    V = set(ws)
    assume(is_antichain(V))
    cap = max(len(v) for v in V)
    U = psi(V, A2, cap)
    assert set(phi(set(U), degree_cap=cap, alphabet=A2)) == V


# ---------------------------------------------------------------- bicharacter and brackets

def W_(u):
    return NcPoly.word(A2, u)


@settings(max_examples=1000)
@given(words(2, 0, 4), words(2, 0, 4), words(2, 0, 4))
def test_bicharacter_and_bracket_identities(u, v, w):
    Q = GENERIC
    assert q_of(u, v + w, Q) == q_of(u, v, Q) * q_of(u, w, Q)
    assert q_of(u + v, w, Q) == q_of(u, w, Q) * q_of(v, w, Q)
    U, V, Wp = W_(u), W_(v), W_(w)
    br = lambda f, g: bracket(f, g, Q)
    assert br(br(U, V), Wp) == br(U, br(V, Wp)) - (V * br(U, Wp)).scale(q_of(u, v, Q)) \
        + (br(U, Wp) * V).scale(q_of(v, w, Q))
    assert br(U * V, Wp) == U * br(V, Wp) + (br(U, Wp) * V).scale(q_of(v, w, Q))
    assert br(U, V * Wp) == br(U, V) * Wp + (V * br(U, Wp)).scale(q_of(u, v, Q))


def test_super_letter_shape():
    for u in generate_lyndon(A2, 8):
        s = super_letter(u, GENERIC)
        assert s.lw() == u and s.is_monic() and s.is_constitute_homogeneous()


# ---------------------------------------------------------------- super-word basis

@st.composite
def polys(draw, degree_max=5):
    d = draw(st.integers(1, degree_max))
    ws = draw(st.lists(st.sampled_from(all_words(A2, d)), min_size=1, max_size=6))
    cs = draw(st.lists(rationals, min_size=len(ws), max_size=len(ws)))
    return NcPoly(A2, dict(zip(ws, cs)))


@st.composite
def superword_exprs(draw):
    d = draw(st.integers(1, 5))
    tups = monotonic_tuples(generate_lyndon(A2, d), d, A2)
    chosen = draw(st.lists(st.sampled_from(tups), min_size=1, max_size=5, unique=True))
    cs = draw(st.lists(rationals, min_size=len(chosen), max_size=len(chosen)))
    return SuperWordExpr(dict(zip(chosen, cs)))


@given(polys())
def test_basis_round_trip_from_poly(f):
    for Q in (GENERIC, QMatrix.numeric(A2, {(2, 1): 3, (1, 2): Fraction(1, 2), (1, 1): -1})):
        e = to_superword_basis(f, Q)
        assert e.is_monotonic()
        assert e.to_poly(Q) == f


@given(superword_exprs())
def test_basis_round_trip_from_superwords(e):
    assert to_superword_basis(e.to_poly(GENERIC), GENERIC) == e


def test_monotonic_order_compatibility():
    top = float("inf")
    key = lambda t: tuple(lex_key(u) for u in t) + ((top,),)
    tups = [t for d in range(1, 6) for t in monotonic_tuples(generate_lyndon(A2, d), d, A2)]
    for s, t in itertools.product(tups, repeat=2):
        by_tuple = (key(s) > key(t)) - (key(s) < key(t))
        assert by_tuple == lex_compare(sum(s, ()), sum(t, ()))


# ---------------------------------------------------------------- Diamond lemma oracle

def quotient_dims(G, cap):
    """dim of k<X>_d / (G)_d by linear algebra on all products a g b."""
    out = []
    for d in range(cap + 1):
        vecs = []
        for g in G:
            gd = A2.degree(g.lw())
            for k in range(0, d - gd + 1):
                for a in all_words(A2, k) if k else [()]:
                    for b in all_words(A2, d - gd - k) if d - gd - k else [()]:
                        vecs.append(g.sandwich(a, b).terms)
        n_words = len(all_words(A2, d)) if d else 1
        out.append(n_words - rank(vecs))
    return out


@st.composite
def relation_sets(draw):
    G = []
    for _ in range(draw(st.integers(1, 2))):
        d = draw(st.integers(2, 3))
        ws = draw(st.lists(st.sampled_from(all_words(A2, d)), min_size=1, max_size=3, unique=True))
        cs = draw(st.lists(st.integers(-2, 2).filter(bool), min_size=len(ws), max_size=len(ws)))
        g = NcPoly(A2, dict(zip(ws, cs)))
        G.append(g.monic())
    return G


@settings(max_examples=50)
@given(relation_sets())
def test_diamond_lemma_against_linear_algebra(G):
    lw_set = {g.lw() for g in G}
    assume(len(lw_set) == len(G))
    cap = 2 * max(A2.degree(w) for w in lw_set)
    grob = is_groebner(G).ok
    agree = irr_counts(G, A2, cap) == quotient_dims(G, cap)
    assert grob == agree


# ---------------------------------------------------------------- coproduct and primitivity

def unit_q(a):
    """q_ij q_ji = 1 with q_ii = 1."""
    return QMatrix(A2, {(1, 1): 1, (2, 2): 1, (1, 2): a, (2, 1): 1 / Fraction(a)})


@settings(max_examples=100)
@given(st.sampled_from([2, 3, Fraction(1, 2), -1, Fraction(-5, 3)]), st.integers(1, 5), st.data())
def test_primitivity_lemma(a, d, data):
    Q = unit_q(a)
    lyn = [u for u in generate_lyndon(A2, d) if len(u) == d]
    cs = data.draw(st.lists(rationals, min_size=len(lyn), max_size=len(lyn)))
    f = NcPoly(A2)
    for u, c in zip(lyn, cs):
        f = f + super_letter(u, Q).scale(c)
    assert is_primitive(f, Q)
    tups = [t for t in monotonic_tuples(generate_lyndon(A2, d), d, A2) if len(t) > 1]
    if tups:
        t = data.draw(st.sampled_from(tups))
        c = data.draw(rationals)
        g = f + super_word(t, Q).scale(c)
        assert not is_primitive(g, Q)
        assert any(len(tt) > 1 for tt in to_superword_basis(g, Q).terms)


def test_primitivity_needs_q_ii_one():
    # with q11 = -1, x1 x1 is primitive but it is not a sum of super-letters
    Q = QMatrix(A2, {(1, 1): -1, (2, 2): 1, (1, 2): 1, (2, 1): 1})
    x1x1 = NcPoly.word(A2, (1, 1))
    assert is_primitive(x1x1, Q)
    assert set(to_superword_basis(x1x1, Q).terms) == {((1,), (1,))}


@given(words(2, 0, 4), words(2, 0, 4))
def test_coproduct_is_algebra_map(u, v):
    Q = GENERIC
    assert coproduct_word(u + v, Q) == coproduct_word(u, Q).mul(coproduct_word(v, Q), Q)


@given(words(2, 0, 5))
def test_coproduct_coassociative(u):
    Q = GENERIC
    left, right = {}, {}
    for (a, b), c in coproduct_word(u, Q).terms.items():
        for (a1, a2), d in coproduct_word(a, Q).terms.items():
            left[(a1, a2, b)] = left.get((a1, a2, b), 0) + c * d
        for (b1, b2), d in coproduct_word(b, Q).terms.items():
            right[(a, b1, b2)] = right.get((a, b1, b2), 0) + c * d
    clean = lambda m: {k: v for k, v in m.items() if v}
    assert clean(left) == clean(right)
