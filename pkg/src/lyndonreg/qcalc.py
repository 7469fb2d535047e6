"""The q-deformed bracket calculus: bicharacter, super-letters, super-words,
braided coproduct and primitivity."""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .freealg import NcPoly, is_groebner, normal_form, Reducer
from .linalg import in_span
from .scalars import ONE, LaurentScalar, as_scalar, needs_parens
from .words import (
    EMPTY,
    Alphabet,
    Word,
    constitute,
    deglex_key,
    format_word,
    generate_lyndon,
    is_lyndon,
    lex_key,
    lyndon_decomposition,
    shirshov,
)


class QMatrix:
    """n x n matrix of nonzero scalars q_ij over a given alphabet.

    Also the home of the per-matrix caches (bicharacter values, super-letter
    expansions, super-word products).  Cache entries are published with a
    single dict assignment under a lock, so concurrent readers see either
    nothing or a finished value.
    """

    def __init__(self, alphabet: Alphabet, entries: Mapping[tuple[int, int], object]):
        n = alphabet.n
        self.alphabet = alphabet
        self.entries: dict[tuple[int, int], object] = {}
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if (i, j) not in entries:
                    raise ValueError(f"missing q{i}{j}")
                c = as_scalar(entries[(i, j)])
                if not c:
                    raise ValueError(f"q{i}{j} must be nonzero")
                self.entries[(i, j)] = c
        self.symbolic = any(isinstance(c, LaurentScalar) for c in self.entries.values())
        self._q_cache: dict = {}
        self._letters: dict[Word, NcPoly] = {}
        self._products: dict[tuple, NcPoly] = {}
        self._lock = threading.Lock()

    @classmethod
    def numeric(cls, alphabet: Alphabet, entries: Mapping[tuple[int, int], object] | None = None,
                default=1) -> "QMatrix":
        n = alphabet.n
        full = {(i, j): default for i in range(1, n + 1) for j in range(1, n + 1)}
        full.update(entries or {})
        return cls(alphabet, full)

    @classmethod
    def symbolic_generic(cls, alphabet: Alphabet) -> "QMatrix":
        n = alphabet.n
        return cls(alphabet, {(i, j): LaurentScalar.symbol(i, j, n)
                              for i in range(1, n + 1) for j in range(1, n + 1)})

    @property
    def n(self) -> int:
        return self.alphabet.n

    def __getitem__(self, ij: tuple[int, int]):
        return self.entries[ij]

    def antisymmetric_unit(self) -> bool:
        """q_ij q_ji = 1 for all i, j."""
        n = self.n
        return all(self.entries[(i, j)] * self.entries[(j, i)] == 1
                   for i in range(1, n + 1) for j in range(1, n + 1))

    def _publish(self, cache: dict, key, value):
        with self._lock:
            cache.setdefault(key, value)
        return cache[key]


# ---------------------------------------------------------------- bicharacter

def q_of(u: Sequence[int], v: Sequence[int], Q: QMatrix):
    """q_{u,v}: product of q_{ij} over letter pairs (x_i in u, x_j in v)."""
    n = Q.n
    cu, cv = constitute(u, n), constitute(v, n)
    key = (cu, cv)
    hit = Q._q_cache.get(key)
    if hit is not None:
        return hit
    if Q.symbolic and all(isinstance(c, LaurentScalar) and c.is_unit() for c in Q.entries.values()):
        exps = [0] * (Q.entries[(1, 1)].n ** 2)
        coeff = ONE
        for i in range(n):
            for j in range(n):
                k = cu[i] * cv[j]
                if k:
                    (e, c), = Q.entries[(i + 1, j + 1)].terms.items()
                    coeff *= c ** k
                    for t, a in enumerate(e):
                        if a:
                            exps[t] += a * k
        val = LaurentScalar(Q.entries[(1, 1)].n, {tuple(exps): coeff})
    else:
        val = ONE
        for i in range(n):
            for j in range(n):
                k = cu[i] * cv[j]
                if k:
                    val = val * Q.entries[(i + 1, j + 1)] ** k
    return Q._publish(Q._q_cache, key, val)


def bracket(f: NcPoly, g: NcPoly, Q: QMatrix) -> NcPoly:
    """[f, g], bilinear in f and g, with [u, v] = uv - q_{u,v} vu on words."""
    t: dict = {}

    def add(w, c):
        s = t[w] + c if w in t else c
        if s:
            t[w] = s
        else:
            t.pop(w, None)

    for u, c in f.terms.items():
        for v, d in g.terms.items():
            cd = c * d
            add(u + v, cd)
            add(v + u, -(cd * q_of(u, v, Q)))
    return NcPoly._raw(f.alphabet, t)


def letter_poly(i: int, alphabet: Alphabet) -> NcPoly:
    return NcPoly.word(alphabet, (i,))


def super_letter(u: Word, Q: QMatrix) -> NcPoly:
    """[u]: x_i for letters, [[u'], [u'']] along the Shirshov factorization."""
    u = tuple(u)
    hit = Q._letters.get(u)
    if hit is not None:
        return hit
    if not is_lyndon(u):
        raise ValueError(f"{format_word(u)} is not a Lyndon word")
    if len(u) == 1:
        val = NcPoly.word(Q.alphabet, u)
    else:
        a, b = shirshov(u)
        val = bracket(super_letter(a, Q), super_letter(b, Q), Q)
    return Q._publish(Q._letters, u, val)


def super_word(tup: Sequence[Word], Q: QMatrix) -> NcPoly:
    """Product [u_1]...[u_r] (1 for the empty tuple)."""
    tup = tuple(tuple(u) for u in tup)
    hit = Q._products.get(tup)
    if hit is not None:
        return hit
    if not tup:
        val = NcPoly.word(Q.alphabet, EMPTY)
    elif len(tup) == 1:
        val = super_letter(tup[0], Q)
    else:
        val = super_word(tup[:-1], Q) * super_letter(tup[-1], Q)
    return Q._publish(Q._products, tup, val)


def is_monotonic(tup: Sequence[Word]) -> bool:
    keys = [lex_key(u) for u in tup]
    return all(a <= b for a, b in zip(keys, keys[1:]))


# ---------------------------------------------------------------- super-words

class SuperWordExpr:
    """Finite combination of super-words, tuple of Lyndon words -> scalar."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, object] | None = None):
        self.terms: dict[tuple, object] = {}
        for tup, c in (terms or {}).items():
            c = as_scalar(c)
            if c:
                self.terms[tuple(tuple(u) for u in tup)] = c

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, SuperWordExpr):
            return self.terms == other.terms
        return NotImplemented

    def add(self, tup: tuple, c) -> None:
        s = self.terms[tup] + c if tup in self.terms else c
        if s:
            self.terms[tup] = s
        else:
            self.terms.pop(tup, None)

    def is_monotonic(self) -> bool:
        return all(is_monotonic(t) for t in self.terms)

    def sorted_tuples(self) -> list[tuple]:
        return sorted(self.terms, key=lambda t: lex_key(sum(t, EMPTY)), reverse=True)

    def to_poly(self, Q: QMatrix) -> NcPoly:
        out = NcPoly(Q.alphabet)
        for tup, c in self.terms.items():
            out = out + super_word(tup, Q).scale(c)
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for tup in self.sorted_tuples():
            c = self.terms[tup]
            body = "".join(f"[{format_word(u)}]" for u in tup) or "1"
            if isinstance(c, Fraction):
                sign = "-" if c < 0 else "+"
                a = abs(c)
                parts.append((sign, body if a == 1 else f"{a}*{body}"))
            else:
                s = str(c)
                sign = "+"
                if needs_parens(c):
                    s = f"({s})"
                elif s.startswith("-"):
                    sign, s = "-", s[1:]
                parts.append((sign, body if s == "1" else f"{s}*{body}"))
        s = " ".join(f"{sg} {b}" for sg, b in parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    __repr__ = __str__


def to_superword_basis(f: NcPoly, Q: QMatrix) -> SuperWordExpr:
    """Expand f in the basis of monotonic super-words.

    Triangular: the monotonic super-word whose leading word is lw(f) is
    given by the Lyndon decomposition of lw(f).
    """
    out = SuperWordExpr()
    rest = dict(f.terms)
    a = f.alphabet
    while rest:
        w = max(rest, key=lambda x: deglex_key(x, a))
        c = rest[w]
        tup = tuple(lyndon_decomposition(w)) if w else ()
        out.add(tup, c)
        for x, d in super_word(tup, Q).terms.items():
            s = rest[x] - c * d if x in rest else -(c * d)
            if s:
                rest[x] = s
            else:
                rest.pop(x, None)
    return out


# ---------------------------------------------------------------- braided tensors

class BraidedTensor:
    """Sum of coeff * (a (x) b) in the braided tensor square of k<X>."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[Word, Word], object] | None = None):
        self.terms: dict[tuple[Word, Word], object] = {}
        for k, c in (terms or {}).items():
            if c:
                self.terms[k] = c

    def _add(self, key, c):
        s = self.terms[key] + c if key in self.terms else c
        if s:
            self.terms[key] = s
        else:
            self.terms.pop(key, None)

    def __add__(self, other: "BraidedTensor") -> "BraidedTensor":
        out = BraidedTensor(self.terms)
        for k, c in other.terms.items():
            out._add(k, c)
        return out

    def __sub__(self, other: "BraidedTensor") -> "BraidedTensor":
        out = BraidedTensor(self.terms)
        for k, c in other.terms.items():
            out._add(k, -c)
        return out

    def mul(self, other: "BraidedTensor", Q: QMatrix) -> "BraidedTensor":
        """(a (x) b)(c (x) d) = q_{b,c} ac (x) bd."""
        out = BraidedTensor()
        for (a, b), x in self.terms.items():
            for (c, d), y in other.terms.items():
                out._add((a + c, b + d), x * y * q_of(b, c, Q))
        return out

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, BraidedTensor) and self.terms == other.terms


def coproduct_word(w: Word, Q: QMatrix) -> BraidedTensor:
    """Delta(w) as the braided product of x_i (x) 1 + 1 (x) x_i over the letters."""
    terms: dict = {(EMPTY, EMPTY): ONE}
    for i in w:
        x = (i,)
        nxt: dict = {}
        for (a, b), c in terms.items():
            for key, val in (((a + x, b), c * q_of(b, x, Q)), ((a, b + x), c)):
                s = nxt[key] + val if key in nxt else val
                if s:
                    nxt[key] = s
                else:
                    nxt.pop(key, None)
        terms = nxt
    return BraidedTensor(terms)


def coproduct(f: NcPoly, Q: QMatrix) -> BraidedTensor:
    out = BraidedTensor()
    for w, c in f.terms.items():
        for k, d in coproduct_word(w, Q).terms.items():
            out._add(k, c * d)
    return out


def is_primitive(f: NcPoly, Q: QMatrix) -> bool:
    """Delta(f) == f (x) 1 + 1 (x) f."""
    delta = coproduct(f, Q)
    for w, c in f.terms.items():
        delta._add((w, EMPTY), -c)
        delta._add((EMPTY, w), -c)
    return not delta


def braiding_stable(G: Sequence[NcPoly], Q: QMatrix) -> bool:
    """Whether c maps kG (x) k<X> + k<X> (x) kG into itself.

    Since q_{w,u} is multiplicative in the letters of u, it suffices that
    every letter twist w -> q_{w,x_j} w and w -> q_{x_j,w} w preserves span(G).
    """
    G = [g for g in G if g]
    span = [g.terms for g in G]
    for g in G:
        for j in range(1, Q.n + 1):
            x = (j,)
            right = {w: c * q_of(w, x, Q) for w, c in g.terms.items()}
            left = {w: c * q_of(x, w, Q) for w, c in g.terms.items()}
            if not in_span(right, span) or not in_span(left, span):
                return False
    return True


# ---------------------------------------------------------------- hardness

def monotonic_tuples(letters: Sequence[Word], degree: int, alphabet: Alphabet) -> list[tuple]:
    """Non-decreasing tuples from ``letters`` (lex ascending) of total degree."""
    letters = sorted(set(letters), key=lex_key)
    degs = [alphabet.degree(u) for u in letters]
    out = []

    def rec(start, remaining, acc):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for k in range(start, len(letters)):
            if degs[k] <= remaining:
                acc.append(letters[k])
                rec(k, remaining - degs[k], acc)
                acc.pop()

    rec(0, degree, [])
    return out


def is_hard(u: Word, G: Sequence[NcPoly], Q: QMatrix, degree_cap: int | None = None,
            check_groebner: bool = True) -> bool | None:
    """Whether [u] is hard modulo G; None when deg(u) exceeds the cap.

    [u] is not hard iff its normal form lies in the span of the normal forms
    of same-degree monotonic super-words in lex-smaller super-letters.
    """
    u = tuple(u)
    alphabet = Q.alphabet
    if not is_lyndon(u):
        raise ValueError(f"{format_word(u)} is not a Lyndon word")
    G = [g for g in G if g]
    if check_groebner and G and not is_groebner(G).ok:
        raise ValueError("is_hard needs a Gröbner set")
    d = alphabet.degree(u)
    if degree_cap is None:
        degree_cap = max([alphabet.degree(g.lw()) for g in G] + [1]) + max(alphabet.weights)
    if d > degree_cap:
        return None
    red = Reducer(G, alphabet) if G else None
    nf = (lambda p: red.reduce(p)) if red else (lambda p: p)
    target = nf(super_letter(u, Q))
    if not target:
        return False
    ku = lex_key(u)
    smaller = [v for v in generate_lyndon(alphabet, d) if lex_key(v) < ku]
    span = [nf(super_word(t, Q)).terms for t in monotonic_tuples(smaller, d, alphabet)]
    return not in_span(target.terms, span)
