"""Noncommutative polynomials with deglex leading words, reduction and Gröbner checks."""
from __future__ import annotations

import heapq
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .scalars import ONE, as_scalar, needs_parens, parse_scalar
from .words import EMPTY, Alphabet, Word, _END, constitute, deglex_key, format_word


class NcPoly:
    """Finite map word -> nonzero scalar over a fixed alphabet."""

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet: Alphabet, terms: Mapping[Word, object] | None = None):
        self.alphabet = alphabet
        self.terms: dict[Word, object] = {}
        if terms:
            for w, c in terms.items():
                c = as_scalar(c)
                if c:
                    self.terms[tuple(w)] = c

    @classmethod
    def word(cls, alphabet: Alphabet, w: Sequence[int], coeff=ONE) -> "NcPoly":
        return cls(alphabet, {tuple(w): coeff})

    @classmethod
    def zero(cls, alphabet: Alphabet) -> "NcPoly":
        return cls(alphabet)

    @classmethod
    def _raw(cls, alphabet: Alphabet, terms: dict) -> "NcPoly":
        p = cls.__new__(cls)
        p.alphabet = alphabet
        p.terms = terms
        return p

    # ---- structure

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, NcPoly):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms))

    def sorted_words(self) -> list[Word]:
        a = self.alphabet
        return sorted(self.terms, key=lambda w: deglex_key(w, a), reverse=True)

    def lw(self) -> Word:
        if not self.terms:
            raise ValueError("zero polynomial has no leading word")
        a = self.alphabet
        return max(self.terms, key=lambda w: deglex_key(w, a))

    def lc(self):
        return self.terms[self.lw()]

    def coeff(self, w: Sequence[int]):
        return self.terms.get(tuple(w), Fraction(0))

    def is_monic(self) -> bool:
        return bool(self.terms) and self.lc() == 1

    def monic(self) -> "NcPoly":
        return self * (1 / self.lc())

    def degrees(self) -> set[int]:
        return {self.alphabet.degree(w) for w in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def is_constitute_homogeneous(self) -> bool:
        n = self.alphabet.n
        return len({constitute(w, n) for w in self.terms}) <= 1

    # ---- arithmetic

    def _same(self, other: "NcPoly"):
        if other.alphabet != self.alphabet:
            raise ValueError("polynomials over different alphabets")

    def __add__(self, other):
        if not isinstance(other, NcPoly):
            return NotImplemented
        self._same(other)
        t = dict(self.terms)
        for w, c in other.terms.items():
            s = t[w] + c if w in t else c
            if s:
                t[w] = s
            else:
                t.pop(w, None)
        return NcPoly._raw(self.alphabet, t)

    def __neg__(self):
        return NcPoly._raw(self.alphabet, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, NcPoly):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "NcPoly":
        c = as_scalar(c)
        if not c:
            return NcPoly(self.alphabet)
        t = {}
        for w, d in self.terms.items():
            e = d * c
            if e:
                t[w] = e
        return NcPoly._raw(self.alphabet, t)

    def __mul__(self, other):
        if isinstance(other, NcPoly):
            self._same(other)
            t: dict = {}
            for u, c in self.terms.items():
                for v, d in other.terms.items():
                    w = u + v
                    e = c * d
                    if w in t:
                        s = t[w] + e
                        if s:
                            t[w] = s
                        else:
                            del t[w]
                    elif e:
                        t[w] = e
            return NcPoly._raw(self.alphabet, t)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def sandwich(self, left: Word, right: Word, coeff=ONE) -> "NcPoly":
        """coeff * left * self * right for words left, right."""
        coeff = as_scalar(coeff)
        return NcPoly._raw(self.alphabet, {left + w + right: c * coeff
                                           for w, c in self.terms.items() if c * coeff})

    def map_coefficients(self, fn: Callable) -> "NcPoly":
        return NcPoly(self.alphabet, {w: fn(c) for w, c in self.terms.items()})

    # ---- text

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"NcPoly({self})"


# ---------------------------------------------------------------- text

def format_letters(w: Word, alphabet: Alphabet) -> str:
    if alphabet.compact():
        return "".join(f"x{i}" for i in w)
    return "*".join(alphabet.letter_name(i) for i in w)


def format_term(c, w: Word, alphabet: Alphabet) -> tuple[str, str]:
    """(sign, body) for one term."""
    letters = format_letters(w, alphabet) if w else ""
    if isinstance(c, Fraction):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not letters:
            return sign, str(a)
        return sign, letters if a == 1 else f"{a}*{letters}"
    s = str(c)
    if not needs_parens(c) and s.startswith("-"):
        sign, s = "-", s[1:]
    else:
        sign = "+"
    if needs_parens(c):
        s = f"({s})"
    if not letters:
        return sign, s
    return sign, letters if s == "1" else f"{s}*{letters}"


def format_poly(p: NcPoly) -> str:
    if not p.terms:
        return "0"
    parts = [format_term(p.terms[w], w, p.alphabet) for w in p.sorted_words()]
    s = " ".join(f"{sg} {b}" for sg, b in parts)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]


def _split_top(text: str, seps: str) -> list[str]:
    """Split at separators outside parentheses; '+'/'-' keep their sign."""
    out, depth, cur = [], 0, ""
    prev = ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in seps:
            if ch in "+-":
                # unary sign, or the sign of an exponent such as ^-1
                if cur.strip() == "" or prev in "^*/(":
                    cur += ch
                    prev = ch
                    continue
                out.append(cur)
                cur = ch
            else:
                out.append(cur)
                cur = ""
        else:
            cur += ch
        if not ch.isspace():
            prev = ch
    out.append(cur)
    return [s.strip() for s in out if s.strip()]


def _parse_letters(tok: str, alphabet: Alphabet) -> Word | None:
    if alphabet.compact():
        if re.fullmatch(r"(x\d)+", tok):
            return alphabet.check(int(d) for d in tok[1::2])
        return None
    if alphabet.names is not None:
        if tok in alphabet.names:
            return (alphabet.names.index(tok) + 1,)
        return None
    m = re.fullmatch(r"x(\d+)", tok)
    return alphabet.check((int(m.group(1)),)) if m else None


def parse_poly(text: str, alphabet: Alphabet, n: int | None = None, extension=None) -> NcPoly:
    """Parse sums of "coef*word" terms, e.g. "x2x1x1 - 2*x1x2x1 + x1x1x2"."""
    total = NcPoly(alphabet)
    for term in _split_top(text.replace(" ", ""), "+-"):
        sign = 1
        while term[:1] in "+-" and term:
            if term[0] == "-":
                sign = -sign
            term = term[1:]
        factors = _split_top(term, "*")
        word: list[int] = []
        while factors:
            w = _parse_letters(factors[-1], alphabet)
            if w is None:
                break
            word[:0] = w
            factors.pop()
        coeff = parse_scalar("*".join(factors), n=n, extension=extension) if factors else ONE
        total = total + NcPoly.word(alphabet, tuple(word), coeff * sign)
    return total


# ---------------------------------------------------------------- reduction

def _max_key(w: Word, weights: tuple) -> tuple:
    """Heap key: smaller key = deglex-larger word."""
    return (-sum(weights[i - 1] for i in w), tuple(-i for i in w) + (-_END,))


@dataclass
class _Rule:
    index: int
    lw: Word
    tail: list  # [(word, coeff)] with lw == sum(coeff * word) modulo the relation


def _rule(index: int, g: NcPoly) -> _Rule:
    lw = g.lw()
    inv = 1 / g.terms[lw]
    tail = [(w, -c * inv) for w, c in g.terms.items() if w != lw]
    return _Rule(index, lw, tail)


class Reducer:
    """Reduces polynomials modulo a relation list.

    Strategy: always rewrite the deglex-largest reducible word, at the
    leftmost occurrence of a leading word, using the earliest-listed
    relation with that leading word.
    """

    def __init__(self, relations: Sequence[NcPoly], alphabet: Alphabet | None = None):
        self.relations = [g for g in relations if g]
        if alphabet is None:
            if not self.relations:
                raise ValueError("alphabet required for an empty relation list")
            alphabet = self.relations[0].alphabet
        self.alphabet = alphabet
        self.rules: dict[Word, _Rule] = {}
        for k, g in enumerate(self.relations):
            r = _rule(k, g)
            self.rules.setdefault(r.lw, r)
        self.lengths = sorted({len(w) for w in self.rules})

    def lookup(self, factor: Word) -> _Rule | None:
        return self.rules.get(factor)

    def find(self, w: Word) -> tuple[int, _Rule] | None:
        m = len(w)
        for i in range(m):
            best = None
            for L in self.lengths:
                if i + L > m:
                    break
                r = self.lookup(w[i:i + L])
                if r is not None and (best is None or r.index < best.index):
                    best = r
            if best is not None:
                return i, best
        return None

    def is_reducible(self, w: Word) -> bool:
        return self.find(w) is not None

    def reduce(self, f: NcPoly) -> NcPoly:
        weights = self.alphabet.weights
        work = dict(f.terms)
        heap = [(_max_key(w, weights), w) for w in work]
        heapq.heapify(heap)
        result = {}
        while heap:
            _, w = heapq.heappop(heap)
            c = work.pop(w)
            if not c:
                continue
            hit = self.find(w)
            if hit is None:
                result[w] = c
                continue
            pos, rule = hit
            a, b = w[:pos], w[pos + len(rule.lw):]
            for t, d in rule.tail:
                x = a + t + b
                e = c * d
                if x in work:
                    work[x] = work[x] + e
                else:
                    work[x] = e
                    heapq.heappush(heap, (_max_key(x, weights), x))
        return NcPoly._raw(f.alphabet, result)


def normal_form(f: NcPoly, G: Sequence[NcPoly] | Reducer) -> NcPoly:
    red = G if isinstance(G, Reducer) else Reducer(G, f.alphabet)
    return red.reduce(f)


# ---------------------------------------------------------------- ambiguities

@dataclass(frozen=True)
class Ambiguity:
    i: int
    j: int
    l1: Word
    r1: Word
    l2: Word
    r2: Word
    kind: str  # "inclusion" | "overlap"

    def word(self, u1: Word) -> Word:
        return self.l1 + u1 + self.r1

    def to_json(self, alphabet: Alphabet | None = None) -> dict:
        fw = lambda w: format_word(w, alphabet)
        return {"relations": [self.i, self.j], "kind": self.kind,
                "l1": fw(self.l1), "r1": fw(self.r1), "l2": fw(self.l2), "r2": fw(self.r2)}


def word_ambiguities(u1: Word, u2: Word, i: int = 0, j: int = 0) -> list[Ambiguity]:
    """Ambiguities (l1, r1, l2, r2) of the pair of words (u1, u2)."""
    out = []
    same = i == j
    L1, L2 = len(u1), len(u2)
    # inclusion: u1 = l2 u2 r2
    if L2 <= L1 and not (same and u1 == u2):
        if not (u1 == u2 and i > j):
            for p in range(L1 - L2 + 1):
                if u1[p:p + L2] == u2:
                    out.append(Ambiguity(i, j, EMPTY, EMPTY, u1[:p], u1[p + L2:], "inclusion"))
    # overlap: u1 r1 = l2 u2, suffix of u1 of length k = prefix of u2
    for k in range(1, min(L1, L2)):
        if u1[L1 - k:] == u2[:k]:
            out.append(Ambiguity(i, j, EMPTY, u2[k:], u1[:L1 - k], EMPTY, "overlap"))
    return out


def ambiguities(G: Sequence[NcPoly]) -> list[Ambiguity]:
    lws = [g.lw() for g in G]
    out = []
    for i, u1 in enumerate(lws):
        for j, u2 in enumerate(lws):
            out.extend(word_ambiguities(u1, u2, i, j))
    return out


def composition(f1: NcPoly, f2: NcPoly, amb: Ambiguity) -> NcPoly:
    return (f1.sandwich(amb.l1, amb.r1, 1 / f1.lc())
            - f2.sandwich(amb.l2, amb.r2, 1 / f2.lc()))


@dataclass
class GroebnerReport:
    status: str  # "groebner" | "not_groebner" | "bounded_pass"
    compositions_checked: int
    failures: list[tuple[Ambiguity, NcPoly]] = field(default_factory=list)
    degree_bound: int | None = None

    @property
    def ok(self) -> bool:
        return self.status != "not_groebner"

    def to_json(self) -> dict:
        out = {"status": self.status, "compositions_checked": self.compositions_checked,
               "degree_bound": self.degree_bound, "failures": []}
        for amb, res in self.failures:
            d = amb.to_json(res.alphabet)
            d["residual"] = str(res)
            out["failures"].append(d)
        return out


def _map(fn, items, threads: int):
    if threads > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            return list(ex.map(fn, items))
    return [fn(x) for x in items]


def is_groebner(G: Sequence[NcPoly], reduce: bool = False, degree_bound: int | None = None,
                stop_at_first: bool = False, threads: int = 1) -> GroebnerReport:
    """Check that every composition of G reduces to zero modulo G.

    By default G is checked as given; ``reduce=True`` inter-reduces first,
    which checks the reduced generating set of the same ideal instead.
    """
    G = [g for g in G if g]
    if reduce:
        G = reduce_set(G)
    if not G:
        return GroebnerReport("groebner", 0, [], degree_bound)
    alphabet = G[0].alphabet
    red = Reducer(G, alphabet)
    ambs = ambiguities(G)
    skipped = False
    if degree_bound is not None:
        keep = [a for a in ambs if alphabet.degree(a.word(G[a.i].lw())) <= degree_bound]
        skipped = len(keep) < len(ambs)
        ambs = keep

    def check(amb):
        return red.reduce(composition(G[amb.i], G[amb.j], amb))

    failures = []
    checked = 0
    if stop_at_first:
        for amb in ambs:
            checked += 1
            r = check(amb)
            if r:
                failures.append((amb, r))
                break
    else:
        for amb, r in zip(ambs, _map(check, ambs, threads)):
            checked += 1
            if r:
                failures.append((amb, r))
    if failures:
        status = "not_groebner"
    elif degree_bound is not None:
        status = "bounded_pass" if skipped else "groebner"
    else:
        status = "groebner"
    return GroebnerReport(status, checked, failures, degree_bound)


def _sort_relations(G: Iterable[NcPoly]) -> list[NcPoly]:
    G = list(G)
    if not G:
        return G
    a = G[0].alphabet
    return sorted(G, key=lambda g: [deglex_key(w, a) for w in g.sorted_words()])


def reduce_set(G: Sequence[NcPoly]) -> list[NcPoly]:
    """Inter-reduce to the reduced set generating the same ideal."""
    cur = []
    seen = set()
    for g in G:
        if g:
            m = g.monic()
            key = frozenset(m.terms.items())
            if key not in seen:
                seen.add(key)
                cur.append(m)
    changed = True
    while changed:
        changed = False
        cur = _sort_relations(cur)
        for k in range(len(cur)):
            g = cur[k]
            if g is None:
                continue
            others = [h for h in cur if h is not None and h is not g]
            if not others:
                continue
            r = normal_form(g, Reducer(others, g.alphabet))
            if r != g:
                changed = True
                cur[k] = r.monic() if r else None
        cur = [g for g in cur if g is not None]
        # drop duplicates produced by reduction
        uniq, keys = [], set()
        for g in cur:
            key = frozenset(g.terms.items())
            if key not in keys:
                keys.add(key)
                uniq.append(g)
        cur = uniq
    return _sort_relations(cur)


def complete(G: Sequence[NcPoly], degree_bound: int) -> list[NcPoly]:
    """Buchberger-style completion of a homogeneous set, truncated at a degree."""
    G = [g for g in G if g]
    if not G:
        return []
    if not all(g.is_homogeneous() for g in G):
        raise ValueError("complete() needs homogeneous relations")
    alphabet = G[0].alphabet
    G = reduce_set(G)
    while True:
        red = Reducer(G, alphabet)
        new = []
        for amb in ambiguities(G):
            if alphabet.degree(amb.word(G[amb.i].lw())) > degree_bound:
                continue
            r = red.reduce(composition(G[amb.i], G[amb.j], amb))
            if r:
                new.append(r.monic())
        if not new:
            return G
        G = reduce_set(G + new)


def is_reduced(G: Sequence[NcPoly]) -> bool:
    if any(not g or not g.is_monic() for g in G):
        return False
    for k, g in enumerate(G):
        others = [h for m, h in enumerate(G) if m != k]
        if not others:
            continue
        red = Reducer(others, g.alphabet)
        if any(red.is_reducible(w) for w in g.terms):
            return False
    return True


# ---------------------------------------------------------------- Irr

def obstructions(G: Sequence[NcPoly] | Iterable[Word]) -> list[Word]:
    """Minimal leading words under the factor order."""
    lws = set()
    alphabet = None
    for g in G:
        if isinstance(g, NcPoly):
            if g:
                lws.add(g.lw())
                alphabet = g.alphabet
        else:
            lws.add(tuple(g))
    out = []
    for u in lws:
        m = len(u)
        if not any(u[i:j] in lws for i in range(m) for j in range(i + 1, m + 1) if j - i < m):
            out.append(u)
    if alphabet is not None:
        return sorted(out, key=lambda w: deglex_key(w, alphabet))
    return sorted(out, key=lambda w: (len(w), w))


def irr_words(lws: Iterable[Word] | Sequence[NcPoly], alphabet: Alphabet, degree_cap: int) -> dict[int, list[Word]]:
    """Words with no factor among the given leading words, graded by degree."""
    words = set()
    for g in lws:
        words.add(g.lw() if isinstance(g, NcPoly) else tuple(g))
    lengths = sorted({len(w) for w in words})
    levels: dict[int, list[Word]] = {0: [EMPTY] if EMPTY not in words else []}
    for d in range(1, degree_cap + 1):
        level = []
        for i, wt in enumerate(alphabet.weights, start=1):
            if wt > d:
                continue
            for w in levels[d - wt]:
                x = w + (i,)
                m = len(x)
                if not any(L <= m and x[m - L:] in words for L in lengths):
                    level.append(x)
        level.sort(key=lambda w: deglex_key(w, alphabet))
        levels[d] = level
    return levels


def irr_counts(lws, alphabet: Alphabet, degree_cap: int) -> list[int]:
    levels = irr_words(lws, alphabet, degree_cap)
    return [len(levels[d]) for d in range(degree_cap + 1)]
