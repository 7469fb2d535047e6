"""Closed sets of Lyndon words, the maps phi/phibar/psi/upsilon, Fibonacci words."""
from __future__ import annotations

from typing import Iterable

from .words import (
    Alphabet,
    Word,
    deglex_key,
    format_word,
    generate_lyndon,
    is_factor,
    is_lyndon,
    lex_key,
    lyndon_factors,
    shirshov,
)


class ClosedSet(frozenset):
    """A frozenset of Lyndon words that contains X and is factor-closed.

    Construct through :func:`close` or :meth:`from_words`; the alphabet is
    carried along for degrees and rendering.
    """

    alphabet: Alphabet

    def __new__(cls, words: Iterable[Word], alphabet: Alphabet):
        self = super().__new__(cls, (tuple(w) for w in words))
        self.alphabet = alphabet
        return self

    def __reduce__(self):
        return (ClosedSet, (frozenset(self), self.alphabet))

    @classmethod
    def from_words(cls, words: Iterable[Word], alphabet: Alphabet) -> "ClosedSet":
        ws = [alphabet.check(w) for w in words]
        if not is_closed(ws, alphabet):
            raise ValueError("word set is not closed: " + ", ".join(
                format_word(w, alphabet) for w in sorted_deglex(ws, alphabet)))
        return cls(ws, alphabet)

    def sorted(self) -> list[Word]:
        return sorted_deglex(self, self.alphabet)

    def lex_descending(self) -> list[Word]:
        return sorted(self, key=lex_key, reverse=True)

    def strings(self) -> list[str]:
        return [format_word(w, self.alphabet) for w in self.sorted()]

    def total_degree(self) -> int:
        return sum(self.alphabet.degree(w) for w in self)

    def __repr__(self):
        return "ClosedSet({" + ", ".join(self.strings()) + "})"


def sorted_deglex(ws: Iterable[Word], alphabet: Alphabet) -> list[Word]:
    return sorted(ws, key=lambda w: deglex_key(w, alphabet))


def _require_lyndon(ws: Iterable[Word]) -> None:
    for w in ws:
        if not is_lyndon(tuple(w)):
            raise ValueError(f"{format_word(w)} is not a Lyndon word")


def is_closed(ws: Iterable[Word], alphabet: Alphabet) -> bool:
    s = {tuple(w) for w in ws}
    _require_lyndon(s)
    if any(x not in s for x in alphabet.letters):
        return False
    return all(lyndon_factors(w) <= s for w in s)


def close(seed: Iterable[Word], alphabet: Alphabet) -> ClosedSet:
    """Smallest closed set containing ``seed``."""
    s = {alphabet.check(w) for w in seed}
    _require_lyndon(s)
    out = set(alphabet.letters)
    for w in s:
        out |= lyndon_factors(w)
    return ClosedSet(out, alphabet)


def _candidates(U: ClosedSet) -> set[Word]:
    """{uv : u >_lex v in U} minus U; contains phibar(U) for finite U."""
    ws = list(U)
    keys = {w: lex_key(w) for w in ws}
    return {u + v for u in ws for v in ws if keys[u] > keys[v]} - set(U)


def _proper_lyndon_factors_in(v: Word, U) -> bool:
    return all(f in U for f in lyndon_factors(v) if f != v)


def _capped_complement(U, alphabet: Alphabet, degree_cap: int) -> list[Word]:
    return [v for v in generate_lyndon(alphabet, degree_cap) if v not in U]


def phi(U, degree_cap: int | None = None, alphabet: Alphabet | None = None) -> list[Word]:
    """Minimal Lyndon non-members of U, deglex sorted.

    For a finite closed set no cap is needed.  With ``degree_cap`` the set
    U is read as "U truncated at that degree" and the search runs over all
    Lyndon words up to the cap.
    """
    alphabet = alphabet or U.alphabet
    if degree_cap is None:
        cands = _candidates(U)
    else:
        cands = _capped_complement(U, alphabet, degree_cap)
    out = [v for v in cands if _proper_lyndon_factors_in(v, U)]
    return sorted_deglex(out, alphabet)


def phibar(U, degree_cap: int | None = None, alphabet: Alphabet | None = None) -> list[Word]:
    """Lyndon non-members of U whose Shirshov factors both lie in U."""
    alphabet = alphabet or U.alphabet
    if degree_cap is None:
        cands = _candidates(U)
    else:
        cands = _capped_complement(U, alphabet, degree_cap)
    out = []
    for v in cands:
        if len(v) < 2:
            continue
        a, b = shirshov(v)
        if a in U and b in U:
            out.append(v)
    return sorted_deglex(out, alphabet)


def psi(V: Iterable[Word], alphabet: Alphabet, degree_cap: int) -> list[Word]:
    """Lyndon words of degree <= degree_cap having no factor in V."""
    V = [tuple(v) for v in V]
    if any(len(v) == 1 for v in V):
        raise ValueError("psi is defined on sets without letters")
    return [w for w in generate_lyndon(alphabet, degree_cap)
            if not any(is_factor(v, w) for v in V)]


def upsilon(U: ClosedSet) -> list[tuple[Word, Word]]:
    """Lex-adjacent pairs (u, v), u >_lex v, listed from the top of U down."""
    desc = U.lex_descending()
    return list(zip(desc, desc[1:]))


# ---------------------------------------------------------------- Fibonacci

def fibonacci_words(count: int) -> list[Word]:
    """f_0 = x1, f_1 = x2, f_{2r} = f_{2r-1} f_{2r-2}, f_{2r+1} = f_{2r-1} f_{2r}."""
    f: list[Word] = [(1,), (2,)]
    while len(f) < count:
        m = len(f)
        if m % 2 == 0:
            f.append(f[m - 1] + f[m - 2])
        else:
            f.append(f[m - 2] + f[m - 1])
    return f[:count]


def fibonacci_closed(p: int) -> ClosedSet:
    """U_p = {f_0, ..., f_{p-1}} over two letters of degree one."""
    if p < 2:
        raise ValueError("fibonacci_closed needs p >= 2")
    return ClosedSet.from_words(fibonacci_words(p), Alphabet.uniform(2))


def fibonacci_phi_formula(p: int) -> set[Word]:
    """Closed form of phi(U_p): f_{2r-1}f_{2r+1}, f_{2r}f_{2r-2} (indices < p) and f_p."""
    f = fibonacci_words(p + 2)
    out = {f[p]}
    r = 1
    while 2 * r < p:
        out.add(f[2 * r] + f[2 * r - 2])
        if 2 * r + 1 < p:
            out.add(f[2 * r - 1] + f[2 * r + 1])
        r += 1
    return out


def closed_sets_up_to(alphabet: Alphabet, max_size: int) -> list[ClosedSet]:
    """Every finite closed set with at most ``max_size`` elements.

    Each closed set U other than X is reached from a smaller closed set by
    closing it with one extra Lyndon word taken from phi of the smaller one.
    """
    start = close([], alphabet)
    if len(start) > max_size:
        return []
    seen = {frozenset(start)}
    frontier = [start]
    out = [start]
    while frontier:
        nxt = []
        for U in frontier:
            if len(U) >= max_size:
                continue
            for v in phi(U):
                W = close(set(U) | {v}, alphabet)
                key = frozenset(W)
                if len(W) <= max_size and key not in seen:
                    seen.add(key)
                    nxt.append(W)
                    out.append(W)
        frontier = nxt
    out.sort(key=lambda U: (len(U), [deglex_key(w, alphabet) for w in U.sorted()]))
    return out
