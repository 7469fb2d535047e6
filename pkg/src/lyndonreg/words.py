"""Words over a weighted alphabet and Lyndon-word structure.

Words are plain tuples of 1-based letter indices, ``(2, 2, 1)`` being
x2 x2 x1.  The lexicographic order used throughout puts a proper prefix
*above* its extensions, so Lyndon words are the words strictly greater
than all of their proper rotations.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

Word = tuple  # tuple[int, ...]

EMPTY: Word = ()

# Sentinel appended to sort keys; larger than every letter index.
_END = 1 << 62


@dataclass(frozen=True)
class Alphabet:
    """Letters x_1 < ... < x_n with positive degrees.

    ``names`` is optional and only used for rendering/parsing words over
    extended alphabets whose letters are not plain ``x_i``.
    """

    weights: tuple[int, ...]
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        if len(self.weights) < 1:
            raise ValueError("alphabet needs at least one letter")
        if any(int(d) < 1 for d in self.weights):
            raise ValueError(f"letter degrees must be positive, got {self.weights}")
        object.__setattr__(self, "weights", tuple(int(d) for d in self.weights))
        if self.names is not None:
            if len(self.names) != len(self.weights):
                raise ValueError("names and weights differ in length")
            object.__setattr__(self, "names", tuple(self.names))

    @classmethod
    def uniform(cls, n: int) -> "Alphabet":
        return cls((1,) * n)

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def letters(self) -> list[Word]:
        return [(i,) for i in range(1, self.n + 1)]

    def degree(self, w: Sequence[int]) -> int:
        wt = self.weights
        return sum(wt[i - 1] for i in w)

    def letter_name(self, i: int) -> str:
        if self.names is not None:
            return self.names[i - 1]
        return f"x{i}"

    def compact(self) -> bool:
        """True when words render as bare digit strings."""
        return self.names is None and self.n <= 9

    def check(self, w: Sequence[int]) -> Word:
        w = tuple(int(i) for i in w)
        for i in w:
            if not 1 <= i <= self.n:
                raise ValueError(f"letter {i} outside alphabet of size {self.n}")
        return w


# ---------------------------------------------------------------- orders

def lex_key(w: Sequence[int]) -> tuple:
    """Sort key realising the lex order (a proper prefix sorts higher)."""
    return tuple(w) + (_END,)


def deglex_key(w: Sequence[int], alphabet: Alphabet) -> tuple:
    return (alphabet.degree(w), lex_key(w))


def _cmp(a, b) -> int:
    return (a > b) - (a < b)


def lex_compare(u: Sequence[int], v: Sequence[int]) -> int:
    """-1, 0, 1 as u <, =, > v in lex order."""
    return _cmp(lex_key(u), lex_key(v))


def lex_less(u: Sequence[int], v: Sequence[int]) -> bool:
    return lex_key(u) < lex_key(v)


def deglex_compare(u: Sequence[int], v: Sequence[int], alphabet: Alphabet) -> int:
    return _cmp(deglex_key(u, alphabet), deglex_key(v, alphabet))


def constitute(w: Sequence[int], n: int) -> tuple[int, ...]:
    counts = [0] * n
    for i in w:
        counts[i - 1] += 1
    return tuple(counts)


# ---------------------------------------------------------------- factors

def is_factor(v: Sequence[int], u: Sequence[int]) -> bool:
    lv, lu = len(v), len(u)
    if lv > lu:
        return False
    v = tuple(v)
    return any(tuple(u[i:i + lv]) == v for i in range(lu - lv + 1))


def factors(u: Word) -> set[Word]:
    """All non-empty factors of u (including u)."""
    m = len(u)
    return {u[i:j] for i in range(m) for j in range(i + 1, m + 1)}


# ---------------------------------------------------------------- Lyndon

@lru_cache(maxsize=None)
def is_lyndon(u: Word) -> bool:
    """u is non-empty and lex-greater than each proper non-empty suffix."""
    if not u:
        return False
    ku = lex_key(u)
    return all(ku > lex_key(u[i:]) for i in range(1, len(u)))


@lru_cache(maxsize=None)
def shirshov(u: Word) -> tuple[Word, Word]:
    """Shirshov factorization (u', u''): u'' the longest proper Lyndon suffix."""
    u = tuple(u)
    if len(u) < 2 or not is_lyndon(u):
        raise ValueError(f"shirshov needs a Lyndon word of length >= 2, got {u}")
    for i in range(1, len(u)):
        if is_lyndon(u[i:]):
            return u[:i], u[i:]
    raise AssertionError("unreachable: last letter is always Lyndon")


def lyndon_decomposition(u: Word) -> list[Word]:
    """Unique factorization u = w_1...w_r into Lyndon words, w_1 <= ... <= w_r."""
    u = tuple(u)
    if not u:
        raise ValueError("the empty word has no Lyndon decomposition")
    parts: list[Word] = []
    end = len(u)
    while end > 0:
        # the last factor is the longest Lyndon suffix of the remaining prefix
        for i in range(end):
            if is_lyndon(u[i:end]):
                parts.append(u[i:end])
                end = i
                break
    parts.reverse()
    return parts


def lyndon_factors(u: Word) -> set[Word]:
    return {f for f in factors(tuple(u)) if is_lyndon(f)}


def all_words(alphabet: Alphabet, degree: int) -> list[Word]:
    """All words of exactly the given degree."""
    table: list[list[Word]] = [[] for _ in range(degree + 1)]
    table[0].append(EMPTY)
    for d in range(1, degree + 1):
        for i, wt in enumerate(alphabet.weights, start=1):
            if wt <= d:
                table[d].extend(w + (i,) for w in table[d - wt])
    return table[degree]


def generate_lyndon(alphabet: Alphabet, max_degree: int) -> list[Word]:
    """All Lyndon words of degree <= max_degree, deglex sorted.

    Built by concatenating pairs u >_lex v of shorter Lyndon words; every
    Lyndon word of length >= 2 arises from its Shirshov factorization.
    """
    if max_degree < 1:
        raise ValueError("max_degree must be >= 1")
    by_degree: dict[int, set[Word]] = {d: set() for d in range(1, max_degree + 1)}
    for i, wt in enumerate(alphabet.weights, start=1):
        if wt <= max_degree:
            by_degree[wt].add((i,))
    for d in range(2, max_degree + 1):
        for du in range(1, d):
            for u in by_degree[du]:
                ku = lex_key(u)
                for v in by_degree[d - du]:
                    if ku > lex_key(v):
                        by_degree[d].add(u + v)
    out = [w for d in range(1, max_degree + 1) for w in by_degree[d]]
    out.sort(key=lambda w: deglex_key(w, alphabet))
    return out


# ---------------------------------------------------------------- text

def format_word(w: Sequence[int], alphabet: Alphabet | None = None) -> str:
    """Compact digit string ("221") when n <= 9, else "[2,2,1]"; "[]" if empty."""
    if not w:
        return "[]"
    if alphabet is None or alphabet.compact():
        if all(1 <= i <= 9 for i in w):
            return "".join(str(i) for i in w)
    return "[" + ",".join(str(i) for i in w) + "]"


def parse_word(text: str, alphabet: Alphabet | None = None) -> Word:
    """Inverse of :func:`format_word`; "1" is the letter x1, "[]" the empty word."""
    s = text.strip()
    if s.startswith("["):
        if not s.endswith("]"):
            raise ValueError(f"unterminated word {text!r}")
        body = s[1:-1].strip()
        w = tuple(int(t) for t in body.split(",")) if body else EMPTY
    else:
        if not s.isdigit():
            raise ValueError(f"bad word syntax {text!r}")
        w = tuple(int(c) for c in s)
    if alphabet is not None:
        w = alphabet.check(w)
    elif any(i < 1 for i in w):
        raise ValueError(f"letters are 1-based, got {text!r}")
    return w


def format_words(ws: Iterable[Word], alphabet: Alphabet | None = None) -> list[str]:
    return [format_word(w, alphabet) for w in ws]


def sort_deglex(ws: Iterable[Word], alphabet: Alphabet) -> list[Word]:
    return sorted(ws, key=lambda w: deglex_key(w, alphabet))
