"""Antichains, the graph of chains and p-chain enumeration."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .closedsets import ClosedSet, phi, sorted_deglex
from .words import EMPTY, Alphabet, Word, format_word


def is_antichain(V: Iterable[Word]) -> bool:
    """No member is a proper factor of another member."""
    vs = {tuple(v) for v in V}
    for v in vs:
        m = len(v)
        for i in range(m):
            for j in range(i + 1, m + 1):
                if j - i < m and v[i:j] in vs:
                    return False
    return True


def _occurrences(w: Word, V: set[Word], lengths: set[int]) -> list[tuple[int, Word]]:
    out = []
    for L in lengths:
        for i in range(len(w) - L + 1):
            f = w[i:i + L]
            if f in V:
                out.append((i, f))
    return out


@dataclass
class ChainGraph:
    alphabet: Alphabet
    antichain: list[Word]
    vertices: list[Word]
    arrows: dict[Word, list[Word]] = field(default_factory=dict)

    def arrow_pairs(self) -> list[tuple[Word, Word]]:
        return [(a, b) for a in self.vertices for b in self.arrows.get(a, [])]

    def to_json(self) -> dict:
        fw = lambda w: format_word(w, self.alphabet)
        return {
            "vertices": [fw(v) for v in self.vertices],
            "arrows": [[fw(a), fw(b)] for a, b in self.arrow_pairs()],
        }


def chain_graph(V: Iterable[Word], alphabet: Alphabet) -> ChainGraph:
    V = {tuple(v) for v in V}
    if not is_antichain(V):
        raise ValueError("chain_graph needs an antichain")
    letters = [x for x in alphabet.letters if x not in V]
    suffixes = {v[i:] for v in V for i in range(1, len(v)) if len(v) - i >= 2}
    body = sorted_deglex(set(letters) | suffixes, alphabet)
    lengths = {len(v) for v in V}
    arrows: dict[Word, list[Word]] = {EMPTY: list(letters)}
    for a in body:
        out = []
        for b in body:
            w = a + b
            occ = _occurrences(w, V, lengths)
            if len(occ) == 1 and occ[0][0] + len(occ[0][1]) == len(w):
                out.append(b)
        arrows[a] = out
    return ChainGraph(alphabet, sorted_deglex(V, alphabet), [EMPTY] + body, arrows)


def chain_paths(graph: ChainGraph, p: int) -> list[list[Word]]:
    """All vertex sequences v_1..v_p of paths 1 -> v_1 -> ... -> v_p."""
    if p < 0:
        raise ValueError("p must be >= 0")
    if p == 0:
        return [[]]
    paths = [[v] for v in graph.arrows[EMPTY]]
    for _ in range(p - 1):
        paths = [path + [b] for path in paths for b in graph.arrows.get(path[-1], [])]
    return paths


def chains(V: Iterable[Word], alphabet: Alphabet, p: int, graph: ChainGraph | None = None) -> list[Word]:
    """C_p(V), deglex sorted."""
    graph = graph or chain_graph(V, alphabet)
    words = {sum((tuple(v) for v in path), EMPTY) for path in chain_paths(graph, p)}
    return sorted_deglex(words, alphabet)


@dataclass
class ChainUniquenessReport:
    closed_set: list[Word]
    expected: Word
    top_chains: list[Word]
    beyond: dict[int, list[Word]]
    passed: bool


def verify_chain_uniqueness(U: ClosedSet) -> ChainUniquenessReport:
    """Check C_d(phi(U)) = {z_1...z_d} (z's lex-descending) and C_{d+1} = C_{d+2} = {}."""
    alphabet = U.alphabet
    V = phi(U)
    d = len(U)
    expected = sum(U.lex_descending(), EMPTY)
    graph = chain_graph(V, alphabet)
    top = chains(V, alphabet, d, graph)
    beyond = {p: chains(V, alphabet, p, graph) for p in (d + 1, d + 2)}
    passed = top == [expected] and not any(beyond.values())
    return ChainUniquenessReport(U.sorted(), expected, top, beyond, passed)
