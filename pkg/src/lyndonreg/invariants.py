"""Hilbert series, dimensions and the Gorenstein parameter of A = k<X>/(G)."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .closedsets import ClosedSet, close, closed_sets_up_to, phi
from .freealg import NcPoly, irr_counts, obstructions
from .words import Alphabet, Word, format_word, is_lyndon


def hilbert_product(U: Iterable[Word], alphabet: Alphabet, cap: int) -> list[int]:
    """Coefficients of prod_{u in U} (1 - t^deg u)^{-1} through t^cap."""
    coeffs = [1] + [0] * cap
    for u in U:
        d = alphabet.degree(u)
        if d > cap:
            continue
        # multiply by 1/(1 - t^d) in place
        for k in range(d, cap + 1):
            coeffs[k] += coeffs[k - d]
    return coeffs


def hilbert_from_irr(G: Sequence[NcPoly] | Iterable[Word], alphabet: Alphabet, cap: int) -> list[int]:
    """Number of words of each degree avoiding the leading words of G."""
    return irr_counts(G, alphabet, cap)


def gkdim(U: ClosedSet) -> int:
    return len(U)


@dataclass
class GldimInfo:
    value: int | None
    exact: bool
    note: str = ""


def gldim_info(U: ClosedSet | None = None, phi_size: int | None = None) -> GldimInfo:
    """gldim = #U for finite U; otherwise the bound #phi(U) + 1 when phi(U) is finite."""
    if U is not None:
        return GldimInfo(len(U), True)
    if phi_size is not None:
        return GldimInfo(phi_size + 1, False, "upper bound")
    return GldimInfo(None, False, "no bound computed")


def gorenstein_parameter(U: ClosedSet) -> int:
    return U.total_degree()


def fibonacci_number(k: int) -> int:
    """a_0 = a_1 = 1, a_{k+1} = a_k + a_{k-1}."""
    a, b = 1, 1
    for _ in range(k):
        a, b = b, a + b
    return a


def fibonacci_bound(d: int, n: int) -> int:
    """Upper bound a_{d-n+3} + n - 3 for the Gorenstein parameter (unit weights)."""
    if n < 1 or d < n:
        raise ValueError("fibonacci_bound needs d >= n >= 1")
    return fibonacci_number(d - n + 3) + n - 3


def validate_setting(U: ClosedSet, G: Sequence[NcPoly]) -> bool:
    """Phi(U) within lw(G) within (Lyndon words minus U), G homogeneous."""
    G = [g for g in G if g]
    if not all(g.is_homogeneous() for g in G):
        return False
    lws = {g.lw() for g in G}
    if not set(phi(U)) <= lws:
        return False
    return all(is_lyndon(w) and w not in U for w in lws)


@dataclass
class InvariantReport:
    closed_set: list[str]
    obstructions: list[str]
    hilbert: list[int]
    gkdim: int
    gldim: int | None
    gldim_exact: bool
    gorenstein_parameter: int
    fibonacci_bound: int | None
    bound_satisfied: bool | None
    hilbert_from_irr: list[int] | None = None
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return dict(self.__dict__)


def default_cap(U: ClosedSet) -> int:
    bar = phi(U)
    return 2 * max((U.alphabet.degree(v) for v in bar), default=1)


def invariant_report(U: ClosedSet, G: Sequence[NcPoly] | None = None, cap: int | None = None) -> InvariantReport:
    alphabet = U.alphabet
    cap = default_cap(U) if cap is None else cap
    unit = all(d == 1 for d in alphabet.weights)
    l = gorenstein_parameter(U)
    bound = fibonacci_bound(len(U), alphabet.n) if unit else None
    gi = gldim_info(U)
    rep = InvariantReport(
        closed_set=U.strings(),
        obstructions=[format_word(v, alphabet) for v in phi(U)],
        hilbert=hilbert_product(U, alphabet, cap),
        gkdim=gkdim(U),
        gldim=gi.value,
        gldim_exact=gi.exact,
        gorenstein_parameter=l,
        fibonacci_bound=bound,
        bound_satisfied=None if bound is None else l <= bound,
    )
    if not unit:
        rep.notes.append("Fibonacci bound assumes unit weights")
    if G is not None:
        if not validate_setting(U, G):
            rep.notes.append("G does not satisfy phi(U) <= lw(G) <= L minus U")
        rep.hilbert_from_irr = hilbert_from_irr(G, alphabet, cap)
        rep.obstructions = [format_word(v, alphabet) for v in obstructions(G)]
    return rep


def bound_census(alphabet: Alphabet, max_size: int) -> list[tuple[ClosedSet, int, int]]:
    """(U, l, bound) for every closed set with at most max_size elements."""
    out = []
    for U in closed_sets_up_to(alphabet, max_size):
        out.append((U, gorenstein_parameter(U), fibonacci_bound(len(U), alphabet.n)))
    return out
