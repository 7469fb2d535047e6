"""The algebras A(U,q): relations G(U,q), the presentation H on the extended
alphabet X_U, the compositions J(u,v,w), certification and condition
extraction."""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .closedsets import ClosedSet, fibonacci_closed, fibonacci_words, is_closed, phi, phibar
from .freealg import GroebnerReport, NcPoly, Reducer, _Rule, is_groebner, _map
from .linalg import in_span
from .qcalc import (
    QMatrix,
    SuperWordExpr,
    braiding_stable,
    bracket,
    is_primitive,
    q_of,
    super_letter,
    super_word,
    to_superword_basis,
)
from .scalars import ONE, LaurentScalar, evaluate, normalize_condition, scalar_str
from .words import (
    EMPTY,
    Alphabet,
    Word,
    format_word,
    is_lyndon,
    lex_key,
    shirshov,
)


class PresentationError(ValueError):
    pass


# ---------------------------------------------------------------- X_U

@dataclass(frozen=True)
class ExtendedAlphabet:
    """X_U: one letter per u in U, numbered in ascending lex order of U."""

    base: Alphabet
    words: tuple[Word, ...]
    alphabet: Alphabet

    @classmethod
    def of(cls, U: ClosedSet) -> "ExtendedAlphabet":
        base = U.alphabet
        words = tuple(sorted(U, key=lex_key))
        names = tuple("x" + format_word(u, base) if base.compact()
                      else "x{" + format_word(u, base) + "}" for u in words)
        return cls(base, words, Alphabet(tuple(base.degree(u) for u in words), names))

    def index(self, u: Word) -> int:
        return self.words.index(tuple(u)) + 1

    def letter(self, u: Word) -> Word:
        return (self.index(u),)

    def underlying(self, w: Word) -> Word:
        """rho^{-1}: the X-word obtained by concatenating underlying words."""
        return sum((self.words[i - 1] for i in w), EMPTY)

    def extend_q(self, Q: QMatrix) -> QMatrix:
        m = len(self.words)
        return QMatrix(self.alphabet, {(a, b): q_of(self.words[a - 1], self.words[b - 1], Q)
                                       for a in range(1, m + 1) for b in range(1, m + 1)})


# ---------------------------------------------------------------- G(U,q)

def _as_closed(U) -> ClosedSet:
    if not isinstance(U, ClosedSet):
        raise TypeError("expected a ClosedSet")
    if not is_closed(U, U.alphabet):
        raise PresentationError("U is not closed")
    return U


def validate_g_values(U: ClosedSet, g: Mapping[Word, SuperWordExpr]) -> None:
    bar = set(phibar(U))
    alphabet = U.alphabet
    for v, expr in g.items():
        if v not in bar:
            raise PresentationError(f"g_{format_word(v, alphabet)}: {format_word(v, alphabet)} is not in phibar(U)")
        d = alphabet.degree(v)
        for tup in expr.terms:
            if any(u not in U for u in tup):
                raise PresentationError(f"g_{format_word(v, alphabet)} uses a super-letter outside U")
            if sum(alphabet.degree(u) for u in tup) != d:
                raise PresentationError(f"g_{format_word(v, alphabet)} is not homogeneous of degree {d}")
            if not lex_key(sum(tup, EMPTY)) < lex_key(v):
                raise PresentationError(f"g_{format_word(v, alphabet)} has a super-word not below [{format_word(v, alphabet)}]")


def build_G(U: ClosedSet, Q: QMatrix, g: Mapping[Word, SuperWordExpr] | None = None) -> list[NcPoly]:
    """{[v] - g_v : v in phibar(U)}, deglex sorted by leading word."""
    U = _as_closed(U)
    g = g or {}
    validate_g_values(U, g)
    out = []
    for v in phibar(U):
        rel = super_letter(v, Q)
        if v in g:
            rel = rel - g[v].to_poly(Q)
        out.append(rel)
    return out


# ---------------------------------------------------------------- c and h

class _Context:
    """Per-(U, q, g) memo for the rewriting of super-letters modulo (G)."""

    def __init__(self, U: ClosedSet, Q: QMatrix, g: Mapping[Word, SuperWordExpr] | None):
        self.U = U
        self.Q = Q
        self.g = dict(g or {})
        validate_g_values(U, self.g)
        self.bar = set(phibar(U))
        self.letters: dict[Word, SuperWordExpr] = {}
        self.lock = threading.Lock()

    def letter(self, v: Word) -> SuperWordExpr:
        """[v] rewritten as a combination of super-words over U."""
        hit = self.letters.get(v)
        if hit is not None:
            return hit
        if v in self.U:
            val = SuperWordExpr({(v,): ONE})
        elif v in self.bar:
            val = SuperWordExpr(self.g.get(v, SuperWordExpr()).terms)
        else:
            a, b = shirshov(v)
            A = self.letter(a).to_poly(self.Q)
            B = self.letter(b).to_poly(self.Q)
            val = self.reduce(to_superword_basis(bracket(A, B, self.Q), self.Q), bound=v)
        with self.lock:
            self.letters.setdefault(v, val)
        return self.letters[v]

    def reduce(self, expr: SuperWordExpr, bound: Word | None = None, limit: int = 100000) -> SuperWordExpr:
        """Rewrite until every tuple is over U."""
        out = SuperWordExpr()
        work = dict(expr.terms)
        steps = 0
        while work:
            steps += 1
            assert steps < limit, "super-letter rewriting did not terminate"
            tup = max(work, key=lambda t: lex_key(sum(t, EMPTY)))
            c = work.pop(tup)
            k = next((i for i, u in enumerate(tup) if u not in self.U), None)
            if k is None:
                out.add(tup, c)
                continue
            v = tup[k]
            if bound is not None and v == bound:
                raise AssertionError("rewriting revisited the word being rewritten")
            mid = self.letter(v)
            if not mid:
                continue
            poly = super_word(tup[:k], self.Q) * mid.to_poly(self.Q) * super_word(tup[k + 1:], self.Q)
            for t, d in to_superword_basis(poly, self.Q).terms.items():
                s = work[t] + c * d if t in work else c * d
                if s:
                    work[t] = s
                else:
                    work.pop(t, None)
        return out


def _context(U, Q, g, ctx: _Context | None) -> _Context:
    if ctx is not None:
        return ctx
    return _Context(_as_closed(U), Q, g)


def c_value(u: Word, u2: Word, U: ClosedSet, Q: QMatrix,
            g: Mapping[Word, SuperWordExpr] | None = None, ctx: _Context | None = None) -> SuperWordExpr:
    """c_(u|u'): [[u],[u']] modulo (G) in the monotonic super-words over U."""
    ctx = _context(U, Q, g, ctx)
    u, u2 = tuple(u), tuple(u2)
    if u not in ctx.U or u2 not in ctx.U or not lex_key(u) > lex_key(u2):
        raise PresentationError("c_value needs u >_lex u' in U")
    w = u + u2
    if is_lyndon(w) and shirshov(w) == (u, u2):
        # [[u],[u']] is the super-letter [uu']
        return ctx.letter(w)
    expr = to_superword_basis(bracket(super_letter(u, Q), super_letter(u2, Q), Q), Q)
    return ctx.reduce(expr)


def transliterate(expr: SuperWordExpr, X: ExtendedAlphabet) -> NcPoly:
    terms = {tuple(X.index(u) for u in tup): c for tup, c in expr.terms.items()}
    return NcPoly(X.alphabet, terms)


# ---------------------------------------------------------------- H

class PresentationH:
    """The relations hbar_{u,u'} = [x_u, x_u'] - h_{u,u'} over X_U.

    Relations are produced on demand and memoized; ``relations()`` forces all
    of them.
    """

    def __init__(self, U: ClosedSet, Q: QMatrix, g: Mapping[Word, SuperWordExpr] | None = None):
        self.U = _as_closed(U)
        self.Q = Q
        self.X = ExtendedAlphabet.of(self.U)
        self.QX = self.X.extend_q(Q)
        self.ctx = _Context(self.U, Q, g)
        self._h: dict[tuple[int, int], NcPoly] = {}
        self._rules: dict[Word, _Rule] = {}
        self._lock = threading.Lock()

    def pairs(self) -> list[tuple[int, int]]:
        m = len(self.X.words)
        return [(a, b) for a in range(m, 0, -1) for b in range(a - 1, 0, -1)]

    def h(self, a: int, b: int) -> NcPoly:
        """h_{u,u'} for the letters a > b of X_U."""
        key = (a, b)
        hit = self._h.get(key)
        if hit is not None:
            return hit
        u, u2 = self.X.words[a - 1], self.X.words[b - 1]
        val = transliterate(c_value(u, u2, self.U, self.Q, ctx=self.ctx), self.X)
        with self._lock:
            self._h.setdefault(key, val)
        return self._h[key]

    def x(self, a: int) -> NcPoly:
        return NcPoly.word(self.X.alphabet, (a,))

    def hbar(self, a: int, b: int) -> NcPoly:
        return bracket(self.x(a), self.x(b), self.QX) - self.h(a, b)

    def relations(self) -> list[NcPoly]:
        return [self.hbar(a, b) for a, b in self.pairs()]

    def rule(self, w: Word) -> _Rule | None:
        if len(w) != 2 or w[0] <= w[1]:
            return None
        hit = self._rules.get(w)
        if hit is not None:
            return hit
        a, b = w
        tail = [(t, -c) for t, c in self.hbar(a, b).terms.items() if t != w]
        r = _Rule(0, w, tail)
        with self._lock:
            self._rules.setdefault(w, r)
        return self._rules[w]

    def reducer(self) -> "LazyReducer":
        return LazyReducer(self)

    def f_relations(self) -> dict[Word, NcPoly]:
        """F_U: f_u = [x_v, x_w] - x_u for u in U minus X with sh(u) = (v, w)."""
        out = {}
        for u in self.X.words:
            if len(u) < 2:
                continue
            v, w = shirshov(u)
            out[u] = bracket(self.x(self.X.index(v)), self.x(self.X.index(w)), self.QX) - self.x(self.X.index(u))
        return out

    def check_f_contained(self) -> bool:
        for u, f in self.f_relations().items():
            v, w = shirshov(u)
            if self.hbar(self.X.index(v), self.X.index(w)) != f:
                return False
        return True

    def render(self) -> list[str]:
        out = []
        for a, b in self.pairs():
            lhs = f"[{self.X.alphabet.letter_name(a)},{self.X.alphabet.letter_name(b)}]"
            h = self.h(a, b)
            out.append(lhs if not h else f"{lhs} - ({h})")
        return out


class LazyReducer(Reducer):
    """Reduction modulo H; leading words are the pairs x_a x_b with a > b."""

    def __init__(self, H: PresentationH):
        self.relations = []
        self.alphabet = H.X.alphabet
        self.rules = {}
        self.lengths = [2]
        self.H = H

    def lookup(self, factor: Word) -> _Rule | None:
        return self.H.rule(factor)


def build_H(U: ClosedSet, Q: QMatrix, g: Mapping[Word, SuperWordExpr] | None = None) -> PresentationH:
    H = PresentationH(U, Q, g)
    H.relations()
    if not H.check_f_contained():
        raise PresentationError("F_U is not contained in H")
    return H


def triples(H: PresentationH) -> list[tuple[int, int, int]]:
    """Letter triples a > b > c of X_U in descending lex order."""
    m = len(H.X.words)
    return [(a, b, c) for a in range(m, 0, -1) for b in range(a - 1, 0, -1) for c in range(b - 1, 0, -1)]


def jacobi_J(a: int, b: int, c: int, H: PresentationH) -> NcPoly:
    """J(u,v,w) for the X_U letters a > b > c (u, v, w their underlying words)."""
    QX = H.QX
    xa, xb, xc = H.x(a), H.x(b), H.x(c)
    hab, hbc, hac = H.h(a, b), H.h(b, c), H.h(a, c)
    return (bracket(hab, xc, QX) - bracket(xa, hbc, QX)
            + (xb * hac).scale(q_of((a,), (b,), QX))
            - (hac * xb).scale(q_of((b,), (c,), QX)))


@dataclass
class TripleResult:
    triple: tuple[Word, Word, Word]
    residual: NcPoly

    def to_json(self, base: Alphabet) -> dict:
        return {"triple": [format_word(u, base) for u in self.triple],
                "residual": str(self.residual)}


def j_residuals(H: PresentationH, threads: int = 1, stop_at_first: bool = False,
                only: Sequence[tuple[int, int, int]] | None = None) -> list[TripleResult]:
    red = H.reducer()
    ts = list(only) if only is not None else triples(H)

    def work(t):
        return TripleResult(tuple(H.X.words[i - 1] for i in t), red.reduce(jacobi_J(*t, H)))

    if stop_at_first:
        out = []
        for t in ts:
            r = work(t)
            out.append(r)
            if r.residual:
                break
        return out
    return _map(work, ts, threads)


# ---------------------------------------------------------------- certification

def _q_json(Q: QMatrix) -> dict:
    return {f"{i}{j}" if Q.n <= 9 else f"{i},{j}": scalar_str(c) for (i, j), c in sorted(Q.entries.items())}


@dataclass
class Certificate:
    closed_set: list[str]
    q: dict
    status: str  # certified | refuted | undetermined
    route: str  # groebner | braided
    gldim: int | None = None
    gorenstein_parameter: int | None = None
    gkdim: int | None = None
    consequences: dict = field(default_factory=dict)
    groebner: dict | None = None
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return self.status == "certified"

    def to_json(self) -> dict:
        return {
            "closed_set": self.closed_set,
            "q": self.q,
            "status": self.status,
            "route": self.route,
            "gldim": self.gldim,
            "gorenstein_parameter": self.gorenstein_parameter,
            "gkdim": self.gkdim,
            "consequences": self.consequences,
            "groebner": self.groebner,
            "failures": self.failures,
            "notes": self.notes,
        }

    def summary(self) -> str:
        if self.certified:
            return f"AS-regular, gldim {self.gldim}, l = {self.gorenstein_parameter}"
        return self.status


_CONSEQUENCES = {
    "strongly_noetherian": "theorem consequence, not computed",
    "auslander_regular": "theorem consequence, not computed",
    "cohen_macaulay": "theorem consequence, not computed",
}


def _check_numeric(Q: QMatrix) -> None:
    if Q.symbolic:
        raise PresentationError("certify needs numeric q; use extract_conditions for symbolic q")


# job specs name the routes by the theorem they rest on
ROUTE_ALIASES = {"thm39": "groebner", "thm312": "braided"}


def certify(U: ClosedSet, Q: QMatrix, route: str = "groebner", G: Sequence[NcPoly] | None = None,
            g: Mapping[Word, SuperWordExpr] | None = None, threads: int = 1,
            cross_check: bool = True) -> Certificate:
    U = _as_closed(U)
    _check_numeric(Q)
    base = U.alphabet
    cert = Certificate(U.strings(), _q_json(Q), "undetermined", route)
    route = ROUTE_ALIASES.get(route, route)
    cert.route = route
    if route == "groebner":
        rels = build_G(U, Q, g)
        rep = is_groebner(rels, threads=threads)
        cert.groebner = rep.to_json()
        ok = rep.ok
        if cross_check:
            H = build_H(U, Q, g)
            res = [r for r in j_residuals(H, threads=threads) if r.residual]
            cert.failures = [r.to_json(base) for r in res]
            if ok != (not res):
                raise PresentationError("Groebner check over X and J-triviality over X_U disagree")
        cert.status = "certified" if ok else "refuted"
        if not ok and not cert.failures:
            cert.failures = rep.to_json()["failures"]
    elif route == "braided":
        if G is None:
            raise PresentationError("the braided route needs a relation set G")
        G = [p for p in G if p]
        check_sandwich(U, G)
        rep = is_groebner(G, threads=threads)
        cert.groebner = rep.to_json()
        if not rep.ok:
            raise PresentationError("the braided route needs a Groebner set G")
        bad = [str(p) for p in G if not is_primitive(p, Q)]
        stable = braiding_stable(G, Q)
        if not bad and stable:
            cert.status = "certified"
        else:
            if bad:
                cert.failures.append({"not_primitive": bad})
            if not stable:
                cert.failures.append({"braiding_stable": False})
            cert.notes.append("hypotheses of the braided route not met; regularity not decided")
    else:
        raise PresentationError(f"unknown route {route!r}")
    if cert.certified:
        cert.gldim = len(U)
        cert.gkdim = len(U)
        cert.gorenstein_parameter = U.total_degree()
        cert.consequences = dict(_CONSEQUENCES)
    return cert


def check_sandwich(U: ClosedSet, G: Sequence[NcPoly]) -> None:
    """Phi(U) within lw(G) within (Lyndon words minus U); raises otherwise."""
    lws = {p.lw() for p in G if p}
    missing = [v for v in phi(U) if v not in lws]
    if missing:
        raise PresentationError("lw(G) misses " + ", ".join(format_word(v, U.alphabet) for v in missing))
    for w in lws:
        if not is_lyndon(w) or w in U:
            raise PresentationError(f"lw {format_word(w, U.alphabet)} is not a Lyndon word outside U")


# ---------------------------------------------------------------- conditions

@dataclass
class ConditionSystem:
    conditions: list[LaurentScalar]
    provenance: dict[str, list[dict]]
    closed_set: list[str]

    def __bool__(self):
        return bool(self.conditions)

    def strings(self) -> list[str]:
        return [str(c) for c in self.conditions]

    def evaluate(self, assignment) -> list:
        return [evaluate(c, assignment) for c in self.conditions]

    def satisfied_by(self, assignment) -> bool:
        return not any(self.evaluate(assignment))

    def to_json(self) -> dict:
        return {"closed_set": self.closed_set, "conditions": self.strings(),
                "provenance": self.provenance}


def extract_conditions(U: ClosedSet, Q: QMatrix | None = None, threads: int = 1,
                       H: PresentationH | None = None) -> ConditionSystem:
    """Normalized residual coefficients of all J(u,v,w) modulo H, symbolic q."""
    U = _as_closed(U)
    if Q is None:
        Q = QMatrix.symbolic_generic(U.alphabet)
    if not Q.symbolic:
        raise PresentationError("extract_conditions needs symbolic q")
    H = H or PresentationH(U, Q)
    base = U.alphabet
    found: dict = {}
    prov: dict[str, list[dict]] = {}
    for r in j_residuals(H, threads=threads):
        for w, c in sorted(r.residual.terms.items()):
            cond = normalize_condition(c if isinstance(c, LaurentScalar) else LaurentScalar.constant(c, base.n))
            key = str(cond)
            found.setdefault(key, cond)
            prov.setdefault(key, []).append({
                "triple": [format_word(u, base) for u in r.triple],
                "word": "*".join(H.X.alphabet.letter_name(i) for i in w),
            })
    conds = sorted(found.values(), key=lambda c: (len(c.terms), str(c)))
    return ConditionSystem(conds, prov, U.strings())


# ---------------------------------------------------------------- Fibonacci

@dataclass
class FibonacciReport:
    r: int
    refuted: bool
    method: str
    residual: str | None = None
    unit_terms: list = field(default_factory=list)
    conditions: list = field(default_factory=list)
    checks: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"r": self.r, "refuted": self.refuted, "method": self.method,
                "residual": self.residual, "unit_terms": self.unit_terms,
                "conditions": self.conditions, "checks": self.checks}


def fibonacci_residual(r: int) -> tuple[PresentationH, NcPoly]:
    """NF of J(x2, f_4, f_2) modulo H for U_r with generic symbolic q."""
    if r < 6:
        raise ValueError("the residual argument needs r >= 6")
    U = fibonacci_closed(r)
    Q = QMatrix.symbolic_generic(U.alphabet)
    H = PresentationH(U, Q)
    f = fibonacci_words(5)
    t = (H.X.index(f[1]), H.X.index(f[4]), H.X.index(f[2]))
    return H, H.reducer().reduce(jacobi_J(*t, H))


def fibonacci_failure(r: int) -> FibonacciReport:
    if r < 5:
        raise ValueError("fibonacci_failure needs r >= 5")
    if r == 5:
        from .scalars import Extension, AlgebraicScalar
        U = fibonacci_closed(5)
        system = extract_conditions(U)
        zeta = Extension.parse("t^2+t+1").generator
        chain = {(1, 1): -1, (2, 2): zeta, (2, 1): -1, (1, 2): 1}
        n = 2
        sym = {(i, j): LaurentScalar.symbol(i, j, n) for i in (1, 2) for j in (1, 2)}
        last = sym[(2, 2)] ** 6 * (sym[(2, 1)] * sym[(1, 2)]) ** 5 * sym[(1, 1)] ** 4 - 1
        final = evaluate(last, chain)
        sat = system.satisfied_by(chain)
        return FibonacciReport(5, bool(system) and bool(final) and not sat, "condition_subsystem",
                               conditions=system.strings(),
                               checks={"last_condition_on_chain": scalar_str(final),
                                       "system_satisfied_on_chain": sat})
    H, res = fibonacci_residual(r)
    units = []
    for w, c in res.terms.items():
        if isinstance(c, LaurentScalar) and c.is_unit():
            units.append({"word": "*".join(H.X.alphabet.letter_name(i) for i in w), "coefficient": str(c)})
    return FibonacciReport(r, bool(units), "unit_residual", residual=str(res), unit_terms=units)
