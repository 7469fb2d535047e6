"""Exact coefficients.

Three kinds of scalar share the usual operator protocol (+, -, *, /, **,
==, bool):

* :class:`fractions.Fraction` for rationals;
* :class:`AlgebraicScalar`, residues in Q[t]/(m) for one fixed monic m;
* :class:`LaurentScalar`, sparse Laurent polynomials in the symbols q_ij.

Laurent scalars only form a ring; dividing by a non-monomial raises
:class:`NonUnitError`.
"""
from __future__ import annotations

import re
import warnings
from fractions import Fraction
from typing import Mapping, Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


class NonUnitError(ArithmeticError):
    """Division by a Laurent polynomial that is not a monomial."""


def as_scalar(c):
    """Coerce ints to Fraction; other scalars pass through."""
    if isinstance(c, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, (Fraction, AlgebraicScalar, LaurentScalar)):
        return c
    raise TypeError(f"unsupported scalar {c!r}")


def is_rational(c) -> bool:
    return isinstance(c, (int, Fraction))


# ================================================================ Q[t]/(m)

def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    q = [ZERO] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(_trim(a)) >= len(b):
        k = len(a) - len(b)
        c = a[-1] / lead
        q[k] = c
        for i, bc in enumerate(b):
            a[i + k] -= c * bc
    return _trim(q), a


def _poly_mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _poly_sub(a: Sequence, b: Sequence) -> list:
    m = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else ZERO) - (b[i] if i < len(b) else ZERO)
                  for i in range(m)])


def _rational_roots(coeffs: Sequence[Fraction]) -> list[Fraction]:
    """Rational roots of a rational polynomial (coefficients low -> high)."""
    from math import lcm

    den = 1
    for c in coeffs:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    while ints and ints[0] == 0:
        ints.pop(0)
    roots = [ZERO] if len(ints) < len(coeffs) else []
    if len(ints) <= 1:
        return roots

    def divisors(k):
        k = abs(k)
        return [d for d in range(1, k + 1) if k % d == 0]

    for p in divisors(ints[0]):
        for q in divisors(ints[-1]):
            for r in (Fraction(p, q), Fraction(-p, q)):
                if sum(c * r ** i for i, c in enumerate(ints)) == 0 and r not in roots:
                    roots.append(r)
    return roots


class Extension:
    """The field Q[t]/(m) for a monic m, given low -> high coefficients."""

    PRESETS = {"t^2+t+1": (1, 1, 1)}

    def __init__(self, modulus: Sequence, name: str = "zeta"):
        m = [Fraction(c) for c in modulus]
        _trim(m)
        if len(m) < 2:
            raise ValueError("modulus must have degree >= 1")
        if m[-1] != 1:
            m = [c / m[-1] for c in m]
        self.modulus = tuple(m)
        self.name = name
        if len(m) - 1 in (2, 3):
            if _rational_roots(m):
                raise ValueError(f"modulus {self} is reducible over Q")
        elif len(m) - 1 > 3:
            warnings.warn(f"irreducibility of {self} not checked; trusting caller")

    @classmethod
    def parse(cls, text: str, name: str = "zeta") -> "Extension":
        """Parse a polynomial in t such as "t^2+t+1"."""
        key = text.replace(" ", "")
        if key in cls.PRESETS:
            return cls(cls.PRESETS[key], name)
        coeffs: dict[int, Fraction] = {}
        for sign, body in re.findall(r"([+-]?)([^+-]+)", key):
            m = re.fullmatch(r"(?:(\d+(?:/\d+)?)\*?)?(t(?:\^(\d+))?)?", body)
            if not m or (m.group(1) is None and m.group(2) is None):
                raise ValueError(f"bad modulus term {body!r} in {text!r}")
            c = Fraction(m.group(1)) if m.group(1) else ONE
            e = (int(m.group(3)) if m.group(3) else 1) if m.group(2) else 0
            coeffs[e] = coeffs.get(e, ZERO) + (-c if sign == "-" else c)
        deg = max(coeffs)
        return cls([coeffs.get(i, ZERO) for i in range(deg + 1)], name)

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    @property
    def generator(self) -> "AlgebraicScalar":
        if self.degree == 1:
            return AlgebraicScalar(self, [-self.modulus[0]])
        return AlgebraicScalar(self, [ZERO, ONE])

    def __eq__(self, other):
        return isinstance(other, Extension) and self.modulus == other.modulus

    def __hash__(self):
        return hash(self.modulus)

    def __str__(self):
        terms = []
        for e in range(self.degree, -1, -1):
            c = self.modulus[e]
            if not c:
                continue
            mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = str(abs(c)) + ("*" + mono if mono else "")
            terms.append(("-" if c < 0 else "+", body))
        s = "".join(f" {sg} {b}" for sg, b in terms).strip()
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


class AlgebraicScalar:
    """Residue of a rational polynomial modulo the extension's modulus."""

    __slots__ = ("ext", "value")

    def __init__(self, ext: Extension, value: Sequence):
        self.ext = ext
        v = [Fraction(c) for c in value]
        if len(v) > ext.degree:
            _, v = _poly_divmod(v, list(ext.modulus))
        self.value = tuple(_trim(v))

    def _lift(self, other):
        if isinstance(other, AlgebraicScalar):
            if other.ext != self.ext:
                raise ValueError("scalars from different extensions")
            return other
        if isinstance(other, (int, Fraction)):
            return AlgebraicScalar(self.ext, [other])
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        n = max(len(self.value), len(o.value))
        a = self.value + (ZERO,) * (n - len(self.value))
        b = o.value + (ZERO,) * (n - len(o.value))
        return AlgebraicScalar(self.ext, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicScalar(self.ext, [-x for x in self.value])

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return AlgebraicScalar(self.ext, _poly_mul(self.value, o.value))

    __rmul__ = __mul__

    def inverse(self) -> "AlgebraicScalar":
        if not self.value:
            raise ZeroDivisionError("inverse of zero")
        # extended Euclid: s*value + t*m = g, g a nonzero constant
        r0, r1 = list(self.ext.modulus), list(self.value)
        s0, s1 = [], [ONE]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        if not r1:
            raise AssertionError("modulus is not irreducible")
        g = r1[0]
        return AlgebraicScalar(self.ext, [c / g for c in s1])

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out, base = AlgebraicScalar(self.ext, [ONE]), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __bool__(self):
        return bool(self.value)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.value == tuple(_trim([Fraction(other)]))
        if isinstance(other, AlgebraicScalar):
            return self.ext == other.ext and self.value == other.value
        return NotImplemented

    def __hash__(self):
        if len(self.value) <= 1:
            return hash(self.value[0] if self.value else ZERO)
        return hash((self.ext, self.value))

    def __str__(self):
        name = self.ext.name
        terms = []
        for e in range(len(self.value) - 1, -1, -1):
            c = self.value[e]
            if not c:
                continue
            mono = "" if e == 0 else (name if e == 1 else f"{name}^{e}")
            body = mono if mono and abs(c) == 1 else (
                str(abs(c)) + ("*" + mono if mono else ""))
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        s = " ".join(f"{sg} {b}" for sg, b in terms)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    __repr__ = __str__


# ================================================================ Laurent

def symbol_name(i: int, j: int, n: int) -> str:
    return f"q{i}{j}" if n <= 9 else f"q[{i},{j}]"


class LaurentScalar:
    """Sparse Laurent polynomial in the n*n symbols q_ij, rational coefficients.

    Exponent vectors are indexed q_11, q_12, ..., q_nn.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[tuple, Fraction] | None = None):
        self.n = n
        self.terms: dict[tuple, Fraction] = {}
        if terms:
            for e, c in terms.items():
                if c:
                    self.terms[tuple(e)] = Fraction(c)

    @classmethod
    def symbol(cls, i: int, j: int, n: int) -> "LaurentScalar":
        e = [0] * (n * n)
        e[(i - 1) * n + (j - 1)] = 1
        return cls(n, {tuple(e): ONE})

    @classmethod
    def constant(cls, c, n: int) -> "LaurentScalar":
        return cls(n, {(0,) * (n * n): Fraction(c)})

    @classmethod
    def monomial(cls, exps: Sequence[int], n: int, coeff=ONE) -> "LaurentScalar":
        return cls(n, {tuple(exps): Fraction(coeff)})

    def _lift(self, other):
        if isinstance(other, LaurentScalar):
            if other.n != self.n:
                raise ValueError("Laurent scalars over different symbol sets")
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentScalar.constant(other, self.n)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        t = dict(self.terms)
        for e, c in o.terms.items():
            s = t.get(e, ZERO) + c
            if s:
                t[e] = s
            else:
                t.pop(e, None)
        out = LaurentScalar(self.n)
        out.terms = t
        return out

    __radd__ = __add__

    def __neg__(self):
        out = LaurentScalar(self.n)
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return LaurentScalar(self.n)
            out = LaurentScalar(self.n)
            out.terms = {e: c * other for e, c in self.terms.items()}
            return out
        o = self._lift(other)
        if o is NotImplemented:
            return o
        t: dict[tuple, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = t.get(e, ZERO) + c1 * c2
                if s:
                    t[e] = s
                else:
                    t.pop(e, None)
        out = LaurentScalar(self.n)
        out.terms = t
        return out

    __rmul__ = __mul__

    def is_unit(self) -> bool:
        return len(self.terms) == 1

    def inverse(self) -> "LaurentScalar":
        if not self.terms:
            raise ZeroDivisionError("inverse of zero")
        if len(self.terms) != 1:
            raise NonUnitError(f"{self} is not a unit in the Laurent ring")
        (e, c), = self.terms.items()
        return LaurentScalar(self.n, {tuple(-a for a in e): 1 / c})

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        if len(self.terms) == 1:
            (e, c), = self.terms.items()
            return LaurentScalar(self.n, {tuple(a * k for a in e): c ** k})
        out = LaurentScalar.constant(1, self.n)
        for _ in range(k):
            out = out * self
        return out

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return not self.terms
            return self.terms == {(0,) * (self.n * self.n): Fraction(other)}
        if isinstance(other, LaurentScalar):
            return self.n == other.n and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        if not self.terms:
            return hash(ZERO)
        if len(self.terms) == 1:
            (e, c), = self.terms.items()
            if not any(e):
                return hash(c)
        return hash(frozenset(self.terms.items()))

    # ---- ordering / printing

    @staticmethod
    def _order_key(e: tuple) -> tuple:
        return (sum(e), e)

    def sorted_terms(self) -> list[tuple[tuple, Fraction]]:
        """Terms by decreasing total degree, then decreasing exponent vector."""
        return sorted(self.terms.items(), key=lambda t: self._order_key(t[0]), reverse=True)

    def leading(self) -> tuple[tuple, Fraction]:
        return self.sorted_terms()[0]

    def _mono_str(self, e: tuple) -> str:
        n = self.n
        parts = []
        for k, a in enumerate(e):
            if a:
                name = symbol_name(k // n + 1, k % n + 1, n)
                parts.append(name if a == 1 else f"{name}^{a}")
        return "*".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for e, c in self.sorted_terms():
            mono = self._mono_str(e)
            a = abs(c)
            if mono:
                body = mono if a == 1 else f"{a}*{mono}"
            else:
                body = str(a)
            pieces.append(("-" if c < 0 else "+", body))
        s = " ".join(f"{sg} {b}" for sg, b in pieces)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self):
        return f"LaurentScalar({self})"


# ================================================================ helpers

def scalar_str(c) -> str:
    return str(c)


def needs_parens(c) -> bool:
    """True when the printed scalar is a sum and must be bracketed in a product."""
    if isinstance(c, (int, Fraction)):
        return False
    if isinstance(c, AlgebraicScalar):
        return sum(1 for x in c.value if x) > 1
    return len(c.terms) > 1


def evaluate(p, assignment: Mapping[tuple[int, int], object]):
    """Substitute numeric values for the symbols q_ij of a Laurent scalar."""
    if isinstance(p, (int, Fraction)):
        return Fraction(p)
    if not isinstance(p, LaurentScalar):
        raise TypeError(f"cannot evaluate {type(p).__name__}")
    n = p.n
    values = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            v = assignment.get((i, j))
            if v is None:
                values.append(None)
                continue
            v = as_scalar(v)
            if not v:
                raise ValueError(f"q{i}{j} must be nonzero")
            values.append(v)
    total = ZERO
    for e, c in p.terms.items():
        term = c
        for k, a in enumerate(e):
            if a:
                if values[k] is None:
                    raise KeyError(f"no value for {symbol_name(k // n + 1, k % n + 1, n)}")
                term = term * values[k] ** a
        total = total + term
    return total


def normalize_condition(p: LaurentScalar) -> LaurentScalar:
    """Canonical generator of the same principal ideal of the Laurent ring.

    Divides by the monomial of componentwise-minimal exponents, then by the
    coefficient of the leading term (total degree, then exponent vector).
    """
    if isinstance(p, (int, Fraction)):
        if not p:
            raise ValueError("cannot normalize zero")
        return Fraction(1)
    if not p.terms:
        raise ValueError("cannot normalize zero")
    exps = list(p.terms)
    low = tuple(min(e[k] for e in exps) for k in range(len(exps[0])))
    shifted = {tuple(a - b for a, b in zip(e, low)): c for e, c in p.terms.items()}
    out = LaurentScalar(p.n, shifted)
    _, lead = out.leading()
    return out * (1 / lead)


# ================================================================ parser

_TOKEN = re.compile(r"\s*(?:(\d+)|(q\[\d+,\d+\]|q_\{\d+,\d+\}|q\d\d|zeta|t)|(\^-?\d+)|([-+*/()]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    out, pos = [], 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse scalar {text!r} at {text[pos:]!r}")
        pos = m.end()
        num, ident, power, op = m.groups()
        if num is not None:
            out.append(("num", num))
        elif ident is not None:
            out.append(("id", ident))
        elif power is not None:
            out.append(("pow", power[1:]))
        else:
            out.append(("op", op))
    return out


def _symbol_indices(name: str) -> tuple[int, int]:
    m = re.fullmatch(r"q(?:\[(\d+),(\d+)\]|_\{(\d+),(\d+)\}|(\d)(\d))", name)
    g = [x for x in m.groups() if x is not None]
    return int(g[0]), int(g[1])


def parse_scalar(text: str, n: int | None = None, extension: Extension | None = None):
    """Parse "3/4", "zeta", "q21^-1*q12", "2*(q11 - q22)" and the like."""
    tokens = _tokenize(str(text))
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None)

    def take():
        nonlocal pos
        tok = peek()
        pos += 1
        return tok

    def atom():
        kind, val = take()
        if kind == "num":
            return Fraction(int(val))
        if kind == "id":
            if val in ("zeta", "t"):
                if extension is None:
                    raise ValueError(f"{val!r} used without an extension modulus")
                return extension.generator
            i, j = _symbol_indices(val)
            if n is None or not (1 <= i <= n and 1 <= j <= n):
                raise ValueError(f"symbol {val} outside a {n}x{n} q-matrix")
            return LaurentScalar.symbol(i, j, n)
        if (kind, val) == ("op", "("):
            v = expr()
            if take() != ("op", ")"):
                raise ValueError(f"missing ')' in {text!r}")
            return v
        raise ValueError(f"unexpected token {val!r} in {text!r}")

    def power():
        v = atom()
        while peek()[0] == "pow":
            v = v ** int(take()[1])
        return v

    def unary():
        if peek() == ("op", "-"):
            take()
            return -unary()
        if peek() == ("op", "+"):
            take()
            return unary()
        return power()

    def term():
        v = unary()
        while peek() in (("op", "*"), ("op", "/")):
            op = take()[1]
            r = unary()
            v = v * r if op == "*" else v / r
        return v

    def expr():
        v = term()
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            r = term()
            v = v + r if op == "+" else v - r
        return v

    if not tokens:
        raise ValueError("empty scalar")
    v = expr()
    if pos != len(tokens):
        raise ValueError(f"trailing input in scalar {text!r}")
    return as_scalar(v)
