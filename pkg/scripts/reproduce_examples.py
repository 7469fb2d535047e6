"""Recompute the worked A(U,q) examples: presentations, conditions and certificates."""
from fractions import Fraction as F

from lyndonreg.closedsets import ClosedSet, fibonacci_closed
from lyndonreg.presentations import PresentationH, certify, extract_conditions, fibonacci_failure
from lyndonreg.qcalc import QMatrix
from lyndonreg.scalars import Extension
from lyndonreg.words import Alphabet

A = Alphabet.uniform(2)
zeta = Extension.parse("t^2+t+1").generator


def q(q11, q12, q21, q22):
    return QMatrix(A, {(1, 1): q11, (1, 2): q12, (2, 1): q21, (2, 2): q22})


def cs(*ws):
    return ClosedSet.from_words([tuple(int(c) for c in w) for w in ws], A)


cases = {
    "U_3": (fibonacci_closed(3), [q(1, 5, 3, 1), q(2, 1, 1, 1)]),
    "U_4": (fibonacci_closed(4), [q(1, F(1, 2), 2, 1), q(zeta, zeta**2 / 3, 3, zeta),
                                  q(4, F(1, 12), 3, 2), q(2, 1, 1, 1)]),
    "U_5'": (cs("1", "2", "21", "221", "2221"), [q(1, F(1, 3), 3, 1), q(1, 1, 3, 1)]),
    "U_5''": (cs("1", "2", "21", "211", "221"), [q(1, F(1, 7), 7, 1), q(zeta, zeta**2 / 5, 5, zeta)]),
}
generic = QMatrix.symbolic_generic(A)
for name, (U, qs) in cases.items():
    print(f"== {name} = {{{', '.join(U.strings())}}}")
    for line in PresentationH(U, generic).render():
        print("  ", line)
    print("  conditions:", extract_conditions(U).strings())
    for Q in qs:
        c = certify(U, Q)
        print(f"  q = {c.q}: {c.summary()}")
print("== U_5")
print("  ", fibonacci_failure(5).to_json())
for r in (6, 7):
    rep = fibonacci_failure(r)
    print(f"== U_{r}: {rep.residual}")
