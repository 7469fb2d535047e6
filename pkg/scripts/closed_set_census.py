"""Enumerate small closed sets over two letters and compare l with the Fibonacci bound."""
import argparse

from lyndonreg.invariants import bound_census
from lyndonreg.words import Alphabet

ap = argparse.ArgumentParser(description=__doc__)
ap.add_argument("--n", type=int, default=2)
ap.add_argument("--max-size", type=int, default=6)
args = ap.parse_args()

rows = bound_census(Alphabet.uniform(args.n), args.max_size)
worst = 0
for U, l, bound in sorted(rows, key=lambda r: (len(r[0]), r[1])):
    tag = "=" if l == bound else "<" if l < bound else "!!"
    print(f"#U={len(U)}  l={l:3d} {tag} {bound:3d}  {{{', '.join(U.strings())}}}")
    worst = max(worst, l - bound)
print(f"{len(rows)} closed sets; bound {'holds' if worst <= 0 else 'VIOLATED'}")
