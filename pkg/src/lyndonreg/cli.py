"""Command-line front end.

Exit status: 0 on success or a certified/clean result, 2 when a check
fails (refuted, nonempty condition system, unmet hypotheses), 1 on usage or
validation errors.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Callable, Sequence

from . import __version__
from .chains import chain_graph, chains, is_antichain
from .closedsets import ClosedSet, close, fibonacci_closed, fibonacci_phi_formula, is_closed, phi, phibar, psi, upsilon
from .freealg import is_groebner, parse_poly
from .invariants import invariant_report
from .jobspec import JobError, JobSpec
from .presentations import (
    ROUTE_ALIASES,
    PresentationError,
    build_G,
    build_H,
    certify,
    extract_conditions,
    fibonacci_failure,
)
from .qcalc import QMatrix, is_primitive, to_superword_basis
from .scalars import NonUnitError
from .words import Alphabet, format_word, generate_lyndon, parse_word

log = logging.getLogger("lyndonreg")

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 1, 2


class Result:
    """A report document plus its text rendering and exit status."""

    def __init__(self, doc, lines: Sequence[str], status: int = EXIT_OK):
        self.doc = doc
        self.lines = list(lines)
        self.status = status


def emit_report(result: Result, fmt: str = "text", stream=None) -> str:
    stream = stream or sys.stdout
    if fmt == "json":
        out = json.dumps(result.doc, sort_keys=True, indent=2, ensure_ascii=False)
    else:
        out = "\n".join(result.lines)
    stream.write(out + "\n")
    return out


# ---------------------------------------------------------------- inputs

def _alphabet(args) -> Alphabet:
    if args.spec:
        return JobSpec.load(args.spec).alphabet
    if args.weights:
        w = tuple(int(x) for x in args.weights.split(","))
        if args.n is not None and len(w) != args.n:
            raise JobError("--weights", f"expected {args.n} weights")
        return Alphabet(w)
    return Alphabet.uniform(args.n or 2)


def _words(args, alphabet: Alphabet, key: str = "closed_set") -> list:
    if args.words:
        try:
            return [parse_word(s, alphabet) for s in args.words]
        except ValueError as e:
            raise JobError("--words", str(e)) from None
    if args.spec:
        spec = JobSpec.load(args.spec)
        ws = getattr(spec, key)
        if ws is None:
            raise JobError(f"/{key}", "required for this command")
        return ws
    raise JobError("--words", "give --words or --spec")


def _closed(args) -> ClosedSet:
    a = _alphabet(args)
    ws = _words(args, a)
    if not is_closed(ws, a):
        raise JobError("closed_set", "not a closed set (try the closure command)")
    return ClosedSet.from_words(ws, a)


def _spec(args) -> JobSpec:
    if not args.spec:
        raise JobError("--spec", "this command needs a job spec")
    return JobSpec.load(args.spec)


def _fw(ws, a):
    return [format_word(w, a) for w in ws]


# ---------------------------------------------------------------- commands

def cmd_lyndon(args) -> Result:
    a = _alphabet(args)
    ws = _fw(generate_lyndon(a, args.max_deg), a)
    return Result(ws, ws)


def cmd_closure(args) -> Result:
    a = _alphabet(args)
    U = close(_words(args, a), a)
    ws = U.strings()
    return Result(ws, ws)


def _phi_like(fn: Callable) -> Callable:
    def run(args) -> Result:
        U = _closed(args)
        ws = _fw(fn(U, degree_cap=args.max_deg), U.alphabet)
        return Result(ws, ws)
    return run


def cmd_psi(args) -> Result:
    a = _alphabet(args)
    V = _words(args, a, "antichain")
    if not is_antichain(V):
        raise JobError("antichain", "not an antichain")
    ws = _fw(psi(V, a, args.max_deg or 6), a)
    return Result(ws, ws)


def cmd_upsilon(args) -> Result:
    U = _closed(args)
    pairs = [[format_word(u, U.alphabet), format_word(v, U.alphabet)] for u, v in upsilon(U)]
    return Result(pairs, [f"({u}, {v})" for u, v in pairs])


def cmd_chains(args) -> Result:
    a = _alphabet(args)
    V = _words(args, a, "antichain")
    if not is_antichain(V):
        raise JobError("antichain", "not an antichain")
    g = chain_graph(V, a)
    if args.p is None:
        doc = g.to_json()
        lines = [f"{x} -> {', '.join(g_ for g_ in ys) or '(none)'}"
                 for x, ys in ((format_word(v, a), _fw(g.arrows.get(v, []), a)) for v in g.vertices)]
        return Result(doc, lines)
    ws = _fw(chains(V, a, args.p, g), a)
    return Result(ws, ws or ["(no chains)"])


def cmd_present(args) -> Result:
    spec = _spec(args)
    U = spec.closed()
    Q = spec.qmatrix()
    G = build_G(U, Q, spec.g_map())
    H = build_H(U, Q, spec.g_map())
    doc = {
        "G": [str(g) for g in G],
        "extended_alphabet": [H.X.alphabet.letter_name(i) for i in range(1, len(H.X.words) + 1)],
        "H": H.render(),
    }
    lines = ["G(U,q):"] + [f"  {g}" for g in G] + ["H over X_U:"] + [f"  {h}" for h in H.render()]
    return Result(doc, lines)


def cmd_certify(args) -> Result:
    spec = _spec(args)
    U = spec.closed()
    Q = spec.qmatrix()
    route = ROUTE_ALIASES.get(spec.route, spec.route)
    G = spec.relation_list() if route == "braided" else None
    cert = certify(U, Q, route=route, G=G, g=spec.g_map(), threads=args.threads)
    lines = [f"closed set: {{{', '.join(cert.closed_set)}}}", f"route: {cert.route}", f"status: {cert.status}"]
    if cert.certified:
        lines.append(cert.summary())
    for f in cert.failures:
        if isinstance(f, dict) and "triple" in f:
            lines.append(f"  J({', '.join(f['triple'])}) = {f['residual']}")
        else:
            lines.append(f"  {f}")
    return Result(cert.to_json(), lines, EXIT_OK if cert.certified else EXIT_FAIL)


def cmd_conditions(args) -> Result:
    spec = _spec(args)
    U = spec.closed()
    if spec.q.mode != "symbolic":
        spec.q.mode = "symbolic"
    system = extract_conditions(U, spec.qmatrix(), threads=args.threads)
    lines = system.strings() or ["(no conditions)"]
    for c in system.strings():
        src = system.provenance[c][0]
        lines[lines.index(c)] = f"{c} = 0    [J({', '.join(src['triple'])}) at {src['word']}]"
    return Result(system.to_json(), lines, EXIT_FAIL if system else EXIT_OK)


def cmd_invariants(args) -> Result:
    if args.spec:
        spec = _spec(args)
        U = spec.closed()
        cap = args.cap if args.cap is not None else spec.cap
    else:
        U = _closed(args)
        cap = args.cap
    rep = invariant_report(U, cap=cap)
    lines = [
        f"closed set        {{{', '.join(rep.closed_set)}}}",
        f"obstructions      {{{', '.join(rep.obstructions)}}}",
        f"GK dimension      {rep.gkdim}",
        f"global dimension  {rep.gldim}",
        f"Gorenstein l      {rep.gorenstein_parameter}",
        f"Fibonacci bound   {rep.fibonacci_bound}",
        f"Hilbert series    {', '.join(map(str, rep.hilbert))}",
    ]
    ok = rep.bound_satisfied is not False
    return Result(rep.to_json(), lines, EXIT_OK if ok else EXIT_FAIL)


def cmd_primitive(args) -> Result:
    spec = JobSpec.load(args.spec) if args.spec else None
    a = spec.alphabet if spec else _alphabet(args)
    Q = spec.qmatrix() if spec else QMatrix.numeric(a)
    n = a.n if Q.symbolic else None
    try:
        f = parse_poly(args.poly, a, n=n, extension=spec.extension() if spec else None)
    except ValueError as e:
        raise JobError("--poly", str(e)) from None
    prim = is_primitive(f, Q)
    basis = str(to_superword_basis(f, Q))
    doc = {"poly": str(f), "primitive": prim, "superword_basis": basis}
    return Result(doc, [f"{f}: {'primitive' if prim else 'not primitive'}", f"super-words: {basis}"],
                  EXIT_OK if prim else EXIT_FAIL)


def cmd_fibonacci(args) -> Result:
    if args.p is not None:
        U = fibonacci_closed(args.p)
        got = set(phi(U))
        want = fibonacci_phi_formula(args.p)
        doc = {"p": args.p, "closed_set": U.strings(), "phi": _fw(phi(U), U.alphabet),
               "phi_size": len(got), "matches_formula": got == want}
        lines = [f"U_{args.p} = {{{', '.join(doc['closed_set'])}}}",
                 f"phi(U_{args.p}) = {{{', '.join(doc['phi'])}}}  (#{len(got)})",
                 f"closed form agrees: {got == want}"]
        return Result(doc, lines, EXIT_OK if got == want else EXIT_FAIL)
    rep = fibonacci_failure(args.r)
    lines = [f"r = {rep.r}: method {rep.method}"]
    if rep.residual:
        lines.append(f"J(x2, x22121, x21) mod H = {rep.residual}")
        lines += [f"  unit term {t['coefficient']} * {t['word']}" for t in rep.unit_terms]
    if rep.checks:
        lines += [f"  {k}: {v}" for k, v in sorted(rep.checks.items())]
    lines.append("no q makes G(U_r,q) Groebner" if rep.refuted else "failure not established")
    return Result(rep.to_json(), lines, EXIT_FAIL if rep.refuted else EXIT_OK)


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--spec", help="JSON job spec")
    common.add_argument("--n", type=int, help="number of letters (default 2)")
    common.add_argument("--weights", help="comma-separated letter degrees")
    common.add_argument("--words", nargs="+", help="words such as 21 221 or [2,1]")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="lyndonreg", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.set_defaults(func=fn)
        return s

    add("lyndon", cmd_lyndon, "list Lyndon words").add_argument("--max-deg", type=int, required=True)
    add("closure", cmd_closure, "smallest closed set containing the words")
    add("phi", _phi_like(phi), "minimal Lyndon non-members").add_argument("--max-deg", type=int)
    add("phibar", _phi_like(phibar), "Lyndon non-members with Shirshov factors in U").add_argument("--max-deg", type=int)
    add("psi", cmd_psi, "Lyndon words avoiding an antichain").add_argument("--max-deg", type=int)
    add("upsilon", cmd_upsilon, "lex-adjacent pairs of a closed set")
    add("chains", cmd_chains, "graph of chains or p-chains").add_argument("--p", type=int)
    add("present", cmd_present, "relations G(U,q) and the presentation H")
    add("certify", cmd_certify, "certify AS-regularity for numeric q")
    add("conditions", cmd_conditions, "conditions on symbolic q for the Groebner property")
    inv = add("invariants", cmd_invariants, "Hilbert series, dimensions, Gorenstein parameter")
    inv.add_argument("--cap", type=int)
    add("primitive", cmd_primitive, "primitivity and super-word expansion").add_argument("--poly", required=True)
    fib = add("fibonacci", cmd_fibonacci, "Fibonacci closed sets and their failure")
    g = fib.add_mutually_exclusive_group(required=True)
    g.add_argument("--r", type=int, help="show that no q works for U_r (r >= 5)")
    g.add_argument("--p", type=int, help="closed set U_p and its obstructions")
    return p


def run(argv: Sequence[str] | None = None, stream=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        result = args.func(args)
    except JobError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (PresentationError, NonUnitError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    emit_report(result, args.format, stream)
    return result.status


def main() -> None:
    sys.exit(run())
