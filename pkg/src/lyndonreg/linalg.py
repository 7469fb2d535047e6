"""Exact rank and span membership for sparse vectors (dict key -> scalar).

Field scalars use ordinary Gaussian elimination.  Laurent scalars form
an integral domain only, so rows are combined fraction-free
(row := a*row - b*pivot), which keeps ranks correct over the fraction field.
"""
from __future__ import annotations

from typing import Hashable, Iterable, Mapping

from .scalars import LaurentScalar

Vector = Mapping[Hashable, object]


def _is_ring_only(rows: list[dict]) -> bool:
    return any(isinstance(c, LaurentScalar) for r in rows for c in r.values())


def echelon(vectors: Iterable[Vector]) -> list[tuple[Hashable, dict]]:
    """Echelon basis as (pivot key, row) pairs; zero rows dropped."""
    rows = [{k: c for k, c in v.items() if c} for v in vectors]
    rows = [r for r in rows if r]
    fraction_free = _is_ring_only(rows)
    basis: list[tuple[Hashable, dict]] = []
    pivots: dict[Hashable, dict] = {}
    for r in rows:
        r = dict(r)
        for key, prow in list(pivots.items()):
            if key not in r:
                continue
            b = r[key]
            if fraction_free:
                a = prow[key]
                new = {k: a * c for k, c in r.items()}
                for k, c in prow.items():
                    new[k] = new.get(k, 0) - b * c
            else:
                new = dict(r)
                for k, c in prow.items():
                    new[k] = new.get(k, 0) - b * c
            r = {k: c for k, c in new.items() if c}
            if not r:
                break
        if not r:
            continue
        key = min(r, key=repr)
        if not fraction_free:
            inv = 1 / r[key]
            r = {k: c * inv for k, c in r.items()}
        # keep earlier rows reduced in the new pivot column
        for pk, prow in list(pivots.items()):
            if key in prow:
                b = prow[key]
                if fraction_free:
                    a = r[key]
                    new = {k: a * c for k, c in prow.items()}
                else:
                    new = dict(prow)
                for k, c in r.items():
                    new[k] = new.get(k, 0) - b * c
                pivots[pk] = {k: c for k, c in new.items() if c}
        pivots[key] = r
    basis = list(pivots.items())
    return basis


def rank(vectors: Iterable[Vector]) -> int:
    return len(echelon(vectors))


def in_span(v: Vector, vectors: Iterable[Vector]) -> bool:
    vectors = list(vectors)
    return rank(vectors + [v]) == rank(vectors)
