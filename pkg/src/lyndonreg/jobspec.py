"""Job specifications: JSON schema, validation and conversion to library objects."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import jsonschema

from .closedsets import ClosedSet, is_closed
from .freealg import NcPoly, parse_poly
from .qcalc import QMatrix, SuperWordExpr
from .scalars import Extension, LaurentScalar, parse_scalar
from .words import Alphabet, Word, format_word, parse_word

_WORD = {"type": "string", "minLength": 1}

JOB_SCHEMA: dict = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "lyndonreg job",
    "type": "object",
    "additionalProperties": False,
    "required": ["alphabet"],
    "properties": {
        "alphabet": {
            "type": "object",
            "additionalProperties": False,
            "required": ["n"],
            "properties": {
                "n": {"type": "integer", "minimum": 1},
                "weights": {"type": "array", "items": {"type": "integer", "minimum": 1}},
            },
        },
        "closed_set": {"type": "array", "items": _WORD},
        "antichain": {"type": "array", "items": _WORD},
        "relations": {"type": "array", "items": {"type": "string"}},
        "q": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "mode": {"enum": ["numeric", "symbolic"]},
                "entries": {
                    "type": "object",
                    "patternProperties": {r"^(\d\d|\d+,\d+)$": {"type": ["string", "integer"]}},
                    "additionalProperties": False,
                },
                "extension": {"type": "string"},
            },
        },
        "route": {"enum": ["groebner", "braided", "thm39", "thm312"]},
        "g_values": {
            "type": "object",
            "additionalProperties": {
                "type": "array",
                "items": {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["coeff", "word"],
                    "properties": {
                        "coeff": {"type": ["string", "integer"]},
                        "word": {"type": "array", "items": _WORD},
                    },
                },
            },
        },
        "cap": {"type": "integer", "minimum": 0},
        "p": {"type": "integer", "minimum": 0},
    },
}


class JobError(ValueError):
    """Invalid job; ``where`` names the offending field."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


def _pointer(path) -> str:
    return "/" + "/".join(str(p) for p in path) if path else "/"


def validate(doc: Any) -> None:
    v = jsonschema.Draft202012Validator(JOB_SCHEMA)
    errors = sorted(v.iter_errors(doc), key=lambda e: list(map(str, e.path)))
    if errors:
        e = errors[0]
        raise JobError(_pointer(e.path), e.message)


@dataclass
class QSpec:
    mode: str = "numeric"
    entries: dict[str, Any] = field(default_factory=dict)
    extension: str | None = None


@dataclass
class JobSpec:
    alphabet: Alphabet
    closed_set: list[Word] | None = None
    antichain: list[Word] | None = None
    relations: list[str] | None = None
    q: QSpec = field(default_factory=QSpec)
    route: str = "groebner"
    g_values: dict | None = None
    cap: int | None = None
    p: int | None = None

    @classmethod
    def from_dict(cls, doc: dict) -> "JobSpec":
        validate(doc)
        a = doc["alphabet"]
        n = a["n"]
        weights = a.get("weights", [1] * n)
        if len(weights) != n:
            raise JobError("/alphabet/weights", f"expected {n} weights, got {len(weights)}")
        alphabet = Alphabet(tuple(weights))

        def words(key):
            if key not in doc:
                return None
            out = []
            for k, s in enumerate(doc[key]):
                try:
                    out.append(alphabet.check(parse_word(s, alphabet)))
                except ValueError as e:
                    raise JobError(f"/{key}/{k}", str(e)) from None
            return out

        q = doc.get("q", {})
        return cls(
            alphabet=alphabet,
            closed_set=words("closed_set"),
            antichain=words("antichain"),
            relations=doc.get("relations"),
            q=QSpec(q.get("mode", "numeric"), dict(q.get("entries", {})), q.get("extension")),
            route=doc.get("route", "groebner"),
            g_values=doc.get("g_values"),
            cap=doc.get("cap"),
            p=doc.get("p"),
        )

    @classmethod
    def load(cls, path: str | Path) -> "JobSpec":
        try:
            doc = json.loads(Path(path).read_text())
        except json.JSONDecodeError as e:
            raise JobError("/", f"invalid JSON ({e})") from None
        return cls.from_dict(doc)

    # ------------------------------------------------------------ conversions

    @property
    def n(self) -> int:
        return self.alphabet.n

    def extension(self) -> Extension | None:
        if not self.q.extension:
            return None
        try:
            return Extension.parse(self.q.extension)
        except ValueError as e:
            raise JobError("/q/extension", str(e)) from None

    def qmatrix(self) -> QMatrix:
        n = self.n
        ext = self.extension()
        symbolic = self.q.mode == "symbolic"
        entries = {}
        for key, text in self.q.entries.items():
            i, j = (int(x) for x in key.split(",")) if "," in key else (int(key[0]), int(key[1]))
            if not (1 <= i <= n and 1 <= j <= n):
                raise JobError(f"/q/entries/{key}", f"index outside 1..{n}")
            try:
                val = parse_scalar(str(text), n=n if symbolic else None, extension=ext)
            except (ValueError, ZeroDivisionError) as e:
                raise JobError(f"/q/entries/{key}", str(e)) from None
            if symbolic and not isinstance(val, LaurentScalar):
                val = LaurentScalar.constant(val, n)
            if not val:
                raise JobError(f"/q/entries/{key}", "q entries must be nonzero")
            entries[(i, j)] = val
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if (i, j) not in entries:
                    entries[(i, j)] = LaurentScalar.symbol(i, j, n) if symbolic else 1
        return QMatrix(self.alphabet, entries)

    def closed(self) -> ClosedSet:
        if self.closed_set is None:
            raise JobError("/closed_set", "required for this command")
        if not is_closed(self.closed_set, self.alphabet):
            raise JobError("/closed_set", "not a closed set")
        return ClosedSet.from_words(self.closed_set, self.alphabet)

    def relation_list(self) -> list[NcPoly]:
        if not self.relations:
            raise JobError("/relations", "required for this command")
        out = []
        n = self.n if self.q.mode == "symbolic" else None
        for k, s in enumerate(self.relations):
            try:
                out.append(parse_poly(s, self.alphabet, n=n, extension=self.extension()))
            except ValueError as e:
                raise JobError(f"/relations/{k}", str(e)) from None
        return out

    def g_map(self) -> dict[Word, SuperWordExpr] | None:
        if not self.g_values:
            return None
        n = self.n if self.q.mode == "symbolic" else None
        out = {}
        for key, items in self.g_values.items():
            v = parse_word(key, self.alphabet)
            expr = SuperWordExpr()
            for k, item in enumerate(items):
                where = f"/g_values/{key}/{k}"
                try:
                    tup = tuple(parse_word(s, self.alphabet) for s in item["word"])
                    c = parse_scalar(str(item["coeff"]), n=n, extension=self.extension())
                except ValueError as e:
                    raise JobError(where, str(e)) from None
                expr.add(tup, c)
            out[v] = expr
        return out

    def to_dict(self) -> dict:
        doc: dict = {"alphabet": {"n": self.n, "weights": list(self.alphabet.weights)}}
        fw = lambda ws: [format_word(w, self.alphabet) for w in ws]
        if self.closed_set is not None:
            doc["closed_set"] = fw(self.closed_set)
        if self.antichain is not None:
            doc["antichain"] = fw(self.antichain)
        if self.relations is not None:
            doc["relations"] = list(self.relations)
        doc["q"] = {"mode": self.q.mode, "entries": dict(self.q.entries)}
        if self.q.extension:
            doc["q"]["extension"] = self.q.extension
        doc["route"] = self.route
        for key in ("g_values", "cap", "p"):
            if getattr(self, key) is not None:
                doc[key] = getattr(self, key)
        return doc
