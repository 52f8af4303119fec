"""Machine-readable results and their text / JSON / DOT renderings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .algebra import NEG_INF, POS_INF, ExtRat, Infinity
from .tower import BlowupTower, DivisorRecord
from .weighted import MldCertificate


class UnsupportedMode(ValueError):
    pass


KLT, LC_NOT_KLT, NOT_LC = "klt", "lc-not-klt", "not-lc"


def classify(value: ExtRat, curve_coefficients) -> str:
    if value == NEG_INF:
        return NOT_LC
    if value > 0 and all(c < 1 for c in curve_coefficients):
        return KLT
    return LC_NOT_KLT


@dataclass
class Report:
    command: str
    input: str
    value: ExtRat
    classification: str
    certificate: Optional[MldCertificate] = None
    ledger: Optional[list[DivisorRecord]] = None
    diagnostics: list[str] = field(default_factory=list)
    tower: Optional[BlowupTower] = None


def rat_json(q: Fraction) -> dict:
    q = Fraction(q)
    return {"num": q.numerator, "den": q.denominator}


def value_json(v: ExtRat) -> dict:
    if isinstance(v, Infinity):
        return {"type": "pos_inf" if v == POS_INF else "neg_inf"}
    return {"type": "rat", **rat_json(v)}


def certificate_json(c: MldCertificate) -> dict:
    wb = c.witness
    return {
        "w1": wb.w.w1,
        "w2": wb.w.w2,
        "linear": [[rat_json(x) for x in row] for row in wb.coords.linear],
        "shifts": [{"lambda": rat_json(lam), "k": k} for lam, k in wb.coords.shifts],
        "a_f": rat_json(c.a_f),
        "ord_f": rat_json(c.ord_f),
    }


def record_json(d: DivisorRecord) -> dict:
    out = {"id": d.id, "kind": d.kind}
    if d.k is not None:
        out["k"] = d.k
    out.update({
        "d": [rat_json(x) for x in d.d],
        "coeff": rat_json(d.coeff),
        "a": rat_json(d.a),
        "parents": list(d.parents),
    })
    return out


def report_json(r: Report) -> dict:
    out = {
        "command": r.command,
        "input": r.input,
        "value": value_json(r.value),
        "classification": r.classification,
    }
    if r.certificate is not None and r.certificate.witness is not None:
        out["certificate"] = certificate_json(r.certificate)
    if r.ledger is not None:
        out["ledger"] = [record_json(d) for d in r.ledger]
    out["diagnostics"] = list(r.diagnostics)
    return out


_RAT = {
    "type": "object",
    "properties": {"num": {"type": "integer"}, "den": {"type": "integer", "minimum": 1}},
    "required": ["num", "den"],
    "additionalProperties": False,
}

REPORT_SCHEMA = {
    "type": "object",
    "properties": {
        "command": {"type": "string"},
        "input": {"type": "string"},
        "value": {
            "type": "object",
            "properties": {
                "type": {"enum": ["rat", "neg_inf", "pos_inf"]},
                "num": {"type": "integer"},
                "den": {"type": "integer", "minimum": 1},
            },
            "required": ["type"],
            "additionalProperties": False,
        },
        "classification": {"enum": [KLT, LC_NOT_KLT, NOT_LC]},
        "certificate": {
            "type": "object",
            "properties": {
                "w1": {"type": "integer", "minimum": 1},
                "w2": {"type": "integer", "minimum": 1},
                "linear": {"type": "array", "items": {"type": "array", "items": _RAT,
                                                      "minItems": 2, "maxItems": 2},
                           "minItems": 2, "maxItems": 2},
                "shifts": {"type": "array", "items": {
                    "type": "object",
                    "properties": {"lambda": _RAT, "k": {"type": "integer", "minimum": 1}},
                    "required": ["lambda", "k"], "additionalProperties": False}},
                "a_f": _RAT,
                "ord_f": _RAT,
            },
            "required": ["w1", "w2", "linear", "shifts", "a_f", "ord_f"],
            "additionalProperties": False,
        },
        "ledger": {"type": "array", "items": {
            "type": "object",
            "properties": {
                "id": {"type": "string"},
                "kind": {"enum": ["exceptional", "strict_curve"]},
                "k": {"type": "integer", "minimum": 1},
                "d": {"type": "array", "items": _RAT},
                "coeff": _RAT,
                "a": _RAT,
                "parents": {"type": "array", "items": {"type": "string"}},
            },
            "required": ["id", "kind", "d", "coeff", "a", "parents"],
            "additionalProperties": False,
        }},
        "diagnostics": {"type": "array", "items": {"type": "string"}},
    },
    "required": ["command", "input", "value", "classification", "diagnostics"],
    "additionalProperties": False,
}


def _fmt(v) -> str:
    return str(v)


def report_text(r: Report) -> str:
    lines = [f"{r.command}: {r.input}",
             f"value: {_fmt(r.value)}",
             f"classification: {r.classification}"]
    c = r.certificate
    if c is not None and c.witness is not None:
        wb = c.witness
        lines.append(f"certificate: weights ({wb.w.w1}, {wb.w.w2}), coordinates {wb.coords.describe()}, "
                     f"a_F = {c.a_f}, ord_F = {c.ord_f}")
    if r.ledger is not None:
        lines.append("divisors:")
        for d in r.ledger:
            k = f" k={d.k}" if d.k is not None else ""
            par = f" parents={','.join(d.parents)}" if d.parents else ""
            ds = ",".join(str(x) for x in d.d)
            lines.append(f"  {d.id} [{d.kind}]{k} d=({ds}) coeff={d.coeff} a={d.a}{par}")
    for diag in r.diagnostics:
        lines.append(f"  # {diag}")
    return "\n".join(lines)


def report_dot(r: Report) -> str:
    if r.tower is None:
        raise UnsupportedMode("DOT output is only available for resolve")
    lines = ["graph dual {"]
    for d in r.tower.divisors:
        shape = "ellipse" if d.exceptional else "box"
        k = f"k={d.k} " if d.k is not None else ""
        lines.append(f'  {d.id} [shape={shape}, label="{d.id}\\n{k}coeff={d.coeff}\\na={d.a}"];')
    for u, v in sorted(r.tower.edges):
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines)


def format_report(r: Report, mode: str = "text") -> str:
    if mode == "text":
        return report_text(r)
    if mode == "json":
        return json.dumps(report_json(r), indent=2)
    if mode == "dot":
        return report_dot(r)
    raise UnsupportedMode(f"unknown mode {mode!r}")
