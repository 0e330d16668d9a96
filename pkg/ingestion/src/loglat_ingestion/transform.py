"""Payload-to-bundle transformation with a per-field trace log.

LMFDB number-field records carry units as polynomial strings in the field
generator `a`; bundles want rational coordinate vectors in the power basis.
Every bundle field records which payload key produced it (the SourceRecord
invariant: each bundle field is traceable to a raw payload line).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import SchemaDrift

REQUIRED_KEYS = ("label", "coeffs", "disc_abs", "disc_sign",
                 "class_number", "torsion_order", "units")


@dataclass
class SourceRecord:
    source: str                 # lmfdb | local-cas | manual
    query: str
    raw: dict
    transform_log: list = field(default_factory=list)

    def log(self, bundle_field: str, payload_key: str, note: str = ""):
        self.transform_log.append({
            "bundle_field": bundle_field,
            "payload_key": payload_key,
            "note": note,
        })


_TERM = re.compile(r"""
    (?P<sign>[+-]?)\s*
    (?P<coeff>\d+(?:/\d+)?)?\s*
    (?:\*?\s*(?P<var>a)(?:\^(?P<exp>\d+))?)?
    \s*""", re.VERBOSE)


def parse_unit_string(s: str, degree: int):
    """Polynomial in `a` with rational coefficients -> ascending vector."""
    text = s.replace(" ", "")
    if not text:
        raise SchemaDrift("empty unit string")
    out = [Fraction(0)] * degree
    pos = 0
    matched_any = False
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise SchemaDrift(f"cannot parse unit string {s!r} at {pos}")
        sign = -1 if m.group("sign") == "-" else 1
        coeff = m.group("coeff")
        var = m.group("var")
        exp = m.group("exp")
        if coeff is None and var is None:
            raise SchemaDrift(f"cannot parse unit string {s!r} at {pos}")
        c = Fraction(coeff) if coeff else Fraction(1)
        k = int(exp) if exp else (1 if var else 0)
        if k >= degree:
            raise SchemaDrift(f"unit exponent {k} beyond degree {degree}")
        out[k] += sign * c
        matched_any = True
        pos = m.end()
    if not matched_any:
        raise SchemaDrift(f"cannot parse unit string {s!r}")
    return out


def normalize_unit_sign(coords):
    """Strip the torsion factor: first nonzero coordinate made positive."""
    for c in coords:
        if c > 0:
            return list(coords)
        if c < 0:
            return [-x for x in coords]
    return list(coords)


def payload_to_bundle(record: dict, source: SourceRecord,
                      closure: dict = None, timestamp: str = "") -> dict:
    """One LMFDB-shaped number-field record -> FieldBundle dict."""
    for key in REQUIRED_KEYS:
        if key not in record:
            raise SchemaDrift(f"payload missing {key!r}")
    coeffs = record["coeffs"]
    if not isinstance(coeffs, list) or len(coeffs) < 2:
        raise SchemaDrift("coeffs must be the ascending coefficient list")
    degree = len(coeffs) - 1
    units = []
    for s in record["units"]:
        units.append([str(c) for c in
                      normalize_unit_sign(parse_unit_string(s, degree))])
    disc = int(record["disc_sign"]) * int(record["disc_abs"])
    bundle = {
        "schema": "fieldbundle/v1",
        "label": str(record["label"]),
        "poly": [str(c) for c in coeffs],
        "disc": disc,
        "class_number": int(record["class_number"]),
        "torsion_order": int(record["torsion_order"]),
        "units": units,
        "provenance": {
            "source": source.source,
            "timestamp": timestamp or "1970-01-01T00:00:00Z",
            "note": f"query: {source.query}",
        },
    }
    source.log("poly", "coeffs")
    source.log("disc", "disc_sign * disc_abs")
    source.log("class_number", "class_number")
    source.log("torsion_order", "torsion_order")
    source.log("units", "units", "parsed from generator-polynomial strings")
    if closure is not None:
        bundle["galois_closure"] = closure
        source.log("galois_closure", "manual-closures registry",
                   "degree-7 closure permutation data is not exposed "
                   "uniformly upstream; supplied manually")
    return bundle
