"""FieldBundle files: the exchange format binding a field to its unit data.

A bundle carries everything the lab ingests rather than computes: defining
polynomial, discriminant, class number, torsion order, fundamental units (as
rational power-basis coordinates), and optional Galois-closure group data.
Loading re-validates what can be checked exactly: schema shape, unit norms
(integral characteristic polynomial with constant term ±1), and the
discriminant sign against the signature.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .errors import BundleInvalid
from .groups import PermGroupData
from .numberfield import NumberField, UnitSystem, build_field
from .ratpoly import RationalPoly

SCHEMA = "fieldbundle/v1"


def _frac(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        return Fraction(s)
    raise BundleInvalid(f"expected rational string, got {type(s)}")


@dataclass
class FieldBundle:
    label: str
    poly: RationalPoly
    disc: int
    class_number: int
    torsion_order: int
    unit_coords: list
    galois_closure: Optional[dict]
    provenance: dict
    raw: dict = field(repr=False, default=None)

    @classmethod
    def from_dict(cls, d: dict) -> "FieldBundle":
        if d.get("schema") != SCHEMA:
            raise BundleInvalid(f"schema must be {SCHEMA}")
        required = ["label", "poly", "disc", "class_number",
                    "torsion_order", "units", "provenance"]
        for key in required:
            if key not in d:
                raise BundleInvalid(f"missing field {key!r}")
        poly = RationalPoly([_frac(c) for c in d["poly"]])
        if poly.degree < 1:
            raise BundleInvalid("polynomial must have degree >= 1")
        units = [[_frac(c) for c in u] for u in d["units"]]
        if not isinstance(d["disc"], int) or not isinstance(
                d["class_number"], int) or not isinstance(
                d["torsion_order"], int):
            raise BundleInvalid("disc/class_number/torsion_order must be ints")
        if d["class_number"] < 1 or d["torsion_order"] < 1:
            raise BundleInvalid("class_number/torsion_order must be positive")
        prov = d["provenance"]
        if not isinstance(prov, dict) or "source" not in prov:
            raise BundleInvalid("provenance.source required")
        return cls(label=str(d["label"]), poly=poly, disc=d["disc"],
                   class_number=d["class_number"],
                   torsion_order=d["torsion_order"], unit_coords=units,
                   galois_closure=d.get("galois_closure"), provenance=prov,
                   raw=d)

    @classmethod
    def load(cls, path) -> "FieldBundle":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def to_field(self, prec: int) -> NumberField:
        return build_field(self.poly, prec, trust_irreducible=True)

    def unit_system(self, K: NumberField) -> UnitSystem:
        return UnitSystem([K.element(c) for c in self.unit_coords],
                          provenance=self.provenance.get("source", "bundle"))

    def validate(self, prec: int = 96) -> NumberField:
        """Run all load-time checks; returns the built field."""
        K = self.to_field(prec)
        r, s = K.signature
        expected_sign = 1 if s % 2 == 0 else -1
        if self.disc == 0 or (1 if self.disc > 0 else -1) != expected_sign:
            raise BundleInvalid(
                f"disc sign {self.disc} inconsistent with signature {K.signature}")
        for coords in self.unit_coords:
            u = K.element(coords)
            if not u.is_unit():
                raise BundleInvalid(
                    f"unit {coords} fails the exact norm check")
        if self.torsion_order != 2 and K.totally_real:
            raise BundleInvalid("totally real fields have torsion order 2")
        if self.galois_closure is not None:
            self.closure_group()
        return K

    def closure_group(self) -> Optional[PermGroupData]:
        gc = self.galois_closure
        if gc is None:
            return None
        if "group" not in gc:
            raise BundleInvalid("galois_closure.group missing")
        G = PermGroupData.from_json_dict(gc["group"], name=self.label + ".G")
        stab = gc.get("stabilizer")
        if stab is not None and stab not in gc["group"].get("subgroups", {}):
            raise BundleInvalid(f"stabilizer {stab!r} not among subgroups")
        return G

    def stabilizer_subgroup(self, G: PermGroupData) -> Optional[PermGroupData]:
        gc = self.galois_closure or {}
        stab = gc.get("stabilizer")
        if stab is None:
            return None
        gens = G.subgroup_records[stab]
        return G.subgroup(gens, name=stab)


def dump_bundle(bundle_dict: dict, path) -> None:
    Path(path).write_text(json.dumps(bundle_dict, indent=2, sort_keys=True)
                          + "\n")
