"""Offline alternative: drive a local PARI/GP binary over text pipes.

``compute_local`` produces the same FieldBundle schema as the LMFDB path
with provenance "local-cas"; cross-checking against an LMFDB bundle (when
both are available) goes through the primary CLI's isometry verdict.
"""

from __future__ import annotations

import json
import shutil
import subprocess
from fractions import Fraction

from .errors import CASUnavailable, SchemaDrift, UnitRankDeficient
from .transform import SourceRecord

GP_BINARY = "gp"


def cas_available() -> bool:
    return shutil.which(GP_BINARY) is not None


def _gp_script(coeffs) -> str:
    poly = "Pol(Vecrev(%s))" % json.dumps([int(c) for c in coeffs])
    return f"""
default(parisize, "256M");
K = bnfinit({poly}, 1);
print("DISC ", K.disc);
print("H ", K.no);
print("TORS ", K.tu[1]);
for(i = 1, #K.fu, print("UNIT ", Vecrev(lift(K.fu[i]))));
quit;
"""


def compute_local(coeffs, timestamp: str = "") -> tuple[dict, SourceRecord]:
    """FieldBundle dict for the field defined by the ascending integer
    coefficient list, computed by a local gp binary."""
    if not cas_available():
        raise CASUnavailable(f"{GP_BINARY!r} not on PATH")
    script = _gp_script(coeffs)
    proc = subprocess.run([GP_BINARY, "-q", "-f"], input=script,
                          capture_output=True, text=True, timeout=600)
    if proc.returncode != 0:
        raise CASUnavailable(f"gp exited {proc.returncode}: "
                             f"{proc.stderr.strip()[:400]}")
    disc = h = tors = None
    units = []
    for line in proc.stdout.splitlines():
        line = line.strip()
        if line.startswith("DISC "):
            disc = int(line[5:])
        elif line.startswith("H "):
            h = int(line[2:])
        elif line.startswith("TORS "):
            tors = int(line[5:])
        elif line.startswith("UNIT "):
            vec = line[5:].strip()
            if not (vec.startswith("[") and vec.endswith("]")):
                raise SchemaDrift(f"unexpected gp unit line: {line!r}")
            coords = [c.strip() for c in vec[1:-1].split(",") if c.strip()]
            units.append([str(Fraction(c)) for c in coords])
    if disc is None or h is None or tors is None:
        raise SchemaDrift("gp output missing DISC/H/TORS lines")
    degree = len(coeffs) - 1
    if len(units) != _expected_unit_rank(coeffs, degree):
        raise UnitRankDeficient(
            f"gp returned {len(units)} fundamental units")
    source = SourceRecord(source="local-cas",
                          query="poly:" + ",".join(map(str, coeffs)),
                          raw={"stdout": proc.stdout})
    bundle = {
        "schema": "fieldbundle/v1",
        "label": "local-" + "_".join(str(c) for c in coeffs),
        "poly": [str(int(c)) for c in coeffs],
        "disc": disc,
        "class_number": h,
        "torsion_order": tors,
        "units": units,
        "provenance": {
            "source": "local-cas",
            "timestamp": timestamp or "1970-01-01T00:00:00Z",
            "note": "bnfinit via local gp subprocess",
        },
    }
    for fieldname, key in (("poly", "input"), ("disc", "DISC"),
                           ("class_number", "H"), ("torsion_order", "TORS"),
                           ("units", "UNIT lines")):
        source.log(fieldname, key)
    return bundle, source


def _expected_unit_rank(coeffs, degree) -> int:
    # totally real scope: r + s - 1 = degree - 1; complex fields would need
    # the signature, which gp also knows, but the lab's scope is real
    return degree - 1
