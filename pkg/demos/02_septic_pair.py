"""Walkthrough: the arithmetically equivalent septic pair.

Two totally real degree-7 fields share their zeta function and regulator,
yet their log-unit lattices are certifiably not even similar.  Run from the
repo root:  python3 demos/02_septic_pair.py
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

import mpmath as mp

from loglat import FieldBundle, pair_report, report_to_text
from loglat.reports import report_json

BUNDLES = Path(__file__).resolve().parent.parent / "bundles"

b1 = FieldBundle.load(BUNDLES / "septic1.json")
b2 = FieldBundle.load(BUNDLES / "septic2.json")
print(f"fields: {b1.label} / {b2.label}, shared |disc| = {b1.disc}")
print(f"closure group of order 168 with point/plane stabilizers\n")

rep = pair_report(b1, b2, 256)
print(report_to_text(rep))

out = Path(__file__).resolve().parent / "septic_pair_report.json"
out.write_text(report_json(rep))
print(f"full JSON report written to {out.name}")
