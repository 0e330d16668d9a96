"""Structured pair reports: regulators, Gassmann verdicts, lattice verdicts,
and the consistency matrix against the conditional implications.

Reports are deterministic for fixed inputs (no clocks, sorted keys); rows
that depend on the unproved independence hypothesis carry an explicit
CONDITIONAL tag and are never asserted unconditionally.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .ball import BigReal
from .bundles import FieldBundle
from .errors import LogLatError
from .groups import gassmann_equivalent
from .lattice import GramMatrix, dyadic_to_decimal, isometry_test, similarity_test, shortest_vectors
from .numberfield import log_lattice, regulator
from .residues import relation_probe

REPORT_SCHEMA = "pair-report/v1"


def ball_json(b: BigReal) -> dict:
    return {"mid": dyadic_to_decimal(b.mid_fraction()),
            "rad": dyadic_to_decimal(b.rad_fraction())}


def bits_below(b: BigReal):
    """Largest N with |b| certified < 2^-N, or None when b is nonzero."""
    if b.is_nonzero():
        return None
    hi = abs(b.mid_fraction()) + b.rad_fraction()
    if hi == 0:
        return 10 ** 6
    # largest N with hi < 2^-N
    inv = 1 / hi
    n = inv.numerator // inv.denominator
    if n < 1:
        return 0
    return n.bit_length() - 1


def verdict_json(v) -> dict:
    d = {"tag": v.tag}
    if v.witness is not None:
        d["witness"] = v.witness
    if v.separating is not None:
        name, a, b = v.separating
        def enc(x):
            if isinstance(x, BigReal):
                return ball_json(x)
            return x
        d["separating"] = {"invariant": name, "first": enc(a),
                           "second": enc(b)}
    return d


def pair_report(b1: FieldBundle, b2: FieldBundle, prec: int) -> dict:
    """Full comparison record for two totally real field bundles."""
    K1 = b1.to_field(prec)
    K2 = b2.to_field(prec)
    if not (K1.totally_real and K2.totally_real):
        raise LogLatError("pair_report scope: totally real fields")
    L1 = log_lattice(K1, b1.unit_system(K1), prec)
    L2 = log_lattice(K2, b2.unit_system(K2), prec)
    reg1, reg2 = regulator(L1), regulator(L2)

    def recompute(prec2):
        K1b = b1.to_field(prec2)
        K2b = b2.to_field(prec2)
        return [regulator(log_lattice(K1b, b1.unit_system(K1b), prec2)),
                regulator(log_lattice(K2b, b2.unit_system(K2b), prec2))]

    lab1, lab2 = b1.label, b2.label
    if lab1 == lab2:
        lab1, lab2 = lab1 + "#1", lab2 + "#2"
    probe = relation_probe([(lab1, reg1), (lab2, reg2)],
                           coeff_bound=10 ** 6, prec=prec,
                           recompute=recompute)
    diff_bits = bits_below(reg1 - reg2)
    regs_equal = (probe.verdict == "FOUND"
                  and probe.result.relation == [1, -1])

    gassmann_section = {"available": False}
    if b1.galois_closure and b2.galois_closure:
        g1d = b1.galois_closure.get("group")
        g2d = b2.galois_closure.get("group")
        if g1d == g2d and b1.galois_closure.get("stabilizer") \
                and b2.galois_closure.get("stabilizer"):
            G = b1.closure_group()
            H1 = b1.stabilizer_subgroup(G)
            H2 = b2.stabilizer_subgroup(G)
            eq = gassmann_equivalent(G, H1, H2)
            conj = G.subgroups_conjugate(H1, H2)
            gassmann_section = {
                "available": True,
                "group_order": G.order,
                "index": G.order // H1.order,
                "equivalent": eq,
                "subgroups_conjugate": conj,
            }

    min1, vecs1 = shortest_vectors(L1.gram)
    min2, vecs2 = shortest_vectors(L2.gram)
    iso = isometry_test(L1.gram, L2.gram)
    sim, lam = similarity_test(L1.gram, L2.gram)

    consistency = []
    if iso.tag == "isometric":
        status = "consistent" if (diff_bits is not None
                                  and diff_bits >= prec // 4) else "violated"
    elif iso.tag == "not_isometric":
        status = "not-applicable"
    else:
        status = "inconclusive"
    consistency.append({
        "implication": "isometric log lattices => equal regulators",
        "conditional": False,
        "status": status,
    })
    if regs_equal:
        if gassmann_section.get("available"):
            status = "consistent" if gassmann_section["equivalent"] \
                else "counterexample-candidate"
        else:
            status = "untested (no closure data)"
    else:
        status = "not-applicable"
    consistency.append({
        "implication": ("equal regulators => arithmetically equivalent "
                        "(CONDITIONAL on the independence hypothesis)"),
        "conditional": True,
        "status": status,
    })

    report = {
        "schema": REPORT_SCHEMA,
        "prec": prec,
        "fields": [
            {"label": b1.label, "degree": K1.degree,
             "signature": list(K1.signature),
             "provenance": b1.provenance},
            {"label": b2.label, "degree": K2.degree,
             "signature": list(K2.signature),
             "provenance": b2.provenance},
        ],
        "regulators": {
            "first": ball_json(reg1),
            "second": ball_json(reg2),
            "difference_below_bits": diff_bits,
            "relation_probe": probe.to_json_dict(),
            "equal_to_probe_precision": regs_equal,
        },
        "gassmann": gassmann_section,
        "lattice": {
            "rank": L1.rank,
            "minimum_first": ball_json(min1),
            "minimum_second": ball_json(min2),
            "minimal_vector_counts": [len(vecs1), len(vecs2)],
            "isometry": verdict_json(iso),
            "similarity": dict(verdict_json(sim), scale=ball_json(lam)),
        },
        "consistency": consistency,
    }
    return report


def report_to_text(report: dict) -> str:
    lines = []
    f1, f2 = report["fields"]
    lines.append(f"pair report: {f1['label']}  vs  {f2['label']}"
                 f"  (prec {report['prec']})")
    regs = report["regulators"]
    lines.append(f"  reg({f1['label']}) = {_short(regs['first']['mid'])}")
    lines.append(f"  reg({f2['label']}) = {_short(regs['second']['mid'])}")
    bits = regs["difference_below_bits"]
    if bits is not None:
        lines.append(f"  regulators agree to >= {bits} bits; relation probe: "
                     f"{regs['relation_probe']['verdict']}"
                     f" {regs['relation_probe'].get('relation', '')}")
    else:
        lines.append("  regulators certified distinct")
    g = report["gassmann"]
    if g.get("available"):
        lines.append(f"  gassmann equivalent: {g['equivalent']}"
                     f" (order-{g['group_order']} closure, index {g['index']};"
                     f" subgroups conjugate: {g['subgroups_conjugate']})")
    else:
        lines.append("  gassmann: no closure data")
    lat = report["lattice"]
    lines.append(f"  lattice rank {lat['rank']}: minima "
                 f"{_short(lat['minimum_first']['mid'])} vs "
                 f"{_short(lat['minimum_second']['mid'])}")
    lines.append(f"  isometry: {lat['isometry']['tag']}"
                 + _sep_text(lat["isometry"]))
    lines.append(f"  similarity: {lat['similarity']['tag']}"
                 + _sep_text(lat["similarity"]))
    lines.append("  consistency:")
    for row in report["consistency"]:
        tag = " [CONDITIONAL]" if row["conditional"] else ""
        lines.append(f"    - {row['implication']}{tag}: {row['status']}")
    return "\n".join(lines) + "\n"


def _short(dec: str, digits: int = 20) -> str:
    return dec[:digits + (1 if dec.startswith("-") else 0)]


def _sep_text(v: dict) -> str:
    sep = v.get("separating")
    if not sep:
        return ""
    first = sep["first"]
    second = sep["second"]
    a = _short(first["mid"]) if isinstance(first, dict) else str(first)
    b = _short(second["mid"]) if isinstance(second, dict) else str(second)
    return f" (separating {sep['invariant']}: {a} vs {b})"


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"
