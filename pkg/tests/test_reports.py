import mpmath as mp
import pytest

from conftest import bundle_path
from loglat.bundles import FieldBundle
from loglat.reports import bits_below, pair_report, report_to_text
from loglat.ball import BigReal


def test_bits_below():
    # zero-straddling tiny ball: certified below ~2^-100
    tiny = BigReal(mp.mpf(0), mp.mpf(2) ** -100, 128)
    n = bits_below(tiny)
    assert 95 <= n <= 100
    # certified nonzero: no "below" certificate at all
    big = BigReal(mp.mpf(1), mp.mpf(2) ** -50, 128)
    assert bits_below(big) is None
    off = BigReal(mp.mpf(2) ** -100, mp.mpf(2) ** -110, 128)
    assert bits_below(off) is None


def test_pair_report_same_bundle():
    b = FieldBundle.load(bundle_path("q_sqrt2.json"))
    rep = pair_report(b, b, 128)
    assert rep["regulators"]["equal_to_probe_precision"]
    assert rep["lattice"]["isometry"]["tag"] == "isometric"
    assert rep["lattice"]["similarity"]["tag"] == "isometric"
    rows = {r["implication"]: r for r in rep["consistency"]}
    iso_row = next(r for r in rep["consistency"]
                   if r["implication"].startswith("isometric"))
    assert iso_row["status"] == "consistent"
    cond_row = next(r for r in rep["consistency"] if r["conditional"])
    assert "CONDITIONAL" in cond_row["implication"]


def test_pair_report_distinct_quadratics():
    b1 = FieldBundle.load(bundle_path("q_sqrt2.json"))
    b2 = FieldBundle.load(bundle_path("q_sqrt3.json"))
    rep = pair_report(b1, b2, 160)
    assert not rep["regulators"]["equal_to_probe_precision"]
    assert rep["regulators"]["difference_below_bits"] is None
    # the two bundles share the biquadratic closure: distinct index-2
    # stabilizers are not Gassmann equivalent
    assert rep["gassmann"]["available"]
    assert rep["gassmann"]["equivalent"] is False
    cond_row = next(r for r in rep["consistency"] if r["conditional"])
    assert cond_row["status"] == "not-applicable"


def test_pair_report_text_renders():
    b1 = FieldBundle.load(bundle_path("q_sqrt2.json"))
    b2 = FieldBundle.load(bundle_path("q_sqrt3.json"))
    rep = pair_report(b1, b2, 128)
    text = report_to_text(rep)
    assert "pair report" in text
    assert "regulators certified distinct" in text


def test_pair_report_septics_full():
    b1 = FieldBundle.load(bundle_path("septic1.json"))
    b2 = FieldBundle.load(bundle_path("septic2.json"))
    rep = pair_report(b1, b2, 256)
    regs = rep["regulators"]
    assert regs["relation_probe"]["verdict"] == "FOUND"
    assert regs["relation_probe"]["relation"] == [1, -1]
    assert regs["difference_below_bits"] >= 200
    g = rep["gassmann"]
    assert g["available"] and g["equivalent"] and not g["subgroups_conjugate"]
    lat = rep["lattice"]
    assert lat["rank"] == 6
    assert lat["isometry"]["tag"] == "not_isometric"
    assert lat["isometry"]["separating"]["invariant"] == "minimum"
    assert lat["similarity"]["tag"] == "not_isometric"
    iso_row = next(r for r in rep["consistency"]
                   if r["implication"].startswith("isometric"))
    assert iso_row["status"] == "not-applicable"
    cond_row = next(r for r in rep["consistency"] if r["conditional"])
    assert cond_row["status"] == "consistent"
