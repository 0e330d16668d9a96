import json

import pytest

from conftest import BUNDLES, bundle_path
from loglat.bundles import FieldBundle
from loglat.errors import BundleInvalid

GOLDEN = ["q_sqrt2.json", "q_sqrt3.json", "q_sqrt5.json", "c3_cubic.json",
          "q_sqrt2_sqrt3.json", "septic1.json", "septic2.json"]


@pytest.mark.parametrize("name", GOLDEN)
def test_golden_bundles_validate(name):
    b = FieldBundle.load(bundle_path(name))
    K = b.validate()
    assert K.totally_real
    assert len(b.unit_coords) == K.unit_rank


def _base_dict():
    return json.loads((BUNDLES / "q_sqrt2.json").read_text())


def test_bad_schema_rejected():
    d = _base_dict()
    d["schema"] = "fieldbundle/v0"
    with pytest.raises(BundleInvalid):
        FieldBundle.from_dict(d)


def test_missing_field_rejected():
    d = _base_dict()
    del d["class_number"]
    with pytest.raises(BundleInvalid):
        FieldBundle.from_dict(d)


def test_bad_unit_rejected_on_validate():
    d = _base_dict()
    d["units"] = [["3", "1"]]   # 3 + sqrt2 has norm 7
    b = FieldBundle.from_dict(d)
    with pytest.raises(BundleInvalid):
        b.validate()


def test_disc_sign_checked():
    d = _base_dict()
    d["disc"] = -8
    b = FieldBundle.from_dict(d)
    with pytest.raises(BundleInvalid):
        b.validate()


def test_unknown_stabilizer_rejected():
    d = _base_dict()
    d["galois_closure"]["stabilizer"] = "nope"
    b = FieldBundle.from_dict(d)
    with pytest.raises(BundleInvalid):
        b.validate()


def test_septic_closure_group():
    b = FieldBundle.load(bundle_path("septic1.json"))
    G = b.closure_group()
    assert G.order == 168
    H = b.stabilizer_subgroup(G)
    assert H.order == 24


def test_septic_units_are_exactly_units():
    for name in ("septic1.json", "septic2.json"):
        b = FieldBundle.load(bundle_path(name))
        K = b.to_field(128)
        for coords in b.unit_coords:
            assert K.element(coords).is_unit()
