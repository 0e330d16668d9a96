"""LMFDB number-field client with an on-disk raw-payload cache.

Queries hit ``/api/nf_fields`` by label or defining polynomial.  Raw
payloads are stored beside the produced bundles (keyed by the normalized
query) so that every run is reproducible offline; a cache hit never touches
the network.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Optional

from .errors import NotFound, SchemaDrift
from .transform import SourceRecord, payload_to_bundle

LMFDB_API = "https://www.lmfdb.org/api/nf_fields/"
DEFAULT_CACHE = Path(__file__).resolve().parent.parent.parent / "cache"


def _normalize_query(label_or_poly) -> str:
    if isinstance(label_or_poly, (list, tuple)):
        return "poly:" + ",".join(str(int(c)) for c in label_or_poly)
    return "label:" + str(label_or_poly).strip()


def _cache_path(cache_dir: Path, query: str) -> Path:
    h = hashlib.sha256(query.encode()).hexdigest()[:16]
    safe = query.replace(":", "_").replace(",", "_").replace("^", "")
    return Path(cache_dir) / f"{safe[:60]}.{h}.json"


def _http_fetch(query: str, timeout: float):
    import requests
    if query.startswith("label:"):
        params = {"label": query[6:], "_format": "json"}
    else:
        coeffs = query[5:]
        params = {"coeffs": coeffs, "_format": "json"}
    resp = requests.get(LMFDB_API, params=params, timeout=timeout)
    resp.raise_for_status()
    return resp.json()


def fetch_raw(label_or_poly, cache_dir=DEFAULT_CACHE, offline: bool = False,
              timeout: float = 30.0) -> dict:
    """Raw LMFDB payload for the query, from cache or the live API."""
    query = _normalize_query(label_or_poly)
    path = _cache_path(Path(cache_dir), query)
    if path.exists():
        return json.loads(path.read_text())
    if offline:
        raise NotFound(f"{query} not in cache and offline mode requested")
    payload = _http_fetch(query, timeout)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=1, sort_keys=True) + "\n")
    return payload


def _manual_closures(cache_dir: Path) -> dict:
    path = Path(cache_dir) / "manual_closures.json"
    if path.exists():
        return json.loads(path.read_text())
    return {}


def fetch_lmfdb(label_or_poly, cache_dir=DEFAULT_CACHE, offline: bool = False,
                timestamp: str = "") -> tuple[dict, SourceRecord]:
    """FieldBundle dict (plus its SourceRecord) for an LMFDB field.

    The payload's first matching record is transformed; degree-7 fields can
    pick up manually supplied Galois-closure permutation data from the
    cache's ``manual_closures.json`` registry (the upstream API does not
    expose closure permutation data uniformly).
    """
    query = _normalize_query(label_or_poly)
    payload = fetch_raw(label_or_poly, cache_dir, offline)
    records = payload.get("data")
    if not isinstance(records, list):
        raise SchemaDrift("payload has no 'data' list")
    if not records:
        raise NotFound(f"no nf_fields record matches {query}")
    record = records[0]
    source = SourceRecord(source="lmfdb", query=query, raw=record)
    closures = _manual_closures(Path(cache_dir))
    closure = closures.get(str(record.get("label", "")))
    if closure is not None:
        source.source = "lmfdb"   # field data upstream; closure manual
    bundle = payload_to_bundle(record, source, closure=closure,
                               timestamp=timestamp)
    return bundle, source


def write_bundle(bundle: dict, out_path) -> Path:
    out = Path(out_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(bundle, indent=2, sort_keys=True) + "\n")
    return out
