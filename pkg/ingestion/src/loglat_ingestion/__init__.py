"""FieldBundle ingestion: LMFDB client, local-CAS driver, primary-CLI
validation.  The primary package is consumed only through its command-line
surface and the FieldBundle JSON schema."""

from .errors import (CASUnavailable, IngestionError, NotFound, SchemaDrift,
                     UnitRankDeficient, ValidationFailed)
from .lmfdb import fetch_lmfdb, fetch_raw, write_bundle
from .localcas import cas_available, compute_local
from .primary import grams_unimodular_equivalent, validate_bundle
from .transform import SourceRecord, parse_unit_string, payload_to_bundle

__all__ = [name for name in dir() if not name.startswith("_")]
