"""Interface to the primary component: everything goes through its CLI.

The ingestion side never imports the primary package; bundles are validated
by shelling out to ``loglat validate-bundle`` and Gram comparisons go
through ``loglat lattice isometry``.
"""

from __future__ import annotations

import json
import shutil
import subprocess
import tempfile
from pathlib import Path

from .errors import ValidationFailed

PRIMARY_CLI = "loglat"


def _cli_available() -> bool:
    return shutil.which(PRIMARY_CLI) is not None


def validate_bundle(path) -> dict:
    """Run the primary validate-bundle; raises ValidationFailed on exit != 0."""
    if not _cli_available():
        raise ValidationFailed("primary CLI 'loglat' not on PATH")
    proc = subprocess.run(
        [PRIMARY_CLI, "validate-bundle", "--bundle", str(path),
         "--format", "json"],
        capture_output=True, text=True)
    if proc.returncode != 0:
        raise ValidationFailed(
            f"validate-bundle exited {proc.returncode}: {proc.stderr.strip()}")
    return json.loads(proc.stdout)


def validate_bundle_dict(bundle: dict) -> dict:
    with tempfile.NamedTemporaryFile("w", suffix=".json",
                                     delete=False) as fh:
        json.dump(bundle, fh)
        tmp = fh.name
    try:
        return validate_bundle(tmp)
    finally:
        Path(tmp).unlink(missing_ok=True)


def grams_unimodular_equivalent(path_a, path_b, prec: int = 256,
                                tol_bits: int = 80) -> bool:
    """Primary isometry verdict between the log-lattice Grams of two
    bundles at the requested tolerance."""
    if not _cli_available():
        raise ValidationFailed("primary CLI 'loglat' not on PATH")
    proc = subprocess.run(
        [PRIMARY_CLI, "lattice", "isometry", "--a", str(path_a),
         "--b", str(path_b), "--prec", str(prec), "--tol", str(tol_bits),
         "--format", "json"],
        capture_output=True, text=True)
    if proc.returncode != 0:
        raise ValidationFailed(
            f"lattice isometry exited {proc.returncode}: {proc.stderr.strip()}")
    verdict = json.loads(proc.stdout)
    return verdict.get("tag") == "isometric"
