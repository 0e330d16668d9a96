"""loglat-ingest: fetch validated FieldBundle files.

  loglat-ingest fetch --label 2.2.8.1 --out bundle.json [--offline]
  loglat-ingest fetch --poly -2,0,1 --out bundle.json
  loglat-ingest local --poly -2,0,1 --out bundle.json
  loglat-ingest compare --a x.json --b y.json [--tol 80] [--prec 256]
"""

from __future__ import annotations

import argparse
import sys

from .errors import IngestionError
from .lmfdb import fetch_lmfdb, write_bundle, DEFAULT_CACHE
from .localcas import compute_local
from .primary import grams_unimodular_equivalent, validate_bundle


def main(argv=None) -> int:
    p = argparse.ArgumentParser(prog="loglat-ingest")
    sub = p.add_subparsers(dest="command", required=True)

    f = sub.add_parser("fetch")
    f.add_argument("--label")
    f.add_argument("--poly", help="ascending comma-separated coefficients")
    f.add_argument("--out", required=True)
    f.add_argument("--cache", default=str(DEFAULT_CACHE))
    f.add_argument("--offline", action="store_true")

    l = sub.add_parser("local")
    l.add_argument("--poly", required=True)
    l.add_argument("--out", required=True)

    c = sub.add_parser("compare")
    c.add_argument("--a", required=True)
    c.add_argument("--b", required=True)
    c.add_argument("--tol", type=int, default=80)
    c.add_argument("--prec", type=int, default=256)

    args = p.parse_args(argv)
    try:
        if args.command == "fetch":
            query = args.label if args.label else \
                [int(x) for x in args.poly.split(",")]
            bundle, source = fetch_lmfdb(query, cache_dir=args.cache,
                                         offline=args.offline)
            path = write_bundle(bundle, args.out)
            validate_bundle(path)
            print(f"wrote {path} ({len(source.transform_log)} traced fields)")
            return 0
        if args.command == "local":
            coeffs = [int(x) for x in args.poly.split(",")]
            bundle, source = compute_local(coeffs)
            path = write_bundle(bundle, args.out)
            validate_bundle(path)
            print(f"wrote {path}")
            return 0
        ok = grams_unimodular_equivalent(args.a, args.b, prec=args.prec,
                                         tol_bits=args.tol)
        print("unimodular-equivalent" if ok else "NOT equivalent")
        return 0 if ok else 1
    except IngestionError as exc:
        sys.stderr.write(f"ingestion error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
