"""Command-line surface binding the lab together.

Commands: regulator, lattice {gram|min|isometry|similarity}, gassmann, symg,
gramform, cert-change-of-basis, relations, genericity, residue, pair-report,
elim, validate-bundle.  Usage errors exit 2 (argparse default); certification
failures exit 1; outputs are deterministic for fixed inputs.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .ball import BigReal
from .bundles import FieldBundle
from .elimination import desquare, format_poly, sign_orbit_product
from .errors import LogLatError
from .galois import (change_of_basis_certificate, gram_form,
                     recover_galois_action, weak_minkowski_search)
from .groups import PermGroupData, gassmann_equivalent
from .groupring import sym_g_space
from .lattice import (GramMatrix, isometry_test, shortest_vectors,
                      similarity_test)
from .numberfield import log_embed, log_lattice, regulator
from .reports import (ball_json, pair_report, report_json, report_to_text,
                      verdict_json)
from .residues import genericity_probe, relation_probe, residue_at_one


def _common(parser):
    parser.add_argument("--prec", type=int, default=None,
                        help="working precision in bits (default 128; "
                             "512 for relations/genericity probes)")
    parser.add_argument("--tol", type=str, default=None,
                        help="tolerance as 2^-k exponent k (default prec/2)")
    parser.add_argument("--bound", type=int, default=10 ** 6,
                        help="coefficient bound for relation search")
    parser.add_argument("--out", type=str, default=None,
                        help="write output to this path instead of stdout")
    parser.add_argument("--format", choices=("json", "text"), default="text")


def _emit(args, payload: dict, text: str = None) -> int:
    if args.format == "json" or text is None:
        out = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        out = text
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return 0


def _load_bundle(path: str) -> FieldBundle:
    b = FieldBundle.load(path)
    b.validate()
    return b


def _load_gram_or_bundle(path: str, prec: int) -> GramMatrix:
    with open(path) as fh:
        d = json.load(fh)
    if d.get("schema") == "gram/v1":
        return GramMatrix.from_json_dict(d)
    b = FieldBundle.from_dict(d)
    b.validate()
    K = b.to_field(prec)
    return log_lattice(K, b.unit_system(K), prec).gram


def _tol_ball(args):
    if args.tol is None:
        return None
    k = int(args.tol)
    import mpmath as mp
    return BigReal(mp.mpf(2) ** (-k), mp.mpf(0), args.prec)


def _load_group(args) -> PermGroupData:
    if args.group:
        with open(args.group) as fh:
            d = json.load(fh)
        gd = d.get("group", d)
        return PermGroupData.from_json_dict(gd, name=args.group)
    b = _load_bundle(args.bundle)
    G = b.closure_group()
    if G is None:
        raise LogLatError("bundle carries no galois_closure group")
    return G


def cmd_validate_bundle(args) -> int:
    b = FieldBundle.load(args.bundle)
    K = b.validate()
    payload = {"schema": "validate-report/v1",
               "label": b.label, "valid": True, "degree": K.degree,
               "signature": list(K.signature), "units": len(b.unit_coords),
               "provenance": b.provenance}
    return _emit(args, payload,
                 f"bundle {b.label}: valid (degree {K.degree}, "
                 f"{len(b.unit_coords)} units)\n")


def cmd_regulator(args) -> int:
    b = _load_bundle(args.bundle)
    K = b.to_field(args.prec)
    L = log_lattice(K, b.unit_system(K), args.prec)
    reg = regulator(L)
    payload = {"schema": "regulator-report/v1",
               "label": b.label, "prec": args.prec, "rank": L.rank,
               "regulator": ball_json(reg)}
    import mpmath as mp
    from .ball import guarded_workprec
    with guarded_workprec(args.prec):
        short = mp.nstr(reg.mid, max(int(args.prec * 0.3), 10))
    return _emit(args, payload,
                 f"reg({b.label}) = {short}  (± {float(reg.rad):.2e}, "
                 f"rank {L.rank})\n")


def cmd_lattice(args) -> int:
    if args.lattice_cmd == "gram":
        g = _load_gram_or_bundle(args.bundle, args.prec)
        return _emit(args, g.to_json_dict())
    if args.lattice_cmd == "min":
        g = _load_gram_or_bundle(args.bundle, args.prec)
        m, vecs = shortest_vectors(g)
        payload = {"schema": "minimum-report/v1",
                   "minimum": ball_json(m), "vectors": vecs,
                   "count_mod_sign": len(vecs)}
        return _emit(args, payload,
                     f"minimum = {float(m.mid):.12g} with {len(vecs)} "
                     f"vectors (mod sign)\n")
    g1 = _load_gram_or_bundle(args.a, args.prec)
    g2 = _load_gram_or_bundle(args.b, args.prec)
    if args.lattice_cmd == "isometry":
        v = isometry_test(g1, g2, _tol_ball(args))
        payload = dict(verdict_json(v), schema="isometry-report/v1")
        return _emit(args, payload, f"isometry: {v.tag}\n")
    v, lam = similarity_test(g1, g2, _tol_ball(args))
    payload = dict(verdict_json(v), scale=ball_json(lam),
                   schema="similarity-report/v1")
    tag = {"isometric": "similar", "not_isometric": "not similar",
           "inconclusive": "inconclusive"}[v.tag]
    return _emit(args, payload,
                 f"similarity: {tag} (lambda = {float(lam.mid):.12g})\n")


def cmd_gassmann(args) -> int:
    if args.group:
        G = _load_group(args)
        H1 = G.subgroup(G.subgroup_records[args.h1], name=args.h1)
        H2 = G.subgroup(G.subgroup_records[args.h2], name=args.h2)
    else:
        b1 = _load_bundle(args.a)
        b2 = _load_bundle(args.b)
        if not (b1.galois_closure and b2.galois_closure
                and b1.galois_closure.get("group")
                == b2.galois_closure.get("group")):
            raise LogLatError("bundles lack a shared closure group")
        G = b1.closure_group()
        H1 = b1.stabilizer_subgroup(G)
        H2 = b2.stabilizer_subgroup(G)
    eq = gassmann_equivalent(G, H1, H2)
    conj = G.subgroups_conjugate(H1, H2)
    payload = {"schema": "gassmann-report/v1",
               "group_order": G.order, "subgroup_orders": [H1.order, H2.order],
               "gassmann_equivalent": eq, "conjugate": conj}
    return _emit(args, payload,
                 f"gassmann equivalent: {eq} (conjugate: {conj})\n")


def cmd_symg(args) -> int:
    G = _load_group(args)
    basis = sym_g_space(G)
    payload = {
        "schema": "symg-report/v1",
        "group_order": G.order,
        "dimension": basis.dimension,
        "forms": [[[str(v) for v in row] for row in M]
                  for M in basis.forms],
    }
    return _emit(args, payload,
                 f"dim Sym^G = {basis.dimension} (group order {G.order})\n")


def _bundle_gram_form(b: FieldBundle, prec: int, effort: int = 2):
    K = b.to_field(prec)
    action = recover_galois_action(K, prec)
    us = b.unit_system(K)
    u = weak_minkowski_search(K, action, us, effort=effort, prec=prec)
    v = log_embed(K, u, prec)
    return K, action, u, gram_form(action, v, prec)


def cmd_gramform(args) -> int:
    b = _load_bundle(args.bundle)
    K, action, u, gf = _bundle_gram_form(b, args.prec)
    payload = {
        "schema": "gramform-report/v1",
        "label": b.label,
        "weak_minkowski_unit": [str(c) for c in u.coords],
        "gram": gf.gram_matrix().to_json_dict(),
    }
    return _emit(args, payload,
                 f"gram form of {b.label}: rank {len(gf.matrix)}, unit "
                 f"{[str(c) for c in u.coords]}\n")


def cmd_cert_change_of_basis(args) -> int:
    b = _load_bundle(args.bundle)
    K, action, u, gf = _bundle_gram_form(b, args.prec)
    L = log_lattice(K, b.unit_system(K), args.prec)
    cert = change_of_basis_certificate(L, gf, prec=args.prec)
    payload = {
        "schema": "cert-report/v1",
        "label": b.label,
        "matrix": [[str(v) for v in row] for row in cert.matrix],
        "residual": ball_json(cert.residual),
        "denominator_bound": cert.denom_bound_used,
    }
    return _emit(args, payload,
                 f"certificate found; residual <= {float(cert.residual.hi()):.3e}\n")


def cmd_relations(args) -> int:
    labeled = []
    if args.logs:
        ints = [int(x) for x in args.logs.split(",")]

        def make(prec):
            return [BigReal.exact(n, prec).log() for n in ints]
        labeled = list(zip([f"log({n})" for n in ints], make(args.prec)))
        recompute = make
    elif args.bundles:
        paths = args.bundles.split(",")
        bundles = [_load_bundle(p) for p in paths]

        def make(prec):
            vals = []
            for b in bundles:
                if args.quantity == "regulator":
                    K = b.to_field(prec)
                    vals.append(regulator(log_lattice(K, b.unit_system(K),
                                                      prec)))
                else:
                    vals.append(residue_at_one(b, prec).residue)
            return vals
        labeled = list(zip([b.label for b in bundles], make(args.prec)))
        recompute = make
    else:
        raise LogLatError("provide --logs or --bundles")
    rep = relation_probe(labeled, args.bound, args.prec, recompute=recompute)
    return _emit(args, rep.to_json_dict(),
                 f"relation probe: {rep.verdict} "
                 f"{rep.result.relation if rep.result.found else ''}\n")


def cmd_genericity(args) -> int:
    b = _load_bundle(args.bundle)

    def entries_at(prec):
        _, _, _, gf = _bundle_gram_form(b, prec)
        from .residues import _distinct_entries
        return _distinct_entries(gf)

    K, action, u, gf = _bundle_gram_form(b, args.prec)
    rep = genericity_probe(gf, args.degree, args.bound, args.prec,
                           recompute=entries_at)
    return _emit(args, rep.to_json_dict(),
                 f"genericity probe: {rep.verdict}; {rep.note}\n")


def cmd_residue(args) -> int:
    b = _load_bundle(args.bundle)
    rec = residue_at_one(b, args.prec)
    payload = {
        "schema": "residue-report/v1",
        "label": rec.label,
        "signature": [rec.r, rec.s],
        "class_number": rec.class_number,
        "disc": rec.disc,
        "regulator": ball_json(rec.regulator),
        "residue": ball_json(rec.residue),
        "ratio_rational": str(rec.ratio_rational),
    }
    return _emit(args, payload,
                 f"res_{{s=1}} zeta_{rec.label} = {float(rec.residue.mid):.15g}"
                 f" = {rec.ratio_rational}/sqrt({abs(rec.disc)}) * reg\n")


def cmd_pair_report(args) -> int:
    b1 = _load_bundle(args.a)
    b2 = _load_bundle(args.b)
    rep = pair_report(b1, b2, args.prec)
    if args.format == "json":
        return _emit(args, rep)
    text = report_to_text(rep)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_elim(args) -> int:
    coeffs = [Fraction(x) for x in args.coeffs.split(",")]
    h = sign_orbit_product(coeffs)
    f = desquare(h)
    payload = {"schema": "elim-report/v1",
               "coefficients": [str(c) for c in coeffs],
               "orbit_product": format_poly(h),
               "desquared": format_poly(f)}
    return _emit(args, payload,
                 f"h  = {format_poly(h)}\nf  = {format_poly(f)}\n")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="loglat",
        description="log-unit lattice laboratory: regulators, Gram forms, "
                    "Gassmann data, relation probes")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        sp = sub.add_parser(name, **kwargs)
        _common(sp)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("validate-bundle", cmd_validate_bundle)
    sp.add_argument("--bundle", required=True)

    sp = add("regulator", cmd_regulator)
    sp.add_argument("--bundle", required=True)

    sp = add("lattice", cmd_lattice)
    sp.add_argument("lattice_cmd",
                    choices=("gram", "min", "isometry", "similarity"))
    sp.add_argument("--bundle", help="bundle or gram JSON (gram, min)")
    sp.add_argument("--a", help="first bundle/gram (isometry, similarity)")
    sp.add_argument("--b", help="second bundle/gram")

    sp = add("gassmann", cmd_gassmann)
    sp.add_argument("--a")
    sp.add_argument("--b")
    sp.add_argument("--group", help="standalone group JSON")
    sp.add_argument("--h1")
    sp.add_argument("--h2")

    sp = add("symg", cmd_symg)
    sp.add_argument("--group")
    sp.add_argument("--bundle")

    sp = add("gramform", cmd_gramform)
    sp.add_argument("--bundle", required=True)

    sp = add("cert-change-of-basis", cmd_cert_change_of_basis)
    sp.add_argument("--bundle", required=True)

    sp = add("relations", cmd_relations)
    sp.add_argument("--logs", help="comma-separated integers to probe logs of")
    sp.add_argument("--bundles", help="comma-separated bundle paths")
    sp.add_argument("--quantity", choices=("regulator", "residue"),
                    default="regulator")

    sp = add("genericity", cmd_genericity)
    sp.add_argument("--bundle", required=True)
    sp.add_argument("--degree", type=int, default=2)

    sp = add("residue", cmd_residue)
    sp.add_argument("--bundle", required=True)

    sp = add("pair-report", cmd_pair_report)
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)

    sp = add("elim", cmd_elim)
    sp.add_argument("--coeffs", required=True,
                    help="comma-separated rational coefficients")
    return p


PROBE_COMMANDS = ("cmd_relations", "cmd_genericity")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "prec", None) is None:
        args.prec = 512 if args.fn.__name__ in PROBE_COMMANDS else 128
    try:
        return args.fn(args)
    except LogLatError as exc:
        sys.stderr.write(f"certification failure: {exc}\n")
        return 1
    except FileNotFoundError as exc:
        sys.stderr.write(f"input not found: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
