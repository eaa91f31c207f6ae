"""Command-line surface: build, enumerate, close, verify, certify.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import golden
from .closure import (
    ClosureError,
    EmbeddingError,
    close_catalog,
    closure_json_dict,
    jacobi_spot_check,
    verify_embedding,
)
from .commutant import build_catalog, catalog_json_dict
from .liealg import FAMILIES, build_algebra, dumps as algebra_dumps
from .superint import CertificationError, certify_system

DEGREE_WORDS = {
    0: "abelian",
    1: "linear",
    2: "quadratic",
    3: "cubic",
    4: "quartic",
    5: "quintic",
    6: "sextic",
}


def _emit(text, out):
    if not text.endswith("\n"):
        text += "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(doc):
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _csv(rows):
    buf = io.StringIO()
    csv.writer(buf).writerows(rows)
    return buf.getvalue()


def _algebra(args):
    return build_algebra(args.family, args.rank)


# ---------------------------------------------------------------------------
# subcommands


def cmd_roots(args):
    alg = _algebra(args)
    if args.format == "json":
        _emit(algebra_dumps(alg), args.out)
        return 0
    if args.format == "csv":
        rows = [["name"] + ["c%d" % (k + 1) for k in range(alg.coords)]
                + ["w%d" % (i + 1) for i in range(alg.n_cartan)]]
        for p, root in enumerate(alg.roots):
            rows.append(
                [alg.names[alg.n_cartan + p]]
                + list(root)
                + [alg.weight_table[p][i] for i in range(alg.n_cartan)]
            )
        _emit(_csv(rows), args.out)
        return 0
    lines = ["%s%d: dim %d, %d positive roots" % (alg.family, alg.rank, alg.dim, len(alg.positive))]
    lines.append("simple roots: " + "  ".join(str(r) for r in alg.simple))
    lines.append("cartan matrix:")
    for row in alg.cartan_matrix:
        lines.append("  " + " ".join("%3d" % v for v in row))
    lines.append("roots (name, coordinates, weights under h1..h%d):" % alg.n_cartan)
    for p, root in enumerate(alg.roots):
        weights = ",".join(str(alg.weight_table[p][i]) for i in range(alg.n_cartan))
        lines.append("  %-8s %s  (%s)" % (alg.names[alg.n_cartan + p], root, weights))
    _emit("\n".join(lines), args.out)
    return 0


def cmd_generators(args):
    alg = _algebra(args)
    if args.compare_paper and args.max_degree is not None:
        print("--compare-paper needs the full catalog; drop --max-degree", file=sys.stderr)
        return 2
    cat = build_catalog(alg, max_degree=args.max_degree)

    if args.compare_paper:
        try:
            ok, detail = golden.compare_layers(cat)
        except KeyError:
            print("no reference table for %s%d" % (alg.family, alg.rank), file=sys.stderr)
            return 2
        counts = cat.counts()
        summary = "layers %s total %d: %s" % (
            ",".join(str(c) for c in [alg.n_cartan] + [counts[d] for d in sorted(counts)]),
            cat.dim_fl(),
            "MATCH" if ok else "MISMATCH",
        )
        lines = [summary]
        if not ok:
            lines.extend(detail)
        _emit("\n".join(lines), args.out)
        return 0 if ok else 1

    if args.format == "json":
        _emit(_json(catalog_json_dict(cat)), args.out)
        return 0
    if args.format == "csv":
        rows = [["degree", "name", "case"]]
        rows += [[g.degree, g.name, g.case] for g in cat.generators]
        _emit(_csv(rows), args.out)
        return 0

    counts = cat.counts()
    lines = ["%s%d catalog: zeta %d, dim_FL %d%s" % (
        alg.family, alg.rank, cat.zeta, cat.dim_fl(),
        "" if cat.complete else " (truncated at degree %d)" % max(counts, default=1),
    )]
    lines.append("cartan: " + " ".join(g.name for g in cat.cartan))
    for d in sorted(counts):
        members = " ".join(g.name for g in cat.layer(d))
        lines.append("layer %d (%d): %s" % (d, counts[d], members))
    if alg.rank <= 2 and cat.complete and close_catalog(cat).table == {}:
        lines.append("all generator brackets vanish (abelian)")
    _emit("\n".join(lines), args.out)
    return 0


def _signature_str(sig):
    bits = []
    for d in sorted(set(sig)):
        m = sig.count(d)
        token = "h" if d == 1 else "q%d" % d
        bits.append(token if m == 1 else "%s^%d" % (token, m))
    return " ".join(bits)


def cmd_close(args):
    alg = _algebra(args)
    cat = build_catalog(alg)
    try:
        cl = close_catalog(cat)
    except ClosureError as err:
        print("closure failed: %s" % err, file=sys.stderr)
        return 1
    jac = jacobi_spot_check(cat, triples=args.triples, seed=args.seed)
    if not jac.ok:
        print("jacobi violation on %r" % jac.failures[:3], file=sys.stderr)
        return 1

    if args.format == "json":
        _emit(_json(closure_json_dict(cl)), args.out)
        return 0
    if args.format == "csv":
        rows = [["left", "right", "coefficient", "factors"]]
        for (a, b), expr in cl.table.items():
            for names, c in expr.ordered_terms(cat):
                rows.append([a, b, "%d/%d" % (c.numerator, c.denominator), " ".join(names)])
        _emit(_csv(rows), args.out)
        return 0

    word = DEGREE_WORDS.get(cl.degree, "degree-%d" % cl.degree)
    lines = ["%s%d closure: %d nonzero brackets over %d generators" % (
        alg.family, alg.rank, len(cl.table), len(cat.generators))]
    lines.append("degree d = %d (%s)" % (cl.degree, word))
    if alg.rank <= 3:
        lines.append("max over all factorizations: %d" % cl.exhaustive_degree())
    lines.append("jacobi spot check: %d triples, all zero (seed %d)" % (jac.checked, args.seed))
    if args.degree_report:
        lines.append("bracket shape by layer pair:")
        for (a, b), sigs in cl.degree_profile().items():
            shapes = " + ".join(_signature_str(s) for s in sigs)
            lines.append("  {q%d, q%d} ~ %s" % (a, b, shapes))
    if args.full:
        lines.append("entries:")
        for (a, b), expr in cl.table.items():
            lines.append("  {%s, %s} = %s" % (a, b, expr))
    _emit("\n".join(lines), args.out)
    return 0


def cmd_certify(args):
    alg = _algebra(args)
    try:
        cert = certify_system(alg, seed=args.seed)
    except CertificationError as err:
        print("certification failed: %s" % err, file=sys.stderr)
        return 1
    if args.format == "text":
        lines = [
            "%s%d: rank %d, bound %d" % (alg.family, alg.rank, cert["rank"], cert["bound"]),
            "%d integrals commute with H (%s)" % (len(cert["integrals"]), cert["commute"]),
            "independent besides H: %d (bound %d)" % (
                cert["independent_besides_hamiltonian"], cert["superintegrable_bound"]),
            "H = %s" % cert["hamiltonian"],
        ]
        _emit("\n".join(lines), args.out)
    else:
        _emit(_json(cert), args.out)
    return 0


def cmd_quantize(args):
    alg = _algebra(args)
    if alg.rank > 3:
        print("quantize handles rank <= 3 only (desk-scale scope)", file=sys.stderr)
        return 2
    from .quantize import cartan_commutant_check, correction_profile

    cat = build_catalog(alg)
    bad = cartan_commutant_check(alg, cat)
    if bad:
        print("nonzero Cartan commutators: %r" % bad[:5], file=sys.stderr)
        return 1
    non_cartan = [g for g in cat.generators if g.case != "h"]
    lines = ["all %d non-Cartan generators commute with %s" % (
        len(non_cartan), ",".join(alg.names[: alg.n_cartan]))]

    gens = non_cartan
    note = ""
    if len(gens) > 30:
        gens = gens[:30]
        note = " (profile limited to the 30 lowest-degree generators)"
    pairs = [(a, b) for a in range(len(gens)) for b in range(a + 1, len(gens))]
    prof = correction_profile(alg, cat, pairs=pairs)
    drop = {}
    for _, _, top, corr in prof:
        gap = top - corr if corr >= 0 else None
        key = "zero" if gap is None else ("%d steps down" % gap)
        drop[key] = drop.get(key, 0) + 1
    lines.append("quantum corrections over %d pairs%s:" % (len(prof), note))
    for key in sorted(drop):
        lines.append("  %s: %d" % (key, drop[key]))
    bad_gap = [r for r in prof if r[3] > r[2] - 2]
    if bad_gap:
        print("correction above the filtration bound: %r" % bad_gap[:3], file=sys.stderr)
        return 1
    _emit("\n".join(lines), args.out)
    return 0


def cmd_embed(args):
    if args.chain:
        pairs = [(f1, r1, f2, r2) for f1, r1, f2, r2 in golden.EMBEDDING_CHAIN]
    else:
        pairs = [(args.sub_family, args.sub_rank, args.sup_family, args.sup_rank)]
    lines = []
    code = 0
    for f1, r1, f2, r2 in pairs:
        try:
            rep = verify_embedding(build_algebra(f1, r1), build_algebra(f2, r2))
        except EmbeddingError as err:
            lines.append("%s%d -> %s%d: FAIL (%s)" % (f1, r1, f2, r2, err))
            code = 1
            continue
        lines.append("%s%d -> %s%d: OK, %d generators mapped, %d bracket pairs checked" % (
            f1, r1, f2, r2, len(rep.gen_map), rep.pairs_checked))
    _emit("\n".join(lines), args.out)
    return code


def cmd_report(args):
    from .report import write_report

    alg = _algebra(args)
    paths = write_report(alg, args.out_dir)
    _emit("\n".join(paths), None)
    return 0


# ---------------------------------------------------------------------------


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="cce",
        description="Exact commutants of Cartan subalgebras: catalogs, closures, certificates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, default_format="text"):
        p.add_argument("family", choices=sorted(FAMILIES))
        p.add_argument("rank", type=int)
        p.add_argument("--format", choices=("text", "json", "csv"), default=default_format)
        p.add_argument("--out", default=None, help="write output to this file")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("roots", help="root system, Cartan matrix, weight table")
    common(p)
    p.set_defaults(fn=cmd_roots)

    p = sub.add_parser("generators", help="layered catalog of indecomposable generators")
    common(p)
    p.add_argument("--max-degree", type=int, default=None)
    p.add_argument("--compare-paper", action="store_true",
                   help="diff the catalog against the embedded reference tables")
    p.set_defaults(fn=cmd_generators)

    p = sub.add_parser("close", help="bracket table and algebra degree")
    common(p)
    p.add_argument("--full", action="store_true", help="dump every entry")
    p.add_argument("--degree-report", action="store_true",
                   help="schematic of factor shapes per layer pair")
    p.add_argument("--triples", type=int, default=50, help="jacobi sample size")
    p.set_defaults(fn=cmd_close)

    p = sub.add_parser("certify", help="superintegrability certificate")
    common(p, default_format="json")
    p.set_defaults(fn=cmd_certify)

    p = sub.add_parser("quantize", help="symmetrized catalog checks in the enveloping algebra")
    common(p)
    p.set_defaults(fn=cmd_quantize)

    p = sub.add_parser("embed", help="verify standard embeddings")
    p.add_argument("sub_family", nargs="?", choices=sorted(FAMILIES))
    p.add_argument("sub_rank", nargs="?", type=int)
    p.add_argument("sup_family", nargs="?", choices=sorted(FAMILIES))
    p.add_argument("sup_rank", nargs="?", type=int)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_embed)

    p = sub.add_parser("report", help="write layer csv and figures to a directory")
    p.add_argument("family", choices=sorted(FAMILIES))
    p.add_argument("rank", type=int)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(fn=cmd_report)

    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "embed":
        given = [args.sub_family, args.sub_rank, args.sup_family, args.sup_rank]
        if all(v is None for v in given):
            args.chain = True
        elif any(v is None for v in given):
            parser.error("embed takes either no algebras (standard chain) or two")
        else:
            args.chain = False
    try:
        return args.fn(args)
    except ValueError as err:
        print(str(err), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
