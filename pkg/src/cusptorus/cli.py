"""Command line front end: ball, count, verify, scan.

Emits CSV (primary), JSON (same rows plus a schema version), or SVG for the
unit ball.  All numbers print at 15 significant digits through mpmath, so a
fixed seed and precision give byte-identical output files.  Exit codes:
0 success, 2 domain error (the exception class name is printed), 64 usage.

The --threads flag parallelizes the counting tree walk, whose workers stay
in exact integer arithmetic.  Scan rows are always computed in index order
in one thread: the arbitrary-precision context is process-global, so
concurrent mpf work would not be reproducible.
"""

import argparse
import json
import sys
from collections import namedtuple

from mpmath import mp, mpf, workprec

from .ball import boundary_refine, norm_of_class
from .counting import asymptotic_report, brute_force_count, count_primitive
from .errors import CuspTorusError
from .farey import christoffel_word, class_trace, word_matrix
from .halfplane import full_length_product, sin_identity_residual
from .moduli import (area_along_path, cusp_asymptotics, cusp_point,
                     isosystolic_sample, random_moduli_point, systole)
from .traces import (DEFAULT_PRECISION_BITS, ModuliPoint, fricke_residual,
                     lift_to_matrices, markoff_child)

RunConfig = namedtuple("RunConfig",
                       "moduli precision_bits eps tol fmt out seed threads")

_SCHEMA_VERSION = 1


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures on exit code 64 instead of 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(64, "%s: error: %s\n" % (self.prog, message))


def _fmt(v):
    if isinstance(v, str):
        return v
    if isinstance(v, int) and not isinstance(v, bool):
        return str(v)
    v = mpf(v)
    if mp.isinf(v):
        return "inf" if v > 0 else "-inf"
    if v == 0:
        return "0.0"
    return mp.nstr(v, 15)


def _parse_moduli(text, precision_bits, parser):
    if text == "modular":
        # the hexagonal point; generators lift to [[1,1],[1,2]], [[1,-1],[-1,2]]
        return ModuliPoint(3, 3, 3, precision_bits=precision_bits)
    toks = text.split(",")
    if len(toks) != 3:
        parser.error("--moduli wants 'modular', 'random' (verify only), or "
                     "three comma-separated traces")
    vals = []
    for tok in toks:
        tok = tok.strip()
        try:
            if tok.lstrip("+-").isdigit():
                vals.append(int(tok))
            else:
                with workprec(precision_bits):
                    vals.append(mpf(tok))
        except ValueError:
            parser.error("cannot parse trace %r" % tok)
    return ModuliPoint(vals[0], vals[1], vals[2],
                       precision_bits=precision_bits)


def _parse_number_list(text, parser, what, require=None):
    vals = []
    for tok in text.split(","):
        tok = tok.strip()
        try:
            v = int(tok) if tok.lstrip("+-").isdigit() else float(tok)
        except ValueError:
            parser.error("cannot parse %s value %r" % (what, tok))
        if not v > 0:
            parser.error("%s values must be positive" % what)
        vals.append(v)
    if not vals:
        parser.error("%s list is empty" % what)
    if require == "increasing":
        for a, b in zip(vals, vals[1:]):
            if not b > a:
                parser.error("%s values must be strictly increasing" % what)
    if require == "decreasing":
        for a, b in zip(vals, vals[1:]):
            if not b < a:
                parser.error("%s values must be strictly decreasing" % what)
    return vals


def _config(args, parser, default_eps):
    eps_text = args.eps if args.eps is not None else default_eps
    try:
        with workprec(args.precision_bits):
            eps = mpf(eps_text)
            tol = mpf(args.tol)
    except ValueError:
        parser.error("--eps and --tol must be numbers")
    if not eps > 0:
        parser.error("--eps must be positive")
    if not tol > 0:
        parser.error("--tol must be positive")
    if args.precision_bits < 64:
        parser.error("--precision-bits must be at least 64")
    if args.threads < 1:
        parser.error("--threads must be at least 1")
    return RunConfig(args.moduli, args.precision_bits, eps, tol, args.fmt,
                     args.out, args.seed, args.threads)


def _csv(header, rows):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def _json_doc(command, cfg, header, rows, extra=None):
    doc = {"schema_version": _SCHEMA_VERSION,
           "command": command,
           "moduli": cfg.moduli,
           "precision_bits": cfg.precision_bits,
           "columns": list(header),
           "rows": [[_fmt(v) for v in row] for row in rows]}
    if extra:
        doc.update(extra)
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _svg_doc(ball, cfg):
    meta = json.dumps({"area_lower": _fmt(ball.area_lower),
                       "area_upper": _fmt(ball.area_upper),
                       "eps": _fmt(ball.refinement_eps),
                       "moduli": cfg.moduli,
                       "vertex_count": len(ball.vertices)}, sort_keys=True)
    pts = []
    for _, P in ball.vertices:
        # svg y axis points down; flip so the picture is right side up
        pts.append("%s,%s" % (_fmt(P[0]), _fmt(-P[1])))
    pts.append(pts[0])
    half = mpf(ball.extent_upper) * mpf("1.2")
    h = mp.nstr(half, 8)
    side = mp.nstr(2 * half, 8)
    width = mp.nstr(half / 150, 3)
    return ("<svg xmlns=\"http://www.w3.org/2000/svg\" "
            "viewBox=\"-%s -%s %s %s\">\n"
            "  <metadata>%s</metadata>\n"
            "  <polyline points=\"%s\" fill=\"none\" stroke=\"#202020\" "
            "stroke-width=\"%s\"/>\n"
            "</svg>\n" % (h, h, side, side, meta, " ".join(pts), width))


def cmd_ball(args, parser):
    cfg = _config(args, parser, "0.005")
    if cfg.moduli == "random":
        parser.error("ball needs a concrete moduli point")
    m = _parse_moduli(cfg.moduli, cfg.precision_bits, parser)
    ball = boundary_refine(m, cfg.eps)
    if cfg.fmt == "svg":
        return _svg_doc(ball, cfg), 0
    header = ("p", "q", "x", "y", "norm")
    rows = []
    for cls, P in ball.vertices:
        rows.append((cls[0], cls[1], P[0], P[1], norm_of_class(m, cls)))
    if cfg.fmt == "csv":
        return _csv(header, rows), 0
    extra = {"area_lower": _fmt(ball.area_lower),
             "area_upper": _fmt(ball.area_upper),
             "eps": _fmt(ball.refinement_eps)}
    return _json_doc("ball", cfg, header, rows, extra), 0


def cmd_count(args, parser):
    cfg = _config(args, parser, "0.005")
    if cfg.fmt == "svg":
        parser.error("svg output only applies to ball")
    if cfg.moduli == "random":
        parser.error("count needs a concrete moduli point")
    Ls = _parse_number_list(args.L, parser, "--L", require="increasing")
    m = _parse_moduli(cfg.moduli, cfg.precision_bits, parser)
    report = asymptotic_report(m, Ls, area_eps=cfg.eps, threads=cfg.threads)
    if args.oracle:
        ext = boundary_refine(m, mpf("0.5")).extent_upper
        for row in report.rows:
            with workprec(cfg.precision_bits):
                cap = int(mp.ceil(mpf(row.L) * ext)) + 1
            brute = brute_force_count(m, row.L, cap)
            if brute != row.primitive:
                raise CuspTorusError(
                    "oracle mismatch at L=%s: tree %d, brute force %d"
                    % (row.L, row.primitive, brute))
    half = 2 if args.unoriented else 1
    header = ("L", "primitive", "total", "predicted", "residual",
              "residual_per_LlogL")
    rows = []
    for r in report.rows:
        rows.append((r.L, r.primitive // half, r.total // half,
                     r.predicted / half, r.residual / half,
                     r.residual_per_LlogL / half))
    if cfg.fmt == "csv":
        return _csv(header, rows), 0
    extra = {"area_lower": _fmt(report.area_lower),
             "area_upper": _fmt(report.area_upper),
             "oriented": not args.unoriented}
    return _json_doc("count", cfg, header, rows, extra), 0


_TRIANGLE_PAIRS = (((1, 0), (0, 1)), ((1, 1), (2, 1)), ((1, 2), (1, 1)),
                   ((3, 1), (1, 3)), ((1, 0), (1, -2)))

_WORD_CLASSES = ((1, 1), (2, 1), (1, 2), (3, 2), (1, -1), (2, -1))


def cmd_verify(args, parser):
    cfg = _config(args, parser, "0.005")
    if cfg.fmt == "svg":
        parser.error("svg output only applies to ball")
    if cfg.moduli == "random":
        if args.n < 1:
            parser.error("--n must be at least 1")
        points = [random_moduli_point(cfg.seed, i, cfg.precision_bits)
                  for i in range(args.n)]
    else:
        points = [_parse_moduli(cfg.moduli, cfg.precision_bits, parser)]

    max_markoff = mpf(0)
    max_child = mpf(0)
    max_fricke = mpf(0)
    max_word = mpf(0)
    max_ident = mpf(0)
    min_margin = mpf("inf")
    for m in points:
        with workprec(m.precision_bits):
            x, y, z = (mpf(v) for v in m.triple)
            scale = abs(x * y * z)
            max_markoff = max(max_markoff,
                              abs(x * x + y * y + z * z - x * y * z) / scale)
            for which in ("left", "right"):
                cx, cy, cz = markoff_child(x, y, z, which)
                cs = abs(cx * cy * cz)
                max_child = max(
                    max_child,
                    abs(cx * cx + cy * cy + cz * cz - cx * cy * cz) / cs)
            A, B = lift_to_matrices(m)
            max_fricke = max(max_fricke, abs(fricke_residual(A, B)))
            for cls in _WORD_CLASSES:
                tw = word_matrix(christoffel_word(cls), A, B).trace()
                tc = class_trace(m, cls)
                max_word = max(max_word, abs(mpf(tw) - tc) / max(1, abs(tc)))
            max_ident = max(max_ident, sin_identity_residual(m))
            for u, v in _TRIANGLE_PAIRS:
                s = (u[0] + v[0], u[1] + v[1])
                margin = (norm_of_class(m, u) + norm_of_class(m, v)
                          - norm_of_class(m, s))
                min_margin = min(min_margin, margin)

    oracle_detail = []
    oracle_ok = True
    for m in points[:2]:
        ext = boundary_refine(m, mpf("0.5")).extent_upper
        with workprec(m.precision_bits):
            cap = int(mp.ceil(4 * ext)) + 1
        tree = count_primitive(m, 4)
        brute = brute_force_count(m, 4, cap)
        oracle_ok = oracle_ok and tree == brute
        oracle_detail.append("%d/%d" % (tree, brute))

    tol = cfg.tol
    checks = [
        ("markoff_relation", max_markoff <= tol, _fmt(max_markoff)),
        ("markoff_child_preserved", max_child <= tol, _fmt(max_child)),
        ("fricke_commutator", max_fricke <= tol, _fmt(max_fricke)),
        ("word_trace_agreement", max_word <= tol, _fmt(max_word)),
        ("half_length_identity", max_ident <= tol, _fmt(max_ident)),
        ("triangle_strict", min_margin > 0, _fmt(min_margin)),
        ("oracle_small_L", oracle_ok, ";".join(oracle_detail)),
    ]
    header = ("check", "status", "detail")
    rows = [(name, "PASS" if ok else "FAIL", detail)
            for name, ok, detail in checks]
    rows.append(("full_length_product", "INFO",
                 _fmt(full_length_product(points[0]))))
    code = 0 if all(ok for _, ok, _ in checks) else 2
    if cfg.fmt == "csv":
        return _csv(header, rows), code
    extra = {"points": len(points), "tol": _fmt(tol)}
    return _json_doc("verify", cfg, header, rows, extra), code


def cmd_scan(args, parser):
    cfg = _config(args, parser, "0.5")
    if cfg.fmt == "svg":
        parser.error("svg output only applies to ball")
    if args.cusp == args.systole:
        parser.error("pick exactly one of --cusp or --systole")
    if args.cusp:
        if args.s_values is None:
            parser.error("--cusp needs --s")
        svals = _parse_number_list(args.s_values, parser, "--s",
                                   require="decreasing")
        rows_geom = cusp_asymptotics(svals, cfg.precision_bits)
        pts = [cusp_point(s, cfg.precision_bits) for s in svals]
        rows_area = area_along_path(pts, cfg.eps).rows
        header = ("s", "len_gamma", "len_gamma_prime", "ratio", "angle",
                  "area_lower", "area_upper")
        rows = []
        for g, a in zip(rows_geom, rows_area):
            rows.append((g.s, g.len_gamma, g.len_gamma_prime, g.ratio,
                         g.angle, a.area_lower, a.area_upper))
        if cfg.fmt == "csv":
            return _csv(header, rows), 0
        return _json_doc("scan", cfg, header, rows,
                         {"mode": "cusp", "eps": _fmt(cfg.eps)}), 0
    if args.n < 1:
        parser.error("--n must be at least 1")
    rep = isosystolic_sample(args.n, cfg.seed, cfg.precision_bits)
    header = ("index", "x", "y", "z", "systole")
    rows = [(r.index, r.x, r.y, r.z, r.systole) for r in rep.rows]
    if cfg.fmt == "csv":
        return _csv(header, rows), 0
    extra = {"mode": "systole", "max_systole": _fmt(rep.max_systole),
             "bound": _fmt(rep.bound), "seed": cfg.seed}
    return _json_doc("scan", cfg, header, rows, extra), 0


_DISPATCH = {"ball": cmd_ball, "count": cmd_count, "verify": cmd_verify,
             "scan": cmd_scan}


def _build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--moduli", default="modular",
                        help="'modular', 'random' (verify only), or x,y,z")
    common.add_argument("--precision-bits", dest="precision_bits", type=int,
                        default=DEFAULT_PRECISION_BITS)
    common.add_argument("--eps", default=None,
                        help="area gap target (ball/count: 0.005, scan: 0.5)")
    common.add_argument("--tol", default="1e-9")
    common.add_argument("--format", dest="fmt", default="csv",
                        choices=("csv", "json", "svg"))
    common.add_argument("--out", default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=1)

    parser = _Parser(
        prog="cusptorus",
        description="Length norm, unit ball, and geodesic counts for "
                    "hyperbolic once-punctured tori in trace coordinates.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.add_parser("ball", parents=[common],
                   help="boundary vertices and certified area of the unit "
                        "ball")
    pc = sub.add_parser("count", parents=[common],
                        help="geodesic counts against the quadratic "
                             "prediction")
    pc.add_argument("--L", required=True,
                    help="comma-separated increasing length bounds")
    pc.add_argument("--oracle", action="store_true",
                    help="cross-check each count against the brute force "
                         "scan")
    pc.add_argument("--unoriented", action="store_true",
                    help="halve counts: one per unoriented geodesic")
    pv = sub.add_parser("verify", parents=[common],
                        help="identity and invariant suite")
    pv.add_argument("--n", type=int, default=100,
                    help="sample size for --moduli random")
    ps = sub.add_parser("scan", parents=[common],
                        help="cusp family or systole sampling scans")
    ps.add_argument("--cusp", action="store_true")
    ps.add_argument("--systole", action="store_true")
    ps.add_argument("--s", dest="s_values", default=None,
                    help="comma-separated decreasing pinching lengths")
    ps.add_argument("--n", type=int, default=100)
    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.error("a subcommand is required")
    try:
        text, code = _DISPATCH[args.command](args, parser)
    except (CuspTorusError, ValueError) as e:
        sys.stderr.write("%s: %s\n" % (type(e).__name__, e))
        return 2
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
