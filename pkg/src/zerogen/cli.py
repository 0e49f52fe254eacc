"""Command line interface.

Exit codes:
   0  success; for `decide`, every vector is 0-generating
   1  at least one vector decided not 0-generating
   2  a compute budget ran out
   3  verification failed (certificate, cross-check or net report)
  10  usage error: bad arguments or malformed input
  11  refused: long tier without --allow-long, or too large outright
  12  frontier enumeration hit a safety cap
"""

import argparse
import concurrent.futures
import json
import math
import os
import sys
import time

from . import reference
from ._kernels import available_backends, get_kernels
from .analysis import (crucial_inequality_check, lambert_w,
                       phi_asymptotic_bounds, phi_real, varphi_int,
                       weight_params)
from .certificates import (generate_phi_witness, load_certificate,
                           save_certificate, verify_certificate)
from .engine import (Budget, BudgetExceeded, TierRefused, __version__,
                     decide)
from .extremal import (FrontierCapError, minimal_frontier,
                       one_plus_floor_phi, s_inf, suggest_net, table1,
                       table2, verify_net)
from .nvec import format_rational, format_vector, parse_rational, parse_vector

EXIT_OK = 0
EXIT_NOT_GENERATING = 1
EXIT_BUDGET = 2
EXIT_VERIFY = 3
EXIT_USAGE = 10
EXIT_TIER = 11
EXIT_CAP = 12


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, "%s: error: %s\n" % (self.prog, message))


def _emit(obj, as_json):
    if as_json:
        print(json.dumps(obj, indent=1, default=str))
        return True
    return False


def _decision_row(x, d, cert_path=None, cert_ok=None):
    row = {"vector": list(x), "verdict": d.verdict, "kind": d.kind,
           "engine": d.engine, "backend": d.backend, "rounds": d.rounds,
           "cells": d.cells, "seconds": round(d.seconds, 6),
           "cached": d.cached}
    if cert_path is not None:
        row["certificate"] = cert_path
    if cert_ok is not None:
        row["certificate_ok"] = cert_ok
    return row


def _cert_name(x):
    return "cert_%s.json" % "_".join(str(v) for v in x)


def _decide_one(x, args, budget):
    kern = get_kernels(args.backend) if args.backend else None
    d = decide(x, mode=args.mode, prune=not args.no_prune, budget=budget,
               kernels=kern, allow_long=args.allow_long,
               cache_dir=args.cache_dir)
    cert_path = None
    if d.certificate is not None:
        if args.emit_cert:
            cert_path = args.emit_cert
        elif args.cert_dir:
            cert_path = os.path.join(args.cert_dir, _cert_name(x))
        if cert_path:
            save_certificate(d.certificate, cert_path)
    cert_ok = None
    if args.cross_check and d.certificate is not None:
        cert_ok = bool(verify_certificate(d.certificate))
    return d, cert_path, cert_ok


def _decide_worker(payload):
    """Batch worker; runs in a separate process, so plain data in and out."""
    ns = argparse.Namespace(**payload["args"])
    budget = Budget(max_cells=payload["max_cells"],
                    max_seconds=payload["max_seconds"])
    x = tuple(payload["vector"])
    try:
        d, cert_path, cert_ok = _decide_one(x, ns, budget)
    except BudgetExceeded as exc:
        return {"vector": list(x), "verdict": "budget-exceeded",
                "error": str(exc)}
    except TierRefused as exc:
        return {"vector": list(x), "verdict": "refused", "error": str(exc)}
    return _decision_row(x, d, cert_path, cert_ok)


def _print_decision(row):
    line = "%s: %s" % (format_vector(row["vector"]), row["verdict"])
    extra = []
    if "engine" in row:
        extra.append("%s/%s" % (row["engine"], row["backend"]))
        extra.append("%d rounds" % row["rounds"])
        extra.append("%.3fs" % row["seconds"])
    if row.get("cached"):
        extra.append("cached")
    if row.get("certificate"):
        extra.append("cert %s" % row["certificate"])
    if row.get("certificate_ok") is not None:
        extra.append("cross-check %s"
                     % ("ok" if row["certificate_ok"] else "FAILED"))
    if row.get("error"):
        extra.append(row["error"])
    if extra:
        line += "  (%s)" % ", ".join(extra)
    print(line)


def _exit_for_rows(rows):
    verdicts = [r["verdict"] for r in rows]
    if any(v == "refused" for v in verdicts):
        return EXIT_TIER
    if any(v == "budget-exceeded" for v in verdicts):
        return EXIT_BUDGET
    if any(r.get("certificate_ok") is False for r in rows):
        return EXIT_VERIFY
    if any(v == "not-generating" for v in verdicts):
        return EXIT_NOT_GENERATING
    return EXIT_OK


def _cmd_decide(args):
    vectors = [parse_vector(t) for t in args.vector]
    if args.batch:
        with open(args.batch) as f:
            for line in f:
                line = line.split("#", 1)[0].strip()
                if line:
                    vectors.append(parse_vector(line))
    if not vectors:
        raise ValueError("no vectors given; pass literals or --batch FILE")
    if args.emit_cert and len(vectors) > 1:
        raise ValueError("--emit-cert fits a single vector; use --cert-dir")
    if args.cert_dir:
        os.makedirs(args.cert_dir, exist_ok=True)

    started = time.time()
    rows = []
    if args.jobs > 1 and len(vectors) > 1:
        payload_args = {k: getattr(args, k) for k in
                        ("mode", "no_prune", "backend", "allow_long",
                         "cache_dir", "emit_cert", "cert_dir", "cross_check")}
        payloads = [{"vector": list(x), "args": payload_args,
                     "max_cells": args.budget_cells,
                     "max_seconds": args.budget_seconds} for x in vectors]
        with concurrent.futures.ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(_decide_worker, payloads))
    else:
        budget = Budget(max_cells=args.budget_cells,
                        max_seconds=args.budget_seconds)
        for x in vectors:
            try:
                d, cert_path, cert_ok = _decide_one(x, args, budget)
            except BudgetExceeded as exc:
                rows.append({"vector": list(x), "verdict": "budget-exceeded",
                             "error": str(exc)})
                break
            rows.append(_decision_row(x, d, cert_path, cert_ok))

    if args.manifest:
        manifest = {"argv": sys.argv[1:], "command": "decide",
                    "version": __version__,
                    "backends": available_backends(),
                    "budget": {"max_cells": args.budget_cells,
                               "max_seconds": args.budget_seconds,
                               "shared": args.jobs <= 1},
                    "wall_seconds": round(time.time() - started, 6),
                    "results": rows}
        with open(args.manifest, "w") as f:
            json.dump(manifest, f, indent=1)
            f.write("\n")

    if not _emit(rows if len(rows) > 1 else rows[0], args.json):
        for row in rows:
            _print_decision(row)
    return _exit_for_rows(rows)


def _cmd_verify(args):
    results = []
    for path in args.path:
        try:
            cert = load_certificate(path)
            res = verify_certificate(cert)
            results.append({"path": path, "type": cert.get("type"),
                            "ok": bool(res),
                            "error": None if res else res.error})
        except (ValueError, KeyError, OSError) as exc:
            results.append({"path": path, "type": None, "ok": False,
                            "error": str(exc)})
    if not _emit(results, args.json):
        for r in results:
            if r["ok"]:
                print("OK   %s (%s)" % (r["path"], r["type"]))
            else:
                print("FAIL %s: %s" % (r["path"], r["error"]))
    return EXIT_OK if all(r["ok"] for r in results) else EXIT_VERIFY


def _cmd_sinf(args):
    budget = Budget(max_cells=args.budget_cells,
                    max_seconds=args.budget_seconds)
    r = s_inf(args.n, budget=budget, allow_long=args.allow_long,
              scan_from_one=args.scan_from_one)
    paths = {}
    if args.cert_dir:
        os.makedirs(args.cert_dir, exist_ok=True)
        paths["lower"] = os.path.join(args.cert_dir,
                                      "sinf_%d_lower.json" % args.n)
        paths["upper"] = os.path.join(args.cert_dir,
                                      "sinf_%d_upper.json" % args.n)
        save_certificate(r.lower_cert, paths["lower"])
        save_certificate(r.upper_cert, paths["upper"])
    out = {"n": r.n, "s_inf": r.value,
           "scanned": [{"c": c, "verdict": v} for c, v in r.scanned],
           "certificates": paths or None}
    if not _emit(out, args.json):
        print("s_inf(%d) = %d" % (r.n, r.value))
        print("scan: " + ", ".join("%d:%s" % (c, v) for c, v in r.scanned))
        for kind, p in paths.items():
            print("%s certificate: %s" % (kind, p))
    return EXIT_OK


def _cmd_frontier(args):
    t = parse_rational(args.t)
    fr = minimal_frontier(args.n, t, coord_cap=args.coord_cap,
                          card_cap=args.card_cap)
    out = {"n": fr.n, "t": format_rational(fr.t),
           "count": len(fr.vectors), "leaves": fr.leaves,
           "vectors": [list(v) for v in fr.vectors]}
    if not _emit(out, args.json):
        print("minimal frontier of n=%d above harmonic mean %s: %d vectors"
              % (fr.n, format_rational(fr.t), len(fr.vectors)))
        for v in fr.vectors:
            print("  " + format_vector(v))
    return EXIT_OK


def _load_net(args):
    if args.builtin:
        entry = reference.builtin_nets().get(args.builtin)
        if entry is None:
            raise ValueError("unknown builtin net %r; have %s"
                             % (args.builtin,
                                ", ".join(sorted(reference.builtin_nets()))))
        return entry["n"], entry["t"], entry["net"]
    with open(args.net_file) as f:
        data = json.load(f)
    if isinstance(data, dict):
        return data["n"], data["t"], [tuple(v) for v in data["net"]]
    return args.n, args.t, [tuple(v) for v in data]


def _cmd_net(args):
    if args.suggest:
        if args.n is None or args.t is None:
            raise ValueError("--suggest needs N and T")
        net = suggest_net(args.n, parse_rational(args.t),
                          allow_long=args.allow_long)
        n, t = args.n, parse_rational(args.t)
    else:
        if args.builtin is None and args.net_file is None:
            raise ValueError("pass --builtin NAME, --net-file PATH "
                             "or --suggest")
        n, t, net = _load_net(args)
        if args.n is not None:
            n = args.n
        if args.t is not None:
            t = parse_rational(args.t)
    budget = Budget(max_cells=args.budget_cells,
                    max_seconds=args.budget_seconds)
    rep = verify_net(n, t, net, budget=budget, allow_long=args.allow_long)
    out = {"n": rep.n, "t": format_rational(rep.t), "ok": rep.ok,
           "net": [list(v) for v in net],
           "frontier_size": len(rep.frontier),
           "uncovered": [list(v) for v in rep.uncovered],
           "not_generating": [list(v) for v in rep.not_generating]}
    if not _emit(out, args.json):
        print("net of %d vectors at level %s for n=%d: %s"
              % (len(net), format_rational(rep.t), rep.n,
                 "proves the bound" if rep.ok else "FAILS"))
        if args.suggest:
            for v in net:
                print("  " + format_vector(v))
        for v in rep.uncovered:
            print("  uncovered frontier vector: " + format_vector(v))
        for v in rep.not_generating:
            print("  net element not 0-generating: " + format_vector(v))
    return EXIT_OK if rep.ok else EXIT_VERIFY


def _cmd_phi(args):
    rows = []
    for n in args.n:
        p = phi_real(n)
        rows.append({"n": n, "varphi": varphi_int(n),
                     "one_plus_floor_phi": one_plus_floor_phi(n),
                     "sup_x": p.x, "sup_ln": p.ln_value, "sup": p.value,
                     "boundary": p.boundary})
    if not _emit(rows, args.json):
        for r in rows:
            sup = ("%.6g" % r["sup"]) if r["sup"] is not None else \
                ("exp(%.6g)" % r["sup_ln"])
            print("n=%d: integer max %d, 1+floor(real sup) %d, real sup %s "
                  "at x=%.6g%s" % (r["n"], r["varphi"],
                                   r["one_plus_floor_phi"], sup, r["sup_x"],
                                   " (boundary)" if r["boundary"] else ""))
    return EXIT_OK


def _cmd_bounds(args):
    rows = []
    for n in args.n:
        b = phi_asymptotic_bounds(n)
        row = {"n": n, "ln_lower": b.lower, "ln_upper": b.upper,
               "x_lo": b.x_lo, "x_hi": b.x_hi, "small_n": b.small_n,
               "lambert_w_ne": lambert_w(n * math.e)}
        if n <= args.exact_max:
            row["ln_varphi_next"] = math.log(varphi_int(n + 1))
        rows.append(row)
    if not _emit(rows, args.json):
        for r in rows:
            mid = ""
            if "ln_varphi_next" in r:
                mid = "  actual %.6f" % r["ln_varphi_next"]
            print("n=%d: %.6f <= ln varphi(n+1) <= %.6f%s%s"
                  % (r["n"], r["ln_lower"], r["ln_upper"], mid,
                     "  (below proven range)" if r["small_n"] else ""))
    return EXIT_OK


def _cmd_weights(args):
    rows = []
    for n in args.n:
        w = weight_params(n)
        row = {"n": n, "lambda": w.lam, "c_lambda": w.c_lam,
               "geometric_sum": w.geo, "phi_value": w.phi_value,
               "anomaly": w.anomaly, "note": w.note}
        if not w.anomaly and args.check:
            row["crucial_ok"] = crucial_inequality_check(n).ok
        rows.append(row)
    if not _emit(rows, args.json):
        for r in rows:
            if r["anomaly"]:
                print("n=%d: %s" % (r["n"], r["note"]))
                continue
            line = ("n=%d: lambda=%.6g c_lambda=%.6g geometric=%.6g "
                    "phi=%.6g" % (r["n"], r["lambda"], r["c_lambda"],
                                  r["geometric_sum"], r["phi_value"]))
            if "crucial_ok" in r:
                line += "  inequality %s" % ("ok" if r["crucial_ok"]
                                             else "FAILED")
            print(line)
    return EXIT_OK


def _cmd_witness(args):
    cert = generate_phi_witness(args.n)
    res = verify_certificate(cert)
    if args.out:
        save_certificate(cert, args.out)
    out = {"n": args.n, "c": cert["hbar"], "steps": len(cert["steps"]),
           "verified": bool(res), "path": args.out}
    if not _emit(out, args.json):
        print("threshold witness for n=%d at c=%d: %d steps, verification %s"
              % (args.n, cert["hbar"], len(cert["steps"]),
                 "ok" if res else "FAILED: %s" % res.error))
        if args.out:
            print("written to %s" % args.out)
    return EXIT_OK if res else EXIT_VERIFY


def _cmd_tables(args):
    if args.which == "1":
        rows = table1(args.nmax, s_inf_max=args.s_inf_max,
                      allow_long=args.allow_long)
        if not _emit(rows, args.json):
            hdr = ("n", "varphi", "1+floor", "s_inf", "varphi(n+1)", "n!")
            print("%3s %10s %10s %8s %12s %14s" % hdr)
            for r in rows:
                print("%3d %10d %10d %8s %12d %14d"
                      % (r["n"], r["varphi"], r["one_plus_floor_phi"],
                         "?" if r["s_inf"] is None else r["s_inf"],
                         r["varphi_next"], r["factorial"]))
    elif args.which == "2":
        rows = table2(args.nmax)
        out = [{"n": r["n"], "rel": r["rel"],
                "s_minus_1": format_rational(r["s_minus_1"]),
                "defect": format_rational(r["defect"]),
                "basis": r["basis"]} for r in rows]
        if not _emit(out, args.json):
            print("%3s %12s %10s %16s" % ("n", "s_-1 bound", "defect",
                                          "basis"))
            for r in out:
                print("%3d %1s%11s %10s %16s"
                      % (r["n"], r["rel"], r["s_minus_1"], r["defect"],
                         r["basis"]))
    else:
        rows = []
        for n in range(3, args.nmax + 1):
            w = weight_params(n)
            rows.append({"n": n, "lambda": w.lam, "c_lambda": w.c_lam,
                         "geometric_sum": w.geo, "phi_value": w.phi_value,
                         "anomaly": w.anomaly})
        if not _emit(rows, args.json):
            print("%3s %10s %12s %12s %14s" % ("n", "lambda", "phi(lambda)",
                                               "c_lambda", "geometric"))
            for r in rows:
                if r["anomaly"]:
                    print("%3d %10s %12.6g %12s %14s"
                          % (r["n"], "-", r["phi_value"], "-", "-"))
                else:
                    print("%3d %10.6g %12.6g %12.6g %14.6g"
                          % (r["n"], r["lambda"], r["phi_value"],
                             r["c_lambda"], r["geometric_sum"]))
    return EXIT_OK


def _add_budget_flags(p):
    p.add_argument("--budget-cells", type=int, default=None,
                   help="stop after visiting this many box cells")
    p.add_argument("--budget-seconds", type=float, default=None,
                   help="stop after this much wall time")


def build_parser():
    top = _Parser(prog="zerogen",
                  description="decide 0-generacy, verify certificates, "
                              "and compute the extremal thresholds")
    top.add_argument("--version", action="version",
                     version="%(prog)s " + __version__)
    sub = top.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("decide", help="decide vectors and emit certificates")
    p.add_argument("vector", nargs="*",
                   help="vector literal such as 2,3,7")
    p.add_argument("--batch", metavar="FILE",
                   help="file with one vector literal per line")
    p.add_argument("--jobs", type=int, default=1,
                   help="parallel workers for batch runs")
    p.add_argument("--mode", choices=("auto", "const", "general"),
                   default="auto")
    p.add_argument("--no-prune", action="store_true",
                   help="disable the antichain prune (cross-check mode)")
    p.add_argument("--backend", choices=available_backends(), default=None)
    p.add_argument("--emit-cert", metavar="PATH",
                   help="write the certificate of a single vector here")
    p.add_argument("--cert-dir", metavar="DIR",
                   help="write one certificate per vector into this directory")
    p.add_argument("--cross-check", action="store_true",
                   help="re-verify every certificate with the independent "
                        "checker before reporting")
    p.add_argument("--allow-long", action="store_true",
                   help="run long-tier jobs (also ZEROGEN_ALLOW_LONG=1)")
    p.add_argument("--cache-dir", metavar="DIR",
                   help="consult and fill a verdict cache")
    p.add_argument("--manifest", metavar="PATH",
                   help="write a JSON run manifest here")
    p.add_argument("--json", action="store_true")
    _add_budget_flags(p)
    p.set_defaults(func=_cmd_decide)

    p = sub.add_parser("verify", help="verify certificate files")
    p.add_argument("path", nargs="+")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("sinf", help="scan the constant threshold s_inf(n)")
    p.add_argument("n", type=int)
    p.add_argument("--scan-from-one", action="store_true",
                   help="start the scan at c=1 instead of the proven bound")
    p.add_argument("--cert-dir", metavar="DIR",
                   help="write the boundary certificates here")
    p.add_argument("--allow-long", action="store_true")
    p.add_argument("--json", action="store_true")
    _add_budget_flags(p)
    p.set_defaults(func=_cmd_sinf)

    p = sub.add_parser("frontier",
                       help="minimal vectors above a harmonic-mean level")
    p.add_argument("n", type=int)
    p.add_argument("t", help="rational level such as 5 or 450/49")
    p.add_argument("--coord-cap", type=int, default=10 ** 6)
    p.add_argument("--card-cap", type=int, default=10 ** 5)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_frontier)

    p = sub.add_parser("net", help="verify or suggest a covering net")
    p.add_argument("n", type=int, nargs="?", default=None)
    p.add_argument("t", nargs="?", default=None)
    p.add_argument("--builtin", metavar="NAME",
                   help="use a bundled net (A2, A3, A4, A4_cover)")
    p.add_argument("--net-file", metavar="PATH",
                   help="JSON list of vectors, or {n, t, net}")
    p.add_argument("--suggest", action="store_true",
                   help="shrink the frontier into a candidate net")
    p.add_argument("--allow-long", action="store_true")
    p.add_argument("--json", action="store_true")
    _add_budget_flags(p)
    p.set_defaults(func=_cmd_net)

    p = sub.add_parser("phi", help="integer and real threshold functions")
    p.add_argument("n", type=int, nargs="+")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_phi)

    p = sub.add_parser("bounds", help="asymptotic bounds on the threshold")
    p.add_argument("n", type=int, nargs="+")
    p.add_argument("--exact-max", type=int, default=600,
                   help="also print the exact value for n up to this")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("weights", help="distinguished weight parameters")
    p.add_argument("n", type=int, nargs="+")
    p.add_argument("--check", action="store_true",
                   help="also run the interior inequality check")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_weights)

    p = sub.add_parser("witness",
                       help="construct the threshold witness family")
    p.add_argument("n", type=int)
    p.add_argument("--out", metavar="PATH")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_witness)

    p = sub.add_parser("tables", help="recompute the summary tables")
    p.add_argument("which", choices=("1", "2", "weights"))
    p.add_argument("--nmax", type=int, default=None)
    p.add_argument("--s-inf-max", type=int, default=0,
                   help="scan s_inf with the engine up to this n (table 1)")
    p.add_argument("--allow-long", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_tables)

    return top


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "tables" and args.nmax is None:
        args.nmax = {"1": 9, "2": 8, "weights": 8}[args.which]
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print("budget exceeded: %s" % exc, file=sys.stderr)
        return EXIT_BUDGET
    except TierRefused as exc:
        print("refused: %s" % exc, file=sys.stderr)
        return EXIT_TIER
    except FrontierCapError as exc:
        print("frontier cap: %s" % exc, file=sys.stderr)
        return EXIT_CAP
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
