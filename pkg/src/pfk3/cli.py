"""Command-line front end: pfk3 sample | verify | map-point | ktheory.

Exit codes: 0 pass, 1 check failure, 2 genericity exhausted, 3 I/O or schema error, 4 usage error.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction

from . import __version__
from . import correspondence as corr
from . import detcubics as dc
from . import ktheory as kt
from .construction import (GenericityExhausted, InstanceFormatError, PfaffianInstance, canonical_json,
                           certify_instance, dumps_instance, loads_instance, point_on_Y, sample_instance)
from .exactmath import DEFAULT_PRIME, is_prime
from .polyalg.groebner import ResourceLimit
from .rng import ALGORITHM, stream

EXIT_PASS, EXIT_FAIL, EXIT_GENERICITY, EXIT_IO, EXIT_USAGE = 0, 1, 2, 3, 4
REPORT_SCHEMA_VERSION = 1

# claim labels carried by every check record
ANCHORS = {
    "x_certificate": "X is a degree-14 surface: Hilbert polynomial 7n^2 + 2",
    "y_smooth": "Y is smooth: Jacobian ideal saturates to (1)",
    "gamma_fiber_length": "generic fiber of Gamma over Y has length 4",
    "xi_points": "split points of xi(y) lie on X and on the Schubert cycle",
    "radical_witness": "rank(phi) = 4 and rad(phi) is not a point of X",
    "schubert_cycle": "Schubert cycle of planes meeting rad(phi): dimension 5, degree 4",
    "gamma_p_hilbert": "Gamma_P is a surface of degree 4 with Hilbert polynomial 2n^2 + 3n + 1",
    "flatness": "Hilbert polynomial of Gamma_P is independent of P",
    "pair_distinct": "distinct points P, Q of X: P meets Q in 0 and Gamma_P differs from Gamma_Q",
    "twisted_cubic": "determinantal twisted cubic: 3n + 1 and resolution O(-3)^2 -> O(-2)^3",
    "hom_dimension": "Hom(I_{C/S}, O_S) in degree 0 is 3-dimensional",
    "adjugate": "A adj(A) = det(A) I and the period-2 complex over det A = 0",
    "en_arithmetic": "Eagon-Northcott ranks 1, 6, 8, 3 give Hilbert polynomial (2n+1)(n+1)",
    "chi_line_bundles": "chi(O_Y(k)) by HRR equals the binomial count",
    "pr_annihilation": "pr kills O(-1), O and O(1)",
    "pr_koszul": "pr kills the Koszul classes 2O(1) - O and 3O(1) - 3O + O(-1)",
    "pr_skyscraper": "pr[O_y] = O_y - O(1) + 5O - 10O(-1)",
    "mukai_count": "v(I_xi) = (1, 0, -3) has square 6, so ext^1 = 8",
    "squarefree_ratio": "at least 90% of sampled fiber eliminants are squarefree",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(EXIT_USAGE)


def _prime(text: str) -> int:
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if p <= 10**4 or not is_prime(p):
        raise argparse.ArgumentTypeError(f"{p} is not a prime larger than 10^4")
    return p


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return n


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


# --- verify ------------------------------------------------------------------------------------

class Recorder:
    def __init__(self, timings: bool):
        self.records = []
        self.timings = timings

    def run(self, name: str, index: int | None, fn):
        t0 = time.perf_counter()
        try:
            ok, witness = fn()
        except (ArithmeticError, ValueError, RuntimeError, ResourceLimit) as exc:
            ok, witness = False, {"error": f"{type(exc).__name__}: {exc}"}
        rec = {"name": name, "index": index, "anchor": ANCHORS[name], "status": "pass" if ok else "fail",
               "witness": _jsonable(witness)}
        if self.timings:
            rec["seconds"] = round(time.perf_counter() - t0, 4)
        self.records.append(rec)
        return ok

    def sorted(self):
        return sorted(self.records, key=lambda r: (r["name"], -1 if r["index"] is None else r["index"]))


def _check_certificate(inst: PfaffianInstance):
    rep = certify_instance(inst)
    x = {"dim": rep.X_dim, "degree": rep.X_degree, "hilbert_polynomial": rep.X_hilbert_poly,
         "sampled_coranks": rep.X_point_smoothness, "scope": rep.smoothness_scope}
    y = dict(rep.Y_witness)
    return rep, x, y


def _y_checks(rec: Recorder, inst, n_fibers: int, n_schubert: int, seed: int):
    ys = corr.sample_Y_points(inst, n_fibers, seed)
    for i, y in enumerate(ys):
        holder = {}

        def fiber_check(y=y, holder=holder):
            f = corr.fiber_over_Y(inst, y, seed)
            holder["f"] = f
            return f.generic and sum(f.factor_degrees) == 4, {
                "y": list(y), "length": f.length, "dimension": f.dim,
                "factor_degrees": list(f.factor_degrees), "squarefree": f.squarefree}

        rec.run("gamma_fiber_length", i, fiber_check)
        f = holder.get("f")

        def xi_check(y=y, f=f):
            pts = corr.xi_points(inst, y, fiber=f)
            split = [p for p in pts if p.residue_degree == 1]
            return sum(p.residue_degree for p in pts) == f.length and all(p.meets_radical for p in split), {
                "residue_degrees": sorted(p.residue_degree for p in pts),
                "split_points": [list(p.plucker) for p in split]}

        rec.run("xi_points", i, xi_check)

        def radical_check(y=y):
            w = corr.radical_not_on_X(inst, y)
            return inst.form_at(y).rank() == 4, {"rank": 4, "witness_form": w.index, "value": w.value}

        rec.run("radical_witness", i, radical_check)
        if i < n_schubert:
            def schubert_check(y=y):
                sc = corr.schubert_cycle(inst, y)
                hd = sc.hilbert(inst)
                return sc.rank == 6 and hd.dim == 5 and hd.degree == 4, {
                    "rank": sc.rank, "dim": hd.dim, "degree": hd.degree}

            rec.run("schubert_cycle", i, schubert_check)


def _x_checks(rec: Recorder, inst, n_points: int, n_pairs: int, seed: int):
    pts = corr.sample_X_points(inst, max(n_points, 2 * n_pairs, 2), seed)
    polys = []
    for i, pt in enumerate(pts[:n_points]):
        def gp_check(pt=pt):
            fx = corr.fiber_over_X(inst, pt)
            hd = fx.hilbert
            polys.append(hd.poly_str())
            return (fx.p_columns_vanish and hd.dim == 2 and hd.degree == 4 and hd.poly_str() == "2n^2 + 3n + 1"), {
                "plucker": list(pt.plucker), "hilbert_polynomial": hd.poly_str(),
                "values": [hd.hilbert_function(n) for n in range(4)], "degree": hd.degree}

        rec.run("gamma_p_hilbert", i, gp_check)
    rec.run("flatness", None, lambda: (len(set(polys)) == 1, {"polynomials": polys}))
    pairs = [(pts[2 * i], pts[2 * i + 1]) for i in range(n_pairs)]
    for r in corr.distinctness_checks(inst, pairs):
        rec.run("pair_distinct", r.index, lambda r=r: (r.passed, {
            "transversal_rank": r.transversal_rank, "fibers_differ": r.fibers_differ, "skipped": r.skipped}))


def _detcubic_checks(rec: Recorder, configs: int, seed: int, p: int):
    for i in range(configs):
        A = dc.classical_matrix(seed + i, p) if i == 0 else dc.random_linear_matrix(stream(seed, i).next_u64(), p)
        combo = dc.STANDARD_COMBO if i == 0 else dc.random_combo(stream(seed, i, 1).next_u64(), p)
        holder = {}

        def cubic_check(A=A, combo=combo, holder=holder):
            C = dc.make_det_curve(A, combo)
            holder["C"] = C
            shape = dc.resolution_shape(C)
            return shape.passed and C.hilbert.poly_str() == "3n + 1", {
                "hilbert_polynomial": C.hilbert.poly_str(), "betti": shape.betti}

        rec.run("twisted_cubic", i, cubic_check)
        C = holder.get("C")
        if C is None:
            continue
        rec.run("hom_dimension", i, lambda C=C: (dc.hom_dimension(C) == 3, {"dim": dc.hom_dimension(C)}))

        def adj_check(A=A, C=C):
            r = dc.two_periodic_check(A, C)
            return r.passed, {"cramer": r.cramer_left and r.cramer_right, "mod_det": r.composites_vanish_mod_det,
                              "series": r.truncated_series_ok}

        rec.run("adjugate", i, adj_check)


def _ktheory_checks(rec: Recorder, which: str = "all"):
    if which in ("all", "en"):
        def en():
            r = kt.en_class_check()
            return r.passed, {"coefficients": r.coefficients, "values": r.values, "degree": r.degree}

        rec.run("en_arithmetic", None, en)
    if which in ("all", "pr"):
        def chi():
            table = {k: (kt.euler_pairing(kt.line_bundle(0), kt.line_bundle(k)), kt.chi_line_bundle_oracle(k))
                     for k in range(-6, 7)}
            ok = all(a == b for a, b in table.values())
            ok &= table[0][0] == 1 and table[1][0] == 6 and table[-3][0] == 1
            return ok, {"chi": {str(k): a for k, (a, _) in table.items()}}

        rec.run("chi_line_bundles", None, chi)

        def ann():
            vals = {str(k): str(kt.pr_class(kt.line_bundle(k))) for k in (-1, 0, 1)}
            return all(kt.pr_class(kt.line_bundle(k)).is_zero() for k in (-1, 0, 1)), {"pr": vals}

        rec.run("pr_annihilation", None, ann)

        def kos():
            a = kt.pr_class(kt.koszul_surface_class())
            b = kt.pr_class(kt.koszul_curve_class())
            return a.is_zero() and b.is_zero(), {"surface": str(a), "curve": str(b)}

        rec.run("pr_koszul", None, kos)

        def sky():
            r = kt.pr_skyscraper()
            return r.passed, {"class": str(r.result), "chain": r.chain}

        rec.run("pr_skyscraper", None, sky)
    if which in ("all", "mukai"):
        def muk():
            v = kt.ideal_sheaf_vector(4)
            return kt.mukai(v, v) == 6 and kt.ext1_dim(v) == 8, {
                "v": [v.r, v.d, v.s], "square": kt.mukai(v, v), "ext1": kt.ext1_dim(v),
                "pt_pt": kt.mukai(kt.V_POINT, kt.V_POINT), "ox_pt": kt.mukai(kt.V_OX, kt.V_POINT)}

        rec.run("mukai_count", None, muk)


def build_report(command: str, config: dict, records: list, inst: PfaffianInstance | None = None) -> dict:
    ok = all(r["status"] == "pass" for r in records)
    return {
        "schema_version": REPORT_SCHEMA_VERSION,
        "toolkit_version": __version__,
        "rng": ALGORITHM,
        "command": command,
        "config": config,
        "instance": {"seed": inst.seed, "prime": inst.p, "attempt": inst.attempt} if inst else None,
        "checks": records,
        "verdict": "pass" if ok else "fail",
    }


def _load(path: str) -> PfaffianInstance:
    with open(path, encoding="utf-8") as fh:
        return loads_instance(fh.read())


def cmd_sample(args) -> int:
    try:
        inst = sample_instance(args.seed, args.prime, max_retries=args.retries)
    except GenericityExhausted as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_GENERICITY
    text = dumps_instance(inst)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_PASS


def cmd_verify(args) -> int:
    inst = _load(args.instance)
    full = args.suite == "full"
    rec = Recorder(args.timings)

    rep, xw, yw = _check_certificate(inst)
    rec.run("y_smooth", None, lambda: (rep.Y_smooth, yw))
    rec.run("x_certificate", None, lambda: (rep.X_dim == 2 and rep.X_degree == 14
                                            and rep.X_hilbert_poly == "7n^2 + 2" and rep.failed is None, xw))
    _y_checks(rec, inst, args.fibers, 5, args.seed)
    _x_checks(rec, inst, 5, args.pairs, args.seed)
    _detcubic_checks(rec, 5 if full else 3, args.seed, inst.p)
    _ktheory_checks(rec)
    if full:
        more = _stats(inst, 100, args.seed)
        rec.run("squarefree_ratio", None, lambda: (more["squarefree_fraction"] >= 0.9, more))
    config = {"instance": args.instance, "fibers": args.fibers, "pairs": args.pairs, "suite": args.suite,
              "seed": args.seed}
    report = build_report("verify", config, rec.sorted(), inst)
    _emit(report, args.json)
    failing = [r for r in report["checks"] if r["status"] != "pass"]
    for r in failing:
        print(f"FAIL {r['name']}[{r['index']}]: {r['anchor']}", file=sys.stderr)
    return EXIT_PASS if not failing else EXIT_FAIL


def _stats(inst, n: int, seed: int) -> dict:
    patterns: dict = {}
    sq = lengths4 = 0
    for t in range(n):
        y = point_on_Y(inst, stream(seed, 0x5354, t).next_u64())
        f = corr.fiber_over_Y(inst, y, seed)
        sq += bool(f.squarefree)
        lengths4 += f.length == 4
        key = "+".join(map(str, f.factor_degrees)) or "none"
        patterns[key] = patterns.get(key, 0) + 1
    return {"samples": n, "squarefree": sq, "squarefree_fraction": round(sq / n, 6) if n else 0.0,
            "length4": lengths4, "degree_patterns": dict(sorted(patterns.items()))}


def cmd_map_point(args) -> int:
    inst = _load(args.instance)
    if args.stats:
        out = _stats(inst, args.stats, args.seed)
        if args.json:
            sys.stdout.write(canonical_json(out))
        else:
            print(f"samples: {out['samples']}")
            print(f"squarefree eliminants: {out['squarefree']} ({out['squarefree_fraction']:.3f})")
            print(f"length-4 fibers: {out['length4']}")
            for k, v in out["degree_patterns"].items():
                print(f"  residue degrees {k}: {v}")
        return EXIT_PASS
    y = point_on_Y(inst, args.seed)
    f = corr.fiber_over_Y(inst, y, args.seed)
    out = f.to_dict()
    if args.json:
        sys.stdout.write(canonical_json(out))
    else:
        print(f"y = {list(y)}")
        print(f"status: {out['status']}")
        if f.dim == 0:
            print(f"fiber length: {f.length}")
            print(f"eliminant factor degrees: {list(f.factor_degrees)}")
            for p, k in f.split:
                print(f"split point: {list(p)}")
        else:
            print(f"fiber dimension: {f.dim}")
    return EXIT_PASS


def cmd_ktheory(args) -> int:
    rec = Recorder(False)
    _ktheory_checks(rec, args.check)
    report = build_report("ktheory", {"check": args.check}, rec.sorted())
    if args.json:
        sys.stdout.write(canonical_json(report))
    else:
        if args.check in ("all", "en"):
            r = kt.en_class_check()
            print("Eagon-Northcott Hilbert values")
            for n, v in enumerate(r.values):
                print(f"  n={n}: {v}")
            print(f"  polynomial coefficients: {[str(c) for c in r.coefficients]}  degree {r.degree}")
        if args.check in ("all", "pr"):
            print("chi(O_Y(k)): HRR / binomial")
            for k in range(-6, 7):
                print(f"  k={k:+d}: {kt.euler_pairing(kt.line_bundle(0), kt.line_bundle(k))} / "
                      f"{kt.chi_line_bundle_oracle(k)}")
            for k in (-1, 0, 1):
                print(f"pr[O({k})] = {kt.pr_class(kt.line_bundle(k))}")
            print(f"pr[2O(1) - O] = {kt.pr_class(kt.koszul_surface_class())}")
            print(f"pr[3O(1) - 3O + O(-1)] = {kt.pr_class(kt.koszul_curve_class())}")
            print(f"pr[O_y] = {kt.pr_skyscraper().result}")
        if args.check in ("all", "mukai"):
            v = kt.ideal_sheaf_vector(4)
            print(f"v(I_xi) = ({v.r}, {v.d}, {v.s})  <v,v> = {kt.mukai(v, v)}  ext^1 = {kt.ext1_dim(v)}")
            print(f"<v(pt), v(pt)> = {kt.mukai(kt.V_POINT, kt.V_POINT)}  <v(O_X), v(pt)> = "
                  f"{kt.mukai(kt.V_OX, kt.V_POINT)}")
    return EXIT_PASS if report["verdict"] == "pass" else EXIT_FAIL


def _emit(report: dict, as_json: bool):
    if as_json:
        sys.stdout.write(canonical_json(report))
        return
    for r in report["checks"]:
        idx = "" if r["index"] is None else f"[{r['index']}]"
        print(f"{r['status'].upper():4}  {r['name']}{idx}  {r['anchor']}")
    print(f"verdict: {report['verdict']}")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="pfk3", description="Pfaffian cubic / K3 verification toolkit")
    ap.add_argument("--version", action="version", version=f"pfk3 {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("sample", help="sample and certify an instance")
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--prime", type=_prime, default=DEFAULT_PRIME)
    s.add_argument("--out")
    s.add_argument("--retries", type=_positive, default=8)
    s.set_defaults(func=cmd_sample)

    v = sub.add_parser("verify", help="run the verification suite on an instance")
    v.add_argument("--instance", required=True)
    v.add_argument("--fibers", type=_positive, default=20)
    v.add_argument("--pairs", type=_positive, default=10)
    v.add_argument("--suite", choices=("fast", "full"), default="fast")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--json", action="store_true")
    v.add_argument("--timings", action="store_true", help="add wall times (breaks byte-stability)")
    v.set_defaults(func=cmd_verify)

    m = sub.add_parser("map-point", help="evaluate y -> xi(y) at a sampled point of Y")
    m.add_argument("--instance", required=True)
    m.add_argument("--seed", type=int, required=True)
    m.add_argument("--stats", type=_positive, default=0)
    m.add_argument("--json", action="store_true")
    m.set_defaults(func=cmd_map_point)

    k = sub.add_parser("ktheory", help="K-theory and Mukai lattice identities")
    k.add_argument("--check", choices=("all", "pr", "en", "mukai"), default="all")
    k.add_argument("--json", action="store_true")
    k.set_defaults(func=cmd_ktheory)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, InstanceFormatError) as exc:
        print(f"pfk3: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
