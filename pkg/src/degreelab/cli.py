"""Command-line front end.

    degreelab degrees  --map henon --iters 10 --out results/
    degreelab gapfit   --map fib --iters 12 --lambda1 auto --lambda2 auto
    degreelab eigenval --map henon --iters 8
    degreelab minpoly  --map plastic --degree-bound 3 --precision 60
    degreelab surface  --suite all --trials 1000 --seed 7

Exit codes: 0 success, 2 parse error, 3 resource cap, 4 hypothesis
violation (including insufficient precision), 5 invariant or
convergence failure.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction
from pathlib import Path

import mpmath

from . import __version__
from .bigfloat import BigFloat
from .degrees import (check_gap_condition, check_submultiplicative, estimate_lambda1,
                      gap_fit)
from .dynmaps import (Caps, MonomialMap, PolyMap, ProjRationalMap, degree_sequence,
                      lambda_k_monomial, monomial_degree_sequence, proj_degree_sequence,
                      verify_inverse, lambda2_via_inverse)
from .errors import (ConvergenceError, DegreeLabError, HypothesisError, InvariantError,
                     ParseError, PrecisionError, ResourceLimitError)
from .jsonio import SCHEMA, canonical_dumps, finalize_report, tagged, write_tsv
from .picard_manin import (NefPool, PMClass, check_hodge_lower_bound, check_norm_comparison,
                           check_pairing_bound, dual_path_check, intersect, pm_eigenclass,
                           siu_nef_check, truncation_monotonicity)
from .registry import builtin_names, builtin_operator, load_map
from .valuations import (certify_algebraicity, eigen_weight_power_iteration,
                         eigenvaluation_scaled_limit, value_group_matrix,
                         verify_eigen_equation, verify_valuation_axioms)

MONOMIAL_TABLE_CAPS = Caps(max_degree=2 ** 62, max_terms=2_000_000)


def _base_report(command, inputs):
    return {
        "schema": SCHEMA,
        "library_version": __version__,
        "command": command,
        "inputs": inputs,
        "caps_status": "ok",
    }


def _emit(report, args, data_files=()):
    report = finalize_report(report)
    text = canonical_dumps(report)
    if args.out:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        name = f"{report['inputs'].get('map', report['command'])}_{report['command']}.json"
        (outdir / name).write_text(text + "\n", encoding="utf-8")
        for fname, header, rows in data_files:
            write_tsv(outdir / fname, header, rows)
    print(text)
    return 0


def _sequence_for(mapfile, iters, caps):
    m = mapfile.to_map()
    if isinstance(m, MonomialMap):
        return monomial_degree_sequence(m, iters), m
    if isinstance(m, ProjRationalMap):
        return proj_degree_sequence(m, iters, caps), m
    return degree_sequence(m, iters, caps), m


def _resolve_lambda(text, which, mapfile, iters, precision, caps):
    """auto | exact | estimate | numeric literal -> (BigFloat, provenance)."""
    if text not in ("auto", "exact", "estimate"):
        try:
            if "/" in text:
                return BigFloat(Fraction(text), precision), "exact"
            digits = len(text.replace(".", "").replace("-", "").lstrip("0")) or 1
            return BigFloat(text, max(32, int(digits * 3.33))), "exact"
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"cannot parse {which} value {text!r}") from exc
    m = mapfile.to_map()
    if isinstance(m, MonomialMap):
        k = 1 if which == "lambda1" else 2
        value, _iv = lambda_k_monomial(m, k, precision=precision)
        return value, "certified-interval"
    if which == "lambda1":
        try:
            seq, _ = _sequence_for(mapfile, iters, caps)
        except ResourceLimitError as exc:
            if exc.partial is None:
                raise
            seq = exc.partial  # estimate from whatever was computed
        est = estimate_lambda1(seq, precision=precision)
        prov = "certified-interval" if est.method == "exact-root" else "heuristic-estimate"
        if text == "exact" and est.method != "exact-root":
            raise PrecisionError("no exact lambda1 source for this map; pass a value")
        return est.point, prov
    # lambda2 for polynomial maps: automorphism route only
    if isinstance(m, PolyMap) and m.inverse_components is not None and verify_inverse(m):
        seq2 = lambda2_via_inverse(m, min(iters, 10), caps)
        if m.dimension == 2:
            return BigFloat(1, precision), "exact"
        est = estimate_lambda1(seq2, precision=precision)
        prov = "certified-interval" if est.method == "exact-root" else "heuristic-estimate"
        return est.point, prov
    raise HypothesisError(
        "no automatic lambda2 source for this map; pass --lambda2 with a value")


# -- commands ---------------------------------------------------------------

def cmd_degrees(args):
    caps = Caps(max_degree=args.max_degree, max_terms=args.max_terms)
    mapfile = load_map(args.map)
    t0 = time.time()
    report = _base_report("degrees", {
        "map": mapfile.label, "iters": args.iters, "seed": args.seed,
        "precision": args.precision,
    })
    try:
        seq, _m = _sequence_for(mapfile, args.iters, caps)
    except ResourceLimitError as exc:
        if exc.partial is None:
            raise
        seq = exc.partial
        report["caps_status"] = f"exceeded at iterate {exc.iterate}"
    sub = check_submultiplicative(seq)
    est = estimate_lambda1(seq, precision=args.precision)
    report["outputs"] = {
        "degrees": list(seq.degrees),
        "truncated": seq.truncated,
        "submultiplicative": {
            "ok": sub.ok, "pairs_checked": sub.pairs_checked,
            "violations": list(sub.violations), "all_equalities": sub.all_equalities,
        },
        "lambda1": {
            "point": tagged(est.point, "certified-interval" if est.method == "exact-root"
                            else "heuristic-estimate"),
            "upper_bound": tagged(est.upper_bound, "certified-interval"),
            "lower_bracket": tagged(est.lower_bracket, "heuristic-estimate"),
            "method": est.method,
            "recurrence": est.recurrence,
        },
    }
    report["wall_time_s"] = round(time.time() - t0, 3)
    rows = [(n, mpmath.nstr(mpmath.log(d), 12)) for n, d in enumerate(seq.degrees)]
    return _emit(report, args, [(f"{mapfile.label}_degrees.tsv", ("n", "log_d_n"), rows)])


def cmd_gapfit(args):
    caps = Caps(max_degree=args.max_degree, max_terms=args.max_terms)
    mapfile = load_map(args.map)
    t0 = time.time()
    report = _base_report("gapfit", {
        "map": mapfile.label, "iters": args.iters, "seed": args.seed,
        "precision": args.precision, "lambda1": args.lambda1, "lambda2": args.lambda2,
    })
    lam1, prov1 = _resolve_lambda(args.lambda1, "lambda1", mapfile, args.iters,
                                  args.precision, caps)
    lam2, prov2 = _resolve_lambda(args.lambda2, "lambda2", mapfile, args.iters,
                                  args.precision, caps)
    gate = check_gap_condition(lam1, lam2)
    if gate.holds is not True:
        raise HypothesisError(
            f"spectral gap hypothesis lambda1^2 > lambda2 not certified "
            f"(lambda1={lam1.str_digits(10)}, lambda2={lam2.str_digits(10)})")
    seq, _m = _sequence_for(mapfile, args.iters, caps)
    fit = gap_fit(seq, lam1, lam2, precision=args.precision)
    report["outputs"] = {
        "lambda1": tagged(lam1, prov1),
        "lambda2": tagged(lam2, prov2),
        "gap_margin": tagged(gate.margin, "certified-interval"),
        "c_estimate": tagged(fit.c_estimate, "heuristic-estimate"),
        "residual_rate": tagged(fit.residual_rate, "heuristic-estimate")
        if fit.residual_rate is not None else None,
        "fit_range": fit.fit_range,
        "window": [tagged(fit.window[0], "certified-interval"),
                   tagged(fit.window[1], prov1)],
        "window_midpoint": tagged(fit.window_midpoint, "certified-interval"),
        "rate_within_window": fit.rate_within_window,
        "vacuous": fit.vacuous,
    }
    report["wall_time_s"] = round(time.time() - t0, 3)
    rows = [(n, mpmath.nstr(mpmath.log(abs(r)), 12) if r != 0 else "-inf")
            for n, r in enumerate(fit.residuals)]
    return _emit(report, args, [(f"{mapfile.label}_residuals.tsv",
                                 ("n", "log_abs_r_n"), rows)])


def cmd_eigenval(args):
    caps = Caps(max_degree=args.max_degree, max_terms=args.max_terms)
    mapfile = load_map(args.map)
    t0 = time.time()
    report = _base_report("eigenval", {
        "map": mapfile.label, "iters": args.iters, "seed": args.seed,
        "precision": args.precision, "trials": args.trials,
    })
    lam1, prov1 = _resolve_lambda(args.lambda1, "lambda1", mapfile, args.iters,
                                  args.precision, caps)
    m = mapfile.to_map()
    is_monomial = isinstance(m, MonomialMap)
    f = m.to_poly_map() if is_monomial else m
    if not isinstance(f, PolyMap):
        raise HypothesisError("eigenvaluations are computed for polynomial maps")
    table_caps = MONOMIAL_TABLE_CAPS if is_monomial else caps
    try:
        table = eigenvaluation_scaled_limit(
            f, mapfile.parsed_testpolys(), args.iters, lam1,
            caps=table_caps, coord_labels=mapfile.varnames)
    except (ResourceLimitError, ConvergenceError) as exc:
        # partial output, then the resource/convergence exit code
        report["caps_status"] = f"aborted: {exc}"
        report["outputs"] = {"lambda1": tagged(lam1, prov1), "partial": True,
                             "error": str(exc)}
        report["wall_time_s"] = round(time.time() - t0, 3)
        _emit(report, args)
        return 3 if isinstance(exc, ResourceLimitError) else 5
    eigen = verify_eigen_equation(table, tol=args.tol)
    axiom_n = min(args.iters, 4)
    axiom_table = table if (is_monomial or args.iters <= 4) else eigenvaluation_scaled_limit(
        f, (), axiom_n, lam1, caps=table_caps, coord_labels=mapfile.varnames)
    axioms = verify_valuation_axioms(axiom_table.make_oracle(), f.dimension,
                                     trials=args.trials, tol=args.tol, seed=args.seed)
    vgm = value_group_matrix(table, precision_digits=min(30, args.precision // 2))
    outputs = {
        "lambda1": tagged(lam1, prov1),
        "normalization": tagged(table.normalization, "heuristic-estimate"),
        "table": {
            label: {
                "degrees": list(entry.degrees),
                "scaled": [mpmath.nstr(s, 15) for s in entry.scaled],
                "limit": mpmath.nstr(entry.limit, 15) if entry.limit is not None else None,
                "normalized_limit": mpmath.nstr(table.normalized_limit(label), 15)
                if entry.limit is not None else None,
                "converged": entry.converged,
            }
            for label, entry in sorted(table.entries.items())
        },
        "eigen_equation": {"max_violation": eigen.max_violation, "ok": eigen.ok},
        "axioms": {
            "trials": axioms.trials, "at_iterate": axiom_n if not is_monomial else args.iters,
            "max_mult_violation": axioms.max_mult_violation,
            "min_superadd_margin": axioms.min_superadd_margin,
            "constants_ok": axioms.constants_ok, "ok": axioms.ok,
        },
        "value_group": None if vgm is None else {
            "labels": list(vgm.labels),
            "q_rows": [[str(q) for q in row] for row in vgm.q],
            "residual": vgm.residual,
            "char_value_at_lambda1": vgm.char_value,
        },
    }
    if is_monomial:
        weights, lam_pi = eigen_weight_power_iteration(m)
        scaled = table.normalized_coordinate_values()
        agree = max(abs(s - mpmath.mpf(w.numerator) / w.denominator)
                    for s, w in zip(scaled, weights.weights))
        outputs["eigen_weight"] = {
            "weights": [str(w) for w in weights.weights],
            "lambda1": tagged(lam_pi, "heuristic-estimate"),
            "scaled_limit_agreement": mpmath.nstr(agree, 6),
        }
    report["outputs"] = outputs
    report["wall_time_s"] = round(time.time() - t0, 3)
    return _emit(report, args)


def cmd_minpoly(args):
    t0 = time.time()
    inputs = {"degree_bound": args.degree_bound, "precision": args.precision,
              "seed": args.seed}
    if args.value:
        inputs["value"] = args.value
        digits = len(args.value.replace(".", "").replace("-", "").lstrip("0"))
        lam = BigFloat(args.value, int(digits * 3.33) + 8)
        label = "value"
        prov = "exact"
    else:
        mapfile = load_map(args.map)
        inputs["map"] = mapfile.label
        label = mapfile.label
        m = mapfile.to_map()
        if isinstance(m, MonomialMap):
            bits = int(args.precision * 3.33) + 64
            lam, _iv = lambda_k_monomial(m, 1, precision=bits)
            prov = "certified-interval"
        else:
            caps = Caps(max_degree=args.max_degree, max_terms=args.max_terms)
            seq, _ = _sequence_for(mapfile, args.iters, caps)
            est = estimate_lambda1(seq, precision=int(args.precision * 3.33) + 64)
            if est.method != "exact-root":
                raise PrecisionError(
                    "lambda1 estimate is not certified to enough digits for "
                    "minimal-polynomial recovery; provide --value or a recurrent map")
            lam = est.point
            prov = "certified-interval"
    report = _base_report("minpoly", inputs)
    report["inputs"]["map"] = inputs.get("map", label)
    cert = certify_algebraicity(lam, args.degree_bound, args.precision)
    report["outputs"] = {
        "lambda1": tagged(lam, prov),
        "certificate": None if cert is None else {
            "polynomial": cert.candidate.pretty(),
            "degree_bound": cert.degree_bound,
            "residual": tagged(cert.residual, "certified-interval"),
            "precision_digits": cert.precision_digits,
            "coefficient_height": cert.coefficient_height,
        },
        "found": cert is not None,
    }
    report["wall_time_s"] = round(time.time() - t0, 3)
    return _emit(report, args)


SURFACE_SUITES = ("hodge", "comparison", "pairing", "truncation", "siu", "cremona",
                  "eigenclass", "dual")


def _surface_suite(suite, trials, seed, rank):
    pool = NefPool(rank, seed=seed)
    rows = []
    failures = 0
    if suite == "hodge":
        e0 = PMClass.e(rank, 0)
        for t in range(trials):
            alpha = pool.sample_class()
            ok = check_hodge_lower_bound(e0, alpha)
            rows.append((t, "hodge", ok, ""))
            failures += not ok
    elif suite == "comparison":
        for t in range(trials):
            w1, w2 = pool.sample(big=True), pool.sample(big=True)
            alpha = pool.sample_class()
            rep = check_norm_comparison(w1, w2, alpha)
            rows.append((t, "comparison", rep.holds, str(rep.bound)))
            failures += not rep.holds
    elif suite == "pairing":
        e0 = PMClass.e(rank, 0)
        for t in range(trials):
            a, b = pool.sample_class(), pool.sample_class()
            ok = check_pairing_bound(e0, a, b)
            rows.append((t, "pairing", ok, ""))
            failures += not ok
    elif suite == "truncation":
        import random as _r
        rng = _r.Random(seed)
        for t in range(trials):
            alpha = pool.sample_class()
            ext = [Fraction(rng.randint(-6, 6), rng.choice((1, 2, 3)))
                   for _ in range(rng.randint(1, 3))]
            ok = truncation_monotonicity(alpha, ext)
            rows.append((t, "truncation", ok, ""))
            failures += not ok
    elif suite == "siu":
        for t in range(trials):
            w = pool.sample(big=True)
            a, b = pool.sample(big=False), pool.sample(big=False)
            ok = siu_nef_check(w, a, b)
            rows.append((t, "siu", ok, ""))
            failures += not ok
    elif suite == "cremona":
        op = builtin_operator("cremona", rank=max(rank, 4))
        checks = {
            "square_is_identity": op.compose(op) == op.power(0),
            "preserves_form": op.preserves_form(),
            "degree_readoff": intersect(op.apply(PMClass.e(op.rank, 0)),
                                        PMClass.e(op.rank, 0)) == 2,
        }
        for name, ok in checks.items():
            rows.append((0, name, ok, ""))
            failures += not ok
    elif suite == "eigenclass":
        op = builtin_operator("pell", rank=max(rank, 4))
        res = pm_eigenclass(op, iters=200, tol=Fraction(1, 10 ** 8))
        decay = [abs(x) for x in res.self_intersections]
        mono = all(a >= b for a, b in zip(decay, decay[1:]))
        small = any(x < Fraction(1, 10 ** 6) for x in decay)
        for name, ok in (("converged", res.converged), ("monotone_decay", mono),
                         ("reaches_1e-6", small)):
            rows.append((0, name, ok, ""))
            failures += not ok
    elif suite == "dual":
        from .registry import load_builtin
        op = builtin_operator("sigma_tau")
        g = load_builtin("sigma_tau").to_map()
        rep = dual_path_check(op, g, 4)
        rows.append((0, "dual_path_sigma_tau", rep.agree,
                     f"{rep.operator_degrees} vs {rep.map_degrees}"))
        failures += not rep.agree
    else:
        raise ParseError(f"unknown suite {suite!r}; available: {', '.join(SURFACE_SUITES)}")
    return rows, failures


def cmd_surface(args):
    t0 = time.time()
    report = _base_report("surface", {
        "map": "surface", "suite": args.suite, "trials": args.trials,
        "seed": args.seed, "rank": args.rank,
    })
    suites = SURFACE_SUITES if args.suite == "all" else (args.suite,)
    all_rows = []
    summary = {}
    total_failures = 0
    for suite in suites:
        rows, failures = _surface_suite(suite, args.trials, args.seed, args.rank)
        all_rows.extend(rows)
        summary[suite] = {"checks": len(rows), "failures": failures}
        total_failures += failures
    operators = {}
    for name in ("cremona", "pell", "sigma_tau"):
        op = builtin_operator(name)
        operators[name] = {
            "rank": op.rank,
            "matrix": [[str(x) for x in row] for row in op.matrix],
            "preserves_form": op.preserves_form(),
        }
    report["outputs"] = {"suites": summary, "total_failures": total_failures,
                         "operators": operators}
    report["wall_time_s"] = round(time.time() - t0, 3)
    data = [("surface_trials.csv", ("trial", "check", "verdict", "detail"), all_rows)]
    code = _emit(report, args, data)
    if total_failures:
        raise InvariantError(f"{total_failures} surface checks failed")
    return code


# -- argument plumbing --------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(
        prog="degreelab",
        description="Exact degree growth and dynamical degrees laboratory. "
                    f"Built-in maps: {', '.join(builtin_names())}.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, needs_map=True):
        if needs_map:
            sp.add_argument("--map", required=True,
                            help="built-in name or path to a map file")
        sp.add_argument("--iters", type=int, default=10)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--precision", type=int, default=128,
                        help="working precision (bits for sequences, digits for minpoly)")
        sp.add_argument("--out", default=None, help="directory for JSON/plot files")
        sp.add_argument("--max-degree", type=int, default=4096)
        sp.add_argument("--max-terms", type=int, default=2_000_000)
        sp.add_argument("--tol", type=float, default=1e-6)
        sp.add_argument("--trials", type=int, default=200)

    sp = sub.add_parser("degrees", help="degree sequence, submultiplicativity, lambda1")
    common(sp)
    sp.set_defaults(func=cmd_degrees)

    sp = sub.add_parser("gapfit", help="spectral-gap asymptotic fit d_n ~ C lambda1^n")
    common(sp)
    sp.add_argument("--lambda1", default="auto")
    sp.add_argument("--lambda2", default="auto")
    sp.set_defaults(func=cmd_gapfit)

    sp = sub.add_parser("eigenval", help="eigenvaluation table and axiom checks")
    common(sp)
    sp.add_argument("--lambda1", default="auto")
    sp.set_defaults(func=cmd_eigenval)

    sp = sub.add_parser("minpoly", help="LLL minimal-polynomial certification of lambda1")
    common(sp, needs_map=False)
    sp.add_argument("--map", default=None)
    sp.add_argument("--value", default=None, help="decimal literal to certify instead of a map")
    sp.add_argument("--degree-bound", type=int, default=3)
    sp.set_defaults(func=cmd_minpoly, precision_digits=None)

    sp = sub.add_parser("surface", help="Picard-Manin inequality and operator suites")
    common(sp, needs_map=False)
    sp.add_argument("--suite", default="all",
                    help=f"one of {', '.join(SURFACE_SUITES)} or all")
    sp.add_argument("--rank", type=int, default=8)
    sp.set_defaults(func=cmd_surface)
    return p


EXIT_CODES = (
    (ParseError, 2),
    (ResourceLimitError, 3),
    (HypothesisError, 4),
    (PrecisionError, 4),
    (InvariantError, 5),
    (ConvergenceError, 5),
    (DegreeLabError, 5),
)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "minpoly":
        if not args.map and not args.value:
            parser.error("minpoly needs --map or --value")
        args.precision = args.precision if args.precision != 128 else 60
    try:
        return args.func(args)
    except DegreeLabError as exc:
        for klass, code in EXIT_CODES:
            if isinstance(exc, klass):
                print(f"error: {exc}", file=sys.stderr)
                return code
        raise


if __name__ == "__main__":
    sys.exit(main())
