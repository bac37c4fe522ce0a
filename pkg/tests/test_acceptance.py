"""Acceptance suite: one test per criterion, each printing a pass/fail
line with its runtime (run with `pytest tests/test_acceptance.py -s`).

Every tolerance is pinned here; the expected constants come from closed
forms or independent bisection oracles, never from the code under test.
"""

import random
import time
from fractions import Fraction

import mpmath
import pytest

from degreelab.bigfloat import BigFloat
from degreelab.degrees import (check_gap_condition, check_log_concavity,
                               check_submultiplicative, estimate_lambda1, gap_fit)
from degreelab.dynmaps import (Caps, MonomialMap, degree_sequence, lambda_k_monomial,
                               monomial_degree_sequence, proj_degree_sequence)
from degreelab.intpoly import IntPoly
from degreelab.lll import lll_min_poly
from degreelab.multipoly import compose, parse_poly, reduce_homogeneous_tuple
from degreelab.picard_manin import (NefPool, PMClass, PMOperator, check_hodge_lower_bound,
                                    check_norm_comparison, check_pairing_bound, cremona_operator,
                                    dual_path_check, intersect, pm_degree_sequence,
                                    pm_eigenclass, siu_nef_check, truncation_monotonicity)
from degreelab.registry import builtin_names, builtin_operator, load_builtin
from degreelab.valuations import (certify_algebraicity, eigen_weight_power_iteration,
                                  eigenvaluation_scaled_limit, verify_eigen_equation,
                                  verify_valuation_axioms)
from conftest import bisect_root

BIG_CAPS = Caps(max_degree=2 ** 62, max_terms=2_000_000)


class Stopwatch:
    def __init__(self, number, title, budget):
        self.number, self.title, self.budget = number, title, budget

    def __enter__(self):
        self.t0 = time.time()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.time() - self.t0
        verdict = "PASS" if exc_type is None else "FAIL"
        print(f"ACCEPTANCE {self.number:2d} [{verdict}] {self.title} "
              f"({elapsed:.1f}s / budget {self.budget}s)")
        if exc_type is None:
            assert elapsed < self.budget, \
                f"criterion {self.number} exceeded its {self.budget}s budget ({elapsed:.1f}s)"


def _sequence(name, n):
    mf = load_builtin(name)
    m = mf.to_map()
    if isinstance(m, MonomialMap):
        return monomial_degree_sequence(m, n)
    if hasattr(m, "components") and len(m.components) == len(mf.varnames) \
            and mf.kind == "projective":
        return proj_degree_sequence(m, n)
    return degree_sequence(m, n)


def test_criterion_1_submultiplicativity():
    with Stopwatch(1, "submultiplicativity d_{n+m} <= d_n d_m for all built-ins, n+m <= 10", 30):
        for name in builtin_names():
            seq = _sequence(name, 10)
            rep = check_submultiplicative(seq)
            assert rep.ok, f"{name}: violations {rep.violations}"


def test_criterion_2_dual_oracle_lambda1():
    with Stopwatch(2, "degree-sequence lambda1 at N = 12 matches certified rho(A) to 1e-3", 10):
        targets = {
            "fib": bisect_root([-1, -1, 1], 1, 2),
            "m21": bisect_root([1, -3, 1], 2, 3),
            "plastic": bisect_root([-1, -1, 0, 1], 1, 2),
        }
        for name, root in targets.items():
            mono = load_builtin(name).to_map()
            seq = monomial_degree_sequence(mono, 12)
            est = estimate_lambda1(seq)
            certified, _ = lambda_k_monomial(mono, 1, precision=128)
            assert abs(certified.to_fraction() - root) < Fraction(1, 10 ** 9)
            assert abs(est.point.to_fraction() - certified.to_fraction()) \
                < Fraction(1, 1000), name


def test_criterion_3_gap_asymptotic():
    with Stopwatch(3, "degree growth d_n = C lambda1^n + O(lambda^n): C and decay rates", 10):
        with mpmath.workprec(80):
            phi = (1 + mpmath.sqrt(5)) / 2
            c_target = float(phi ** 2 / mpmath.sqrt(5))
            midpoint_target = float((1 + phi) / 2)
        fib = load_builtin("fib").to_map()
        lam1, _ = lambda_k_monomial(fib, 1, precision=128)
        fit = gap_fit(monomial_degree_sequence(fib, 12), lam1, BigFloat(1))
        assert abs(float(fit.c_estimate.value) - c_target) < 1e-3
        assert float(fit.residual_rate.value) <= midpoint_target + 1e-12

        m21 = load_builtin("m21").to_map()
        lam1, _ = lambda_k_monomial(m21, 1, precision=128)
        fit = gap_fit(monomial_degree_sequence(m21, 12), lam1, BigFloat(1))
        assert abs(float(fit.residual_rate.value) - 0.381966) < 1e-2

        henon_seq = degree_sequence(load_builtin("henon").to_map(), 10)
        fit = gap_fit(henon_seq, BigFloat(2), BigFloat(1))
        assert fit.vacuous  # residuals identically zero
        assert all(r == 0 for r in fit.residuals)


def test_criterion_4_henon_eigenvaluation():
    with Stopwatch(4, "Henon eigenvaluation: v(x) = -1/2, v(y) = -1; eigen-equation; axioms", 60):
        mf = load_builtin("henon")
        f = mf.to_map()
        table = eigenvaluation_scaled_limit(f, mf.parsed_testpolys(), 8, BigFloat(2),
                                            coord_labels=mf.varnames)
        assert abs(table.normalized_limit("x") - Fraction(-1, 2)) < mpmath.mpf("1e-9")
        assert abs(table.normalized_limit("y") - Fraction(-1)) < mpmath.mpf("1e-9")
        eigen = verify_eigen_equation(table, tol=1e-6)
        assert eigen.ok, eigen
        axiom_table = eigenvaluation_scaled_limit(f, (), 4, BigFloat(2),
                                                  coord_labels=mf.varnames)
        rep = verify_valuation_axioms(axiom_table.make_oracle(), 2,
                                      trials=200, tol=1e-6, seed=2024)
        assert rep.trials >= 200 and rep.ok, rep


def test_criterion_5_monomial_dual_constructions():
    with Stopwatch(5, "eigen-weight vs scaled-limit valuations agree to 1e-9 (fib, plastic)", 10):
        for name in ("fib", "plastic"):
            mono = load_builtin(name).to_map()
            lam, _ = lambda_k_monomial(mono, 1, precision=160)
            table = eigenvaluation_scaled_limit(mono.to_poly_map(), [], 56, lam,
                                                caps=BIG_CAPS)
            weights, _ = eigen_weight_power_iteration(mono, tol=Fraction(1, 10 ** 12))
            scaled = table.normalized_coordinate_values()
            assert min(weights.weights) == -1
            for s, w in zip(scaled, weights.weights):
                err = abs(s - mpmath.mpf(w.numerator) / w.denominator)
                assert err < mpmath.mpf("1e-9"), (name, err)


def test_criterion_6_algebraicity_certificates():
    with Stopwatch(6, "LLL certificates: plastic -> x^3-x-1, phi -> x^2-x-1, pi -> NotFound", 5):
        plastic = load_builtin("plastic").to_map()
        lam, _ = lambda_k_monomial(plastic, 1, precision=256)
        cert = certify_algebraicity(BigFloat(lam.value, 200), 3, precision_digits=60)
        assert cert is not None and cert.candidate == IntPoly([-1, -1, 0, 1])

        fib = load_builtin("fib").to_map()
        lam, _ = lambda_k_monomial(fib, 1, precision=256)
        cert = certify_algebraicity(BigFloat(lam.value, 200), 2, precision_digits=60)
        assert cert is not None and cert.candidate == IntPoly([-1, -1, 1])

        with mpmath.workprec(260):
            pi = BigFloat(mpmath.pi, 220)
        assert lll_min_poly(pi, 3, 60) is None


def test_criterion_7_picard_manin_property_suites():
    with Stopwatch(7, "1000-trial exact inequality suites at ranks <= 12", 60):
        rng = random.Random(7)
        for rank in (6, 12):
            pool = NefPool(rank, seed=rank * 101)
            e0 = PMClass.e(rank, 0)
            for _ in range(1000):
                assert check_hodge_lower_bound(e0, pool.sample_class())
            for _ in range(1000):
                assert check_norm_comparison(pool.sample(big=True), pool.sample(big=True),
                                    pool.sample_class()).holds
            for _ in range(1000):
                assert check_pairing_bound(e0, pool.sample_class(), pool.sample_class())
            for _ in range(1000):
                alpha = pool.sample_class()
                ext = [Fraction(rng.randint(-6, 6), rng.choice((1, 2, 3)))
                       for _ in range(rng.randint(1, 3))]
                assert truncation_monotonicity(alpha, ext)
            for _ in range(1000):
                assert siu_nef_check(pool.sample(big=True), pool.sample(big=False),
                                     pool.sample(big=False))


def test_criterion_8_gcd_projective_pipeline():
    with Stopwatch(8, "sigma^2 = id with factor xyz; Cremona operator; dual-path degrees", 30):
        vs = ["x", "y", "z"]
        sigma = [parse_poly(s, vs) for s in ("y*z", "x*z", "x*y")]
        square = [compose(c, sigma) for c in sigma]
        reduced, removed = reduce_homogeneous_tuple(square)
        assert [c.to_text(vs) for c in reduced] == ["x", "y", "z"]
        assert removed == parse_poly("x*y*z", vs)

        op = cremona_operator(4)
        assert op.compose(op) == PMOperator.identity(4)
        assert op.preserves_form()

        composite = builtin_operator("sigma_tau")
        g = load_builtin("sigma_tau").to_map()
        rep = dual_path_check(composite, g, 4)
        assert rep.agree, rep


def test_criterion_9_log_concavity():
    with Stopwatch(9, "certified log-concavity of k -> lambda_k for monomial built-ins", 5):
        for name in ("fib", "m21", "plastic"):
            mono = load_builtin(name).to_map()
            d = mono.dimension
            lams = [(BigFloat(1), None)] + [lambda_k_monomial(mono, k, precision=96)
                                            for k in range(1, d + 1)]
            rep = check_log_concavity(lams)
            assert rep.ok, (name, rep.checks)


def test_criterion_10_eigenclass_isotropy():
    with Stopwatch(10, "rank-4 expanding operator: (theta_n . theta_n) monotone below 1e-6", 5):
        op = builtin_operator("pell")
        res = pm_eigenclass(op, iters=200, tol=Fraction(1, 10 ** 8))
        assert res.converged and float(res.lam.value) > 1
        decay = [abs(t) for t in res.self_intersections]
        assert all(a >= b for a, b in zip(decay, decay[1:])), "decay not monotone"
        assert any(t < Fraction(1, 10 ** 6) for t in decay)
        assert len(decay) <= 200
