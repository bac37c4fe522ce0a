from fractions import Fraction

import mpmath
import pytest

from degreelab.bigfloat import BigFloat
from degreelab.degrees import (DegreeSequence, check_gap_condition, check_log_concavity,
                               check_submultiplicative, detect_linear_recurrence,
                               estimate_lambda1, gap_fit)
from degreelab.dynmaps import MonomialMap, lambda_k_monomial, monomial_degree_sequence
from degreelab.errors import DegreeLabError, HypothesisError
from conftest import bisect_root

FIB = MonomialMap([[1, 1], [1, 0]], label="fib")
M21 = MonomialMap([[2, 1], [1, 1]], label="m21")
PLASTIC = MonomialMap([[0, 1, 0], [0, 0, 1], [1, 1, 0]], label="plastic")


def test_degree_sequence_invariants():
    with pytest.raises(DegreeLabError):
        DegreeSequence((2, 3))
    with pytest.raises(DegreeLabError):
        DegreeSequence((1, 0, 2))


def test_submultiplicative_reports():
    henon = DegreeSequence(tuple(2 ** n for n in range(9)))
    rep = check_submultiplicative(henon)
    assert rep.ok and rep.all_equalities
    fib = monomial_degree_sequence(FIB, 8)
    rep = check_submultiplicative(fib)
    assert rep.ok and not rep.all_equalities  # e.g. 5 <= 2 * 3 strictly
    ones = DegreeSequence((1,) * 9)
    assert check_submultiplicative(ones).ok
    broken = DegreeSequence((1, 2, 5))
    rep = check_submultiplicative(broken)
    assert not rep.ok and rep.violations == ((1, 1, 5, 4),)


def test_recurrence_detection():
    fib = monomial_degree_sequence(FIB, 12)
    order, coeffs, _ = detect_linear_recurrence(fib.degrees)
    assert order == 2 and coeffs == (Fraction(1), Fraction(1))
    plastic = monomial_degree_sequence(PLASTIC, 12)
    order, coeffs, _ = detect_linear_recurrence(plastic.degrees)
    assert order == 3 and coeffs == (Fraction(0), Fraction(1), Fraction(1))
    assert detect_linear_recurrence((1, 2, 4, 8, 16)) == (1, (Fraction(2),), 0)
    # a non-recurrent sequence yields nothing
    assert detect_linear_recurrence((1, 2, 4, 8, 17, 33, 67, 131, 263, 525)) is None


def test_estimate_fibonacci_reaches_phi():
    seq = monomial_degree_sequence(FIB, 12)
    est = estimate_lambda1(seq)
    phi = bisect_root([-1, -1, 1], 1, 2)
    assert est.method == "exact-root"
    assert abs(est.point.to_fraction() - phi) < Fraction(1, 1000)
    assert est.lower_bracket.value <= est.point.value <= est.upper_bound.value


def test_estimate_constant_ratios_give_exact_two():
    seq = DegreeSequence(tuple(2 ** n for n in range(9)))
    est = estimate_lambda1(seq)
    assert abs(est.point.to_fraction() - 2) < Fraction(1, 2 ** 60)


def test_estimate_all_ones_is_one():
    est = estimate_lambda1(DegreeSequence((1,) * 8))
    assert est.point.to_fraction() == 1 or abs(est.point.to_fraction() - 1) < Fraction(1, 2 ** 40)


def test_estimate_aitken_fallback():
    # perturbed doubling satisfies no small exact recurrence; the n-th root
    # bound from d_1 = 2 caps the extrapolation at exactly 2
    seq = [1, 2, 4, 8, 17, 33, 67, 131, 263, 525, 1051, 2101, 4203]
    est = estimate_lambda1(DegreeSequence(tuple(seq)))
    assert est.method in ("aitken", "ratio", "fekete")
    assert abs(float(est.point.value) - 2.0) < 0.05
    assert est.upper_bound.value >= est.point.value
    # with d_1 = 3 the n-th-root bound is slack and the Aitken tag survives
    seq = (1, 3, 6, 12, 25, 49, 99, 197, 395, 789, 1579, 3158)
    est = estimate_lambda1(DegreeSequence(seq))
    assert est.method == "aitken"
    assert abs(float(est.point.value) - 2.0) < 0.01


def test_upper_bound_monotone_in_n():
    seq = monomial_degree_sequence(M21, 12)
    prev = None
    for n in range(3, 13):
        est = estimate_lambda1(DegreeSequence(seq.degrees[:n + 1]))
        if prev is not None:
            assert float(est.upper_bound.value) <= float(prev) + 1e-12
        prev = est.upper_bound.value


def test_gap_fit_fibonacci():
    lam1, _ = lambda_k_monomial(FIB, 1, precision=128)
    fit = gap_fit(monomial_degree_sequence(FIB, 12), lam1, BigFloat(1))
    # closed form: d_n = F_{n+2} = (phi^2/sqrt5) phi^n - (psi^2/sqrt5) psi^n
    with mpmath.workprec(80):
        phi = (1 + mpmath.sqrt(5)) / 2
        c_true = phi ** 2 / mpmath.sqrt(5)
    assert abs(float(fit.c_estimate.value) - float(c_true)) < 1e-3
    assert fit.residual_rate is not None
    assert float(fit.residual_rate.value) <= float(fit.window_midpoint.value)
    assert abs(float(fit.residual_rate.value) - 0.618) < 0.05


def test_gap_fit_m21_rate():
    lam1, _ = lambda_k_monomial(M21, 1, precision=128)
    fit = gap_fit(monomial_degree_sequence(M21, 12), lam1, BigFloat(1))
    assert abs(float(fit.residual_rate.value) - 0.381966) < 1e-2


def test_gap_fit_exact_residuals_vacuous():
    fit = gap_fit(DegreeSequence(tuple(2 ** n for n in range(9))), BigFloat(2), BigFloat(1))
    assert fit.vacuous and fit.rate_within_window
    assert abs(float(fit.c_estimate.value) - 1) < 1e-12


def test_gap_fit_rejects_resonant():
    with pytest.raises(HypothesisError):
        gap_fit(DegreeSequence((1,) * 9), BigFloat(1), BigFloat(1))


def test_gap_condition():
    phi_pair = lambda_k_monomial(FIB, 1, precision=96)
    chk = check_gap_condition(phi_pair, 1)
    assert chk.holds is True
    assert abs(float(chk.margin.value) - 1.618) < 1e-2
    p1 = lambda_k_monomial(PLASTIC, 1, precision=96)
    p2 = lambda_k_monomial(PLASTIC, 2, precision=96)
    chk = check_gap_condition(p1, p2)
    assert chk.holds is True
    assert abs(float(chk.margin.value) - 0.604) < 1e-2
    assert check_gap_condition(1, 1).holds is False
    # overlapping uncertain brackets are flagged indeterminate
    assert check_gap_condition(BigFloat(1, 16), BigFloat(1, 16)).holds is None


def test_log_concavity_reports():
    for mono in (FIB, M21, PLASTIC):
        d = mono.dimension
        lams = [(BigFloat(1), None)] + [lambda_k_monomial(mono, k, precision=96)
                                        for k in range(1, d + 1)]
        rep = check_log_concavity(lams)
        assert rep.ok
    # identity: all ones, equalities throughout
    rep = check_log_concavity([1, 1, 1, 1])
    assert rep.ok
