from fractions import Fraction

import pytest

from degreelab.dynmaps import ProjRationalMap
from degreelab.errors import DegreeLabError, InvariantError
from degreelab.multipoly import parse_poly
from degreelab.picard_manin import (NefPool, PMClass, PMOperator, check_hodge_lower_bound,
                                    check_norm_comparison, check_pairing_bound, cremona_operator,
                                    dual_path_check, exceptional_permutation, intersect,
                                    is_pool_big_nef, is_pool_nef, pell_operator,
                                    pm_degree_sequence, pm_eigenclass, qbar,
                                    self_intersection, siu_nef_check,
                                    truncation_monotonicity)

VS3 = ["x", "y", "z"]


def test_intersection_form():
    e0, e1, e2 = PMClass.e(3, 0), PMClass.e(3, 1), PMClass.e(3, 2)
    assert intersect(e0, e0) == 1
    assert intersect(PMClass((3, 1, 1)), PMClass((3, 1, 1))) == 7
    assert intersect(e1, e2) == 0
    # lower-rank classes zero-extend
    assert intersect(PMClass((1,)), PMClass((1, -1, -1))) == 1


def test_qbar_examples():
    e0 = PMClass.e(2, 0)
    rep = qbar(e0, PMClass((3, -1)))
    assert rep.value == 10 and rep.projection_part == 9 and rep.orthogonal_part == 1
    assert qbar(e0, e0).value == 1
    rep = qbar(PMClass((2, -1)), e0)
    assert rep.value == Fraction(5, 3)
    with pytest.raises(DegreeLabError):
        qbar(PMClass((0, 1)), e0)  # not positive self-intersection


def test_qbar_scale_invariance_and_positivity():
    pool = NefPool(8, seed=4)
    e0 = PMClass.e(8, 0)
    for _ in range(200):
        alpha = pool.sample_class()
        rep = qbar(e0, alpha)
        assert rep.value > 0
        assert rep.value == qbar(e0.scale(Fraction(7, 3)), alpha).value


def test_hodge_lower_bound():
    e0 = PMClass.e(2, 0)
    assert check_hodge_lower_bound(e0, PMClass((3, -1)))
    # a class orthogonal to omega: bound reads q >= 0
    assert check_hodge_lower_bound(e0, PMClass((0, 5)))
    pool = NefPool(12, seed=9)
    for _ in range(300):
        assert check_hodge_lower_bound(PMClass.e(12, 0), pool.sample_class())


def test_norm_comparison_worked_example():
    e0, e1 = PMClass.e(2, 0), PMClass.e(2, 1)
    w2 = PMClass((2, -1))
    rep = check_norm_comparison(e0, w2, e1)
    assert rep.holds and rep.bound == Fraction(16, 3)
    assert rep.lhs == 1 and rep.rhs_scaled == Fraction(80, 9)
    same = check_norm_comparison(e0, e0, PMClass((5, -2)))
    assert same.holds and same.bound == 4


def test_norm_comparison_fuzz():
    pool = NefPool(10, seed=21)
    for _ in range(300):
        w1, w2 = pool.sample(big=True), pool.sample(big=True)
        assert check_norm_comparison(w1, w2, pool.sample_class()).holds


def test_norm_comparison_rejects_non_pool_reference():
    with pytest.raises(DegreeLabError):
        check_norm_comparison(PMClass((0, 1)), PMClass.e(2, 0), PMClass.e(2, 1))


def test_pairing_bound_examples_and_fuzz():
    e0 = PMClass.e(2, 0)
    assert check_pairing_bound(e0, PMClass.e(2, 1), PMClass.e(2, 1))
    assert check_pairing_bound(e0, PMClass((3, -1)), e0)
    with pytest.raises(DegreeLabError):
        check_pairing_bound(PMClass((2, -1)), e0, e0)  # omega^2 = 3 != 1
    pool = NefPool(9, seed=33)
    e0 = PMClass.e(9, 0)
    for _ in range(300):
        assert check_pairing_bound(e0, pool.sample_class(), pool.sample_class())


def test_truncation_monotonicity():
    alpha = PMClass((3, -1))
    assert truncation_monotonicity(alpha, [0])
    ext = alpha.extend_with([Fraction(1, 2)])
    assert -self_intersection(ext) == -self_intersection(alpha) + Fraction(1, 4)
    pool = NefPool(6, seed=41)
    import random

    rng = random.Random(41)
    for _ in range(200):
        a = pool.sample_class()
        extra = [Fraction(rng.randint(-5, 5), rng.choice((1, 2, 3)))
                 for _ in range(rng.randint(1, 3))]
        assert truncation_monotonicity(a, extra)


def test_nef_pool_membership():
    assert is_pool_nef(PMClass.e(4, 0))
    assert is_pool_nef(PMClass((2, -1, -1, 0)))
    assert not is_pool_nef(PMClass((2, 1, 0, 0)))  # positive exceptional coordinate
    assert not is_pool_nef(PMClass((1, -1, -1, 0)))  # too much exceptional mass
    assert is_pool_big_nef(PMClass((2, -1, 0, 0)))
    assert not is_pool_big_nef(PMClass((1, -1, 0, 0)))  # square zero


def test_siu_examples_and_fuzz():
    e0 = PMClass.e(3, 0)
    assert siu_nef_check(e0, e0, e0)
    assert siu_nef_check(e0, PMClass((1, -1, 0)), PMClass((1, 0, -1)))
    with pytest.raises(DegreeLabError):
        siu_nef_check(e0, PMClass((1, 1, 0)), e0)
    pool = NefPool(11, seed=55)
    for _ in range(300):
        assert siu_nef_check(pool.sample(big=True), pool.sample(big=False),
                             pool.sample(big=False))


def test_form_preservation_of_operators():
    for op in (cremona_operator(4), cremona_operator(6), pell_operator(4),
               exceptional_permutation(5, (3, 1, 2))):
        assert op.preserves_form()
        a, b = PMClass((2, -1, 0, 1)).zero_extend(op.rank), \
            PMClass((1, 1, -2)).zero_extend(op.rank)
        assert intersect(op.apply(a), op.apply(b)) == intersect(a, b)


def test_cremona_operator():
    op = cremona_operator(4)
    image = op.apply(PMClass.e(4, 0))
    assert image == PMClass((2, -1, -1, -1))
    assert intersect(image, PMClass.e(4, 0)) == 2  # degree read-off
    assert op.compose(op) == PMOperator.identity(4)
    with pytest.raises(DegreeLabError):
        cremona_operator(3)


def test_pm_degree_sequences():
    assert pm_degree_sequence(cremona_operator(4), 6).degrees == (1, 2, 1, 2, 1, 2, 1)
    assert pm_degree_sequence(PMOperator.identity(4), 5).degrees == (1,) * 6
    assert pm_degree_sequence(pell_operator(4), 4).degrees == (1, 3, 17, 99, 577)


def test_pell_eigenclass_isotropy():
    res = pm_eigenclass(pell_operator(4), iters=200, tol=Fraction(1, 10 ** 8))
    assert res.converged
    # dominant eigenvalue 3 + 2 sqrt 2
    assert abs(float(res.lam.value) - (3 + 2 * 2 ** 0.5)) < 1e-6
    decay = [abs(t) for t in res.self_intersections]
    assert all(a >= b for a, b in zip(decay, decay[1:]))
    assert decay[-1] < Fraction(1, 10 ** 6)
    # form preservation forces (theta_n . theta_n) = 1 / d_n^2 exactly
    degs = pm_degree_sequence(pell_operator(4), len(decay)).degrees
    for t, d in zip(res.self_intersections, degs[1:]):
        assert t == Fraction(1, d * d)


def test_eigenclass_flags_non_expanding():
    res = pm_eigenclass(cremona_operator(4))
    assert not res.converged and "not > 1" in res.flag
    res = pm_eigenclass(PMOperator.identity(4))
    assert not res.converged


def test_eigenclass_quasi_eigenvector_residual():
    op = pell_operator(4)
    res = pm_eigenclass(op, tol=Fraction(1, 10 ** 10))
    lam = res.lam.to_fraction()
    residual = op.apply(res.theta) - res.theta.scale(lam)
    # residual shrinks like (second eigenvalue / dominant): modulus 1 vs 5.83
    assert max(abs(c) for c in residual.coords) < Fraction(1, 10 ** 4)


def test_eigenclass_residual_decays_geometrically():
    # ||M theta_n - lam theta_n|| must contract at least like
    # (second eigenvalue modulus)/lam = 1/(3 + 2 sqrt 2), up to slack
    op = pell_operator(4)
    e0 = PMClass.e(4, 0)
    lam = Fraction(3) + 2 * Fraction(14142135623730951, 10 ** 16)  # 3 + 2 sqrt2 approx
    v = e0
    norms = []
    for _ in range(12):
        v = op.apply(v)
        theta = v.scale(Fraction(1, intersect(v, e0)))
        r = op.apply(theta) - theta.scale(lam)
        norms.append(max(abs(c) for c in r.coords))
    floor = Fraction(1, 10 ** 12)  # below this the lam approximation dominates
    for a, b in zip(norms, norms[1:]):
        if b < floor:
            break
        assert b / a <= Fraction(1, 5) + Fraction(1, 20)


def test_dual_path_stable_composite():
    sigma_tau = ProjRationalMap([parse_poly(s, VS3) for s in ("x*z", "x*y", "y*z")],
                                label="sigma_tau")
    op = exceptional_permutation(4, (2, 3, 1)).compose(cremona_operator(4))
    rep = dual_path_check(op, sigma_tau, 4)
    assert rep.agree
    assert rep.operator_degrees == (1, 2, 1, 2, 1)


def test_dual_path_refuses_unstable_declaration():
    # sigma composed with a shear moves the base points: the naive rank-4
    # operator is not a valid model and the cross-check must say so
    shear = ProjRationalMap(
        [parse_poly(s, VS3) for s in ("(y-x)*(z-y)", "x*(z-y)", "x*(y-x)")],
        label="sigma_shear")
    rep = dual_path_check(cremona_operator(4), shear, 4)
    assert not rep.agree
    assert rep.first_mismatch == 2


def test_operator_requires_square_and_form():
    with pytest.raises(InvariantError):
        PMOperator([[2, 0], [0, 1]], check_form=True)
