"""Eigenvaluations at infinity and the algebraicity of lambda_1.

A dominant polynomial map with a spectral gap admits a valuation v on
the polynomial ring with v(P o f) = lambda_1 v(P), normalized so that
min_i v(x_i) = -1.  Two computable approximations are compared here:

* scaled limits v(P) = lim -deg(P o f^n) / lambda_1^n (any map);
* fixed weight vectors of t -> A t for monomial maps (power iteration).

From the values v(x_i) one recovers a rational matrix Q with
lambda_1 v(x_i) = sum_j q_ij v(x_j): lambda_1 is an eigenvalue of a
rational matrix, hence algebraic of degree at most d.  The LLL step
turns the numerics into a minimal-polynomial certificate.
"""

import mpmath

from degreelab import BigFloat, Caps
from degreelab.dynmaps import lambda_k_monomial
from degreelab.registry import load_builtin
from degreelab.valuations import (certify_algebraicity, eigen_weight_power_iteration,
                                  eigenvaluation_scaled_limit, value_group_matrix,
                                  verify_eigen_equation, verify_valuation_axioms)

BIG_CAPS = Caps(max_degree=2 ** 62, max_terms=2_000_000)


def henon_story():
    mf = load_builtin("henon")
    f = mf.to_map()
    print("henon (y, y^2 - x), lambda1 = 2")
    table = eigenvaluation_scaled_limit(f, mf.parsed_testpolys(), 8, BigFloat(2),
                                        coord_labels=mf.varnames)
    for label in ("x", "y", "x*y"):
        print(f"  v({label}) = {mpmath.nstr(table.normalized_limit(label), 10)}")
    eigen = verify_eigen_equation(table)
    print(f"  eigen-equation max violation over the pool: {eigen.max_violation:.2e}")
    small = eigenvaluation_scaled_limit(f, (), 4, BigFloat(2), coord_labels=mf.varnames)
    axioms = verify_valuation_axioms(small.make_oracle(), 2, trials=200, seed=1)
    print(f"  valuation axioms over {axioms.trials} random pairs: ok = {axioms.ok}")
    vgm = value_group_matrix(table, precision_digits=30)
    print(f"  value-group matrix rows: {[[str(q) for q in row] for row in vgm.q]}")
    print(f"  |det(Q - lambda1 I)| = {vgm.char_value:.1e}")
    print()


def monomial_story(name, degree_bound):
    mf = load_builtin(name)
    mono = mf.to_map()
    lam, _ = lambda_k_monomial(mono, 1, precision=256)
    print(f"{name}: lambda1 = {lam.str_digits(20)}")
    table = eigenvaluation_scaled_limit(mono.to_poly_map(), [], 56, lam, caps=BIG_CAPS)
    weights, lam_pi = eigen_weight_power_iteration(mono)
    print(f"  scaled-limit weights: "
          f"{[mpmath.nstr(v, 12) for v in table.normalized_coordinate_values()]}")
    print(f"  eigen-weight fixed point: {[str(w) for w in weights.weights]}")
    cert = certify_algebraicity(BigFloat(lam.value, 200), degree_bound,
                                precision_digits=60)
    print(f"  minimal polynomial (degree <= {degree_bound}): {cert.candidate.pretty()}  "
          f"(residual {mpmath.nstr(cert.residual.value, 3)})")
    print()


def main():
    henon_story()
    monomial_story("fib", 2)
    monomial_story("plastic", 3)


if __name__ == "__main__":
    main()
