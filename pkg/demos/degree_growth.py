"""Degree sequences of the built-in maps and what they say about lambda_1.

Each map is iterated literally (exact polynomial composition, or exact
matrix powers for monomial maps); the degrees d_n are exact integers.
Submultiplicativity d_{n+m} <= d_n d_m makes d_n^(1/n) converge to its
infimum, so min_n d_n^(1/n) is a true upper bound at every N, and the
growth rate itself can often be pinned exactly: whenever the sequence
satisfies a linear recurrence on every computed term, lambda_1 is the
certified dominant root of that recurrence.
"""

from degreelab import (check_submultiplicative, degree_sequence, estimate_lambda1,
                       monomial_degree_sequence, proj_degree_sequence)
from degreelab.dynmaps import MonomialMap, ProjRationalMap
from degreelab.registry import builtin_names, load_builtin


def sequence_for(name, n):
    m = load_builtin(name).to_map()
    if isinstance(m, MonomialMap):
        return monomial_degree_sequence(m, n)
    if isinstance(m, ProjRationalMap):
        return proj_degree_sequence(m, n)
    return degree_sequence(m, n)


def main():
    for name in builtin_names():
        seq = sequence_for(name, 10)
        sub = check_submultiplicative(seq)
        est = estimate_lambda1(seq)
        print(f"{name:>10}: d = {seq.degrees}")
        status = "all equalities" if sub.all_equalities else "strict somewhere"
        print(f"{'':>10}  submultiplicative: {sub.ok} ({sub.pairs_checked} pairs, {status})")
        print(f"{'':>10}  lambda1 ~ {est.point.str_digits(12)}  "
              f"[method {est.method}, upper bound {est.upper_bound.str_digits(8)}]")
        if est.recurrence:
            order, coeffs = est.recurrence
            rec = " + ".join(f"({c}) d_(n-{i+1})" for i, c in enumerate(coeffs))
            print(f"{'':>10}  exact recurrence of order {order}: d_n = {rec}")
        print()


if __name__ == "__main__":
    main()
