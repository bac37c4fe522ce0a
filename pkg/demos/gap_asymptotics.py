"""The spectral-gap shape of degree growth: d_n = C lambda1^n + O(lambda^n).

When lambda1^2 > lambda2, the degree sequence is a single dominant
geometric mode plus an error term that decays at some rate below
lambda1.  The fit below estimates C from the tail, forms the residuals
r_n = d_n - C lambda1^n, and regresses their decay rate; for the
admissible window the rate must sit under (sqrt(lambda2) + lambda1)/2.

Worked values: the Fibonacci monomial map has d_n = F_{n+2}, so
C = phi^2 / sqrt(5) ~ 1.17082 and the residuals decay like 1/phi.
"""

from degreelab import BigFloat, check_gap_condition, gap_fit, lambda_k_monomial
from degreelab.dynmaps import degree_sequence, monomial_degree_sequence
from degreelab.registry import load_builtin


def show(name, seq, lam1, lam2):
    gate = check_gap_condition(lam1, lam2)
    print(f"{name}: gap lambda1^2 > lambda2 certified: {gate.holds} "
          f"(margin {gate.margin.str_digits(8) if gate.margin else '?'})")
    value1 = lam1[0] if isinstance(lam1, tuple) else lam1
    value2 = lam2[0] if isinstance(lam2, tuple) else lam2
    fit = gap_fit(seq, value1, value2)
    print(f"  C ~ {fit.c_estimate.str_digits(10)}")
    if fit.vacuous:
        print("  residuals identically zero: the asymptotic is exact")
    else:
        print(f"  residual decay rate ~ {fit.residual_rate.str_digits(8)} "
              f"on n in {fit.fit_range}; window midpoint "
              f"{fit.window_midpoint.str_digits(8)}; inside window: "
              f"{fit.rate_within_window}")
    print()


def main():
    for name in ("fib", "m21"):
        mono = load_builtin(name).to_map()
        lam1, iv1 = lambda_k_monomial(mono, 1, precision=128)
        lam2, iv2 = lambda_k_monomial(mono, 2, precision=128)
        seq = monomial_degree_sequence(mono, 12)
        show(name, seq, (lam1, iv1), (lam2, iv2))

    henon = load_builtin("henon").to_map()
    show("henon", degree_sequence(henon, 10), BigFloat(2), BigFloat(1))


if __name__ == "__main__":
    main()
