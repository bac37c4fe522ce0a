"""Analysis of exact degree sequences: submultiplicativity checks,
dynamical-degree estimation and spectral-gap fits.

The estimator prefers an exact route: when the integer sequence
satisfies a linear recurrence verified on every available term (which
is what algebraic stability produces), the growth rate is the certified
dominant root of the recurrence polynomial.  Otherwise it falls back to
Aitken-accelerated ratio extrapolation, which is honest but heuristic,
and says so via the method tag.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .bigfloat import BigFloat
from .errors import DegreeLabError, HypothesisError
from .intpoly import IntPoly, RootInterval
from .spectral import max_root_modulus, sqrt_interval

LOG_CONCAVITY_SLACK = Fraction(1, 2 ** 20)
RESIDUAL_FLOOR = mpmath.mpf("1e-12")


@dataclass(frozen=True)
class DegreeSequence:
    """Exact degrees d_0..d_N of the iterates of one map."""

    degrees: tuple
    source: str = ""
    truncated: bool = False
    note: str = ""

    def __post_init__(self):
        degs = tuple(int(d) for d in self.degrees)
        object.__setattr__(self, "degrees", degs)
        if not degs or degs[0] != 1:
            raise DegreeLabError("degree sequence must start with d_0 = 1")
        if any(d < 1 for d in degs):
            raise DegreeLabError("all degrees must be >= 1")

    @property
    def last_n(self):
        return len(self.degrees) - 1

    def __getitem__(self, n):
        return self.degrees[n]

    def __len__(self):
        return len(self.degrees)


@dataclass(frozen=True)
class SubmultReport:
    pairs_checked: int
    violations: tuple
    all_equalities: bool

    @property
    def ok(self):
        return not self.violations


def check_submultiplicative(seq):
    """Exact verification of d_{n+m} <= d_n * d_m for all computed pairs."""
    d = seq.degrees
    top = len(d) - 1
    violations = []
    checked = 0
    all_eq = True
    for n in range(1, top):
        for m in range(n, top - n + 1):
            checked += 1
            lhs, rhs = d[n + m], d[n] * d[m]
            if lhs > rhs:
                violations.append((n, m, lhs, rhs))
            elif lhs != rhs:
                all_eq = False
    return SubmultReport(checked, tuple(violations), all_eq)


@dataclass(frozen=True)
class DynDegreeEstimate:
    point: BigFloat
    upper_bound: BigFloat
    lower_bracket: BigFloat  # heuristic, not certified
    method: str  # fekete | ratio | aitken | exact-root
    interval: RootInterval | None = None
    recurrence: tuple | None = None


def detect_linear_recurrence(values, max_order=5, max_burn_in=2):
    """Rational c_1..c_k with v_{n+k} = sum c_i v_{n+k-i} on the whole tail.

    Returns (order, coeffs, burn_in) or None.  The recurrence must hold
    exactly for every n >= burn_in, so a detected recurrence is a proof
    about the data, not a fit.
    """
    n = len(values)
    for k in range(1, max_order + 1):
        for burn in range(0, max_burn_in + 1):
            if n - burn < 2 * k + 2:
                continue
            # solve from the last k equations, verify everywhere
            rows = []
            rhs = []
            for t in range(n - k, n):
                rows.append([Fraction(values[t - j]) for j in range(1, k + 1)])
                rhs.append(Fraction(values[t]))
            coeffs = _solve_exact(rows, rhs)
            if coeffs is None:
                continue
            ok = all(
                sum(c * values[t - j - 1] for j, c in enumerate(coeffs)) == values[t]
                for t in range(burn + k, n)
            )
            if ok:
                return k, tuple(coeffs), burn
    return None


def _solve_exact(rows, rhs):
    """Gaussian elimination over Q; None when the system is singular."""
    n = len(rows)
    a = [list(r) + [v] for r, v in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]


def _recurrence_char_poly(coeffs):
    """x^k - c_1 x^(k-1) - ... - c_k, cleared to integer coefficients."""
    den = math.lcm(*(c.denominator for c in coeffs))
    ints = [-int(c * den) for c in coeffs]  # c_1 first
    return IntPoly(list(reversed(ints)) + [den])


def _aitken(xs):
    """One Aitken delta-squared pass; returns accelerated tail value."""
    if len(xs) < 3:
        return None
    x0, x1, x2 = xs[-3], xs[-2], xs[-1]
    den = x2 - 2 * x1 + x0
    if den == 0:
        return x2
    return x2 - (x2 - x1) ** 2 / den


def estimate_lambda1(seq, precision=128):
    """Point estimate, rigorous upper bound and heuristic lower bracket.

    Upper bound: min_n d_n^(1/n), valid for any submultiplicative
    sequence (the limit is the infimum).  Point estimate: dominant root
    of an exactly verified linear recurrence when one exists, otherwise
    Aitken acceleration of the ratio sequence (applied to the full,
    even-index and odd-index subsequences; most self-consistent wins).
    """
    d = seq.degrees
    if len(d) < 2:
        raise DegreeLabError("need at least d_0, d_1")
    with mpmath.workprec(precision + 16):
        upper = min(mpmath.root(mpmath.mpf(di), i) for i, di in enumerate(d) if i >= 1)
        upper_bf = BigFloat(upper, precision)

    rec = detect_linear_recurrence(d)
    if rec is not None:
        order, coeffs, _burn = rec
        cp = _recurrence_char_poly(coeffs)
        value, interval = max_root_modulus(cp, precision=precision)
        point = value
        lower = value
        return DynDegreeEstimate(point, upper_bf, lower, "exact-root",
                                 interval=interval, recurrence=(order, coeffs))

    with mpmath.workprec(precision + 16):
        ratios = [mpmath.mpf(d[i + 1]) / d[i] for i in range(len(d) - 1)]
        candidates = []
        for sub, name in ((ratios, "aitken"), (ratios[::2], "aitken"), (ratios[1::2], "aitken")):
            acc_last = _aitken(sub)
            acc_prev = _aitken(sub[:-1])
            if acc_last is None:
                continue
            spread = abs(acc_last - acc_prev) if acc_prev is not None else mpmath.inf
            candidates.append((spread, acc_last, name))
        if candidates:
            _, best, method = min(candidates, key=lambda t: t[0])
        else:
            best, method = ratios[-1], "ratio"
        tail = ratios[-4:]
        oscillation = max(abs(a - b) for a, b in zip(tail, tail[1:])) if len(tail) > 1 else 0
        lower = max(mpmath.mpf(1), ratios[-1] - 3 * oscillation)
        point = mpmath.mpf(best)
        if point > upper:
            # the n-th-root bound beats the extrapolation: report it instead
            point, method = upper, "fekete"
        lower = min(lower, point)
        return DynDegreeEstimate(BigFloat(point, precision), upper_bf,
                                 BigFloat(lower, precision), method)


@dataclass(frozen=True)
class GapFit:
    lambda1: BigFloat
    c_estimate: BigFloat
    residuals: tuple  # r_n = d_n - C * lambda1^n, as mpf floats
    residual_rate: BigFloat | None
    fit_range: tuple | None  # (first n, last n) used in the regression
    window: tuple  # (sqrt(lambda2), lambda1) as BigFloats
    window_midpoint: BigFloat
    rate_within_window: bool
    vacuous: bool = False


def gap_fit(seq, lambda1, lambda2, precision=128):
    """Fit d_n ~ C * lambda1^n and the decay rate of the residuals.

    Requires lambda1^2 > lambda2.  C is the mean of d_n / lambda1^n over
    the last third of the sequence.  The residual regression stops just
    before |r_n| turns back upward, where the error of C (itself of
    relative size ~ (rate/lambda1)^(2N/3)) starts to dominate the true
    residual signal.
    """
    lam1 = lambda1 if isinstance(lambda1, BigFloat) else BigFloat(lambda1)
    lam2 = lambda2 if isinstance(lambda2, BigFloat) else BigFloat(lambda2)
    if not lam1.value ** 2 > lam2.value:
        raise HypothesisError(
            "gap fit requires lambda1^2 > lambda2; the resonant case is out of scope")
    d = seq.degrees
    top = len(d) - 1
    if top < 6:
        raise DegreeLabError("need at least 6 iterates for a gap fit")

    with mpmath.workprec(precision + 16):
        l1 = lam1.value
        tail_start = top - top // 3 + 1
        tail = [mpmath.mpf(d[n]) / l1 ** n for n in range(tail_start, top + 1)]
        c_hat = sum(tail) / len(tail)
        residuals = tuple(mpmath.mpf(d[n]) - c_hat * l1 ** n for n in range(top + 1))

        usable = [n for n in range(1, top + 1)
                  if abs(residuals[n]) > RESIDUAL_FLOOR * d[n]]
        sq2_lo, _sq2_hi = sqrt_interval(lam2.to_fraction())
        window_lo = BigFloat(sq2_lo, precision)
        midpoint = (window_lo + lam1) / 2

        if not usable:
            return GapFit(lam1, BigFloat(c_hat, precision), residuals, None, None,
                          (window_lo, lam1), midpoint, True, vacuous=True)

        # |r_n| dips where the error of C starts cancelling the true signal
        # and rises afterwards; fit strictly before the dip, with a guard
        # band because points near it are already depressed
        k_min = min(usable, key=lambda n: abs(residuals[n]))
        fit_ns = [n for n in usable if n < k_min - 2]
        if len(fit_ns) < 3:
            fit_ns = [n for n in usable if n < k_min]
        if len(fit_ns) < 2:
            fit_ns = usable
        xs = [mpmath.mpf(n) for n in fit_ns]
        ys = [mpmath.log(abs(residuals[n])) for n in fit_ns]
        slope = _ls_slope(xs, ys)
        rate = BigFloat(mpmath.e ** slope, precision)
        ok = rate.value <= midpoint.value
        return GapFit(lam1, BigFloat(c_hat, precision), residuals, rate,
                      (fit_ns[0], fit_ns[-1]), (window_lo, lam1), midpoint, ok)


def _ls_slope(xs, ys):
    n = len(xs)
    mx = sum(xs) / n
    my = sum(ys) / n
    num = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    den = sum((x - mx) ** 2 for x in xs)
    return num / den


@dataclass(frozen=True)
class GapCheck:
    holds: bool | None  # None = indeterminate at the given certification
    margin: BigFloat | None


def _as_bracket(value, slack_bits=64):
    """Certified rational (lo, hi) for the accepted value flavours."""
    if isinstance(value, RootInterval):
        return value.lower, value.upper
    if isinstance(value, tuple) and len(value) == 2:
        if isinstance(value[1], RootInterval):
            return value[1].lower, value[1].upper
        return _as_bracket(value[0], slack_bits)
    if isinstance(value, BigFloat):
        f = value.to_fraction()
        eps = Fraction(1, 2 ** min(value.precision, slack_bits))
        return f - eps, f + eps
    f = Fraction(value)
    return f, f


def check_gap_condition(lambda1, lambda2):
    """Certified verdict on lambda1^2 > lambda2, with the margin."""
    lo1, hi1 = _as_bracket(lambda1)
    lo2, hi2 = _as_bracket(lambda2)
    if lo1 * lo1 > hi2:
        return GapCheck(True, BigFloat(lo1 * lo1 - hi2))
    if hi1 * hi1 <= lo2:
        return GapCheck(False, BigFloat(lo2 - hi1 * hi1))
    return GapCheck(None, None)


@dataclass(frozen=True)
class LogConcavityReport:
    checks: tuple  # (k, holds, margin lower bound as float)

    @property
    def ok(self):
        return all(h for _, h, _ in self.checks)


def check_log_concavity(lambdas):
    """Verify lambda_k^2 >= lambda_{k-1} lambda_{k+1} across k.

    Interval arithmetic with a 2^-20 multiplicative slack, which lets
    exact-equality cases (common for monomial maps) pass at any finite
    certification width while still catching genuine violations.
    """
    brackets = [_as_bracket(v) for v in lambdas]
    checks = []
    for k in range(1, len(brackets) - 1):
        lo_k, _ = brackets[k]
        _, hi_prev = brackets[k - 1]
        _, hi_next = brackets[k + 1]
        lhs = lo_k * lo_k
        rhs = hi_prev * hi_next
        holds = lhs >= rhs * (1 - LOG_CONCAVITY_SLACK)
        margin = float(lhs - rhs)
        checks.append((k, holds, margin))
    return LogConcavityReport(tuple(checks))
