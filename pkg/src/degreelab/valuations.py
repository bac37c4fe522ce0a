"""Valuations at infinity on the polynomial ring.

Monomial valuations are exact: v_t(x^I) = <t, I>, minimized over the
support.  The eigenvaluation of a polynomial map is approximated two
independent ways:

* weight space: power iteration t <- normalize(A t) on the exponent
  matrix of a monomial map, whose fixed point satisfies A t = lambda t;
* scaled limits: v(P) = lim -deg(P o f^n) / lambda^n, computed from the
  literally expanded iterates, which realizes the degree formula for
  the fractional-ideal functional.

Both normalize to min_i v(x_i) = -1 and must agree on monomial maps;
that agreement is one of the library's standing cross-checks.  The
value-group step recovers rational matrices Q with
lambda * v(x_i) = sum_j q_ij v(x_j), exhibiting lambda as an eigenvalue
of a rational matrix, and the minimal-polynomial certificate finishes
the algebraicity pipeline.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .bigfloat import BigFloat
from .dynmaps import DEFAULT_CAPS, iterate_components
from .errors import ConvergenceError, DegreeLabError, DimensionError, PrecisionError
from .lll import integer_relation, lll_min_poly
from .multipoly import MultiPoly, compose

INF = float("inf")


class MonomialValuation:
    """v_t with v_t(x_i) = t_i; multiplicative and min-additive by design."""

    __slots__ = ("weights",)

    def __init__(self, weights):
        self.weights = tuple(Fraction(w) for w in weights)

    @property
    def nvars(self):
        return len(self.weights)

    @property
    def is_normalized(self):
        return min(self.weights) == -1

    def normalize(self):
        m = min(self.weights)
        if m >= 0:
            raise DegreeLabError("normalization needs a negative minimal weight")
        return MonomialValuation(tuple(w / (-m) for w in self.weights))

    def __call__(self, poly):
        return eval_monomial(self, poly)

    def __eq__(self, other):
        return isinstance(other, MonomialValuation) and self.weights == other.weights

    def __repr__(self):
        return f"MonomialValuation({self.weights})"


def eval_monomial(v, poly):
    """min over the support of <t, I>; +inf on the zero polynomial."""
    if poly.nvars != v.nvars:
        raise DimensionError("valuation and polynomial ambients differ")
    if poly.is_zero():
        return INF
    return min(sum(t * e for t, e in zip(v.weights, mono)) for mono in poly.terms)


def neg_deg_valuation(nvars):
    """t = (-1, ..., -1): the valuation -deg."""
    return MonomialValuation((-1,) * nvars)


@dataclass(frozen=True)
class FractionalIdealGens:
    """Generators P_1..P_n of a fractional ideal twisted by mu H_infinity."""

    generators: tuple
    twist: int = 0

    def __post_init__(self):
        if not self.generators:
            raise DegreeLabError("generator list must be nonempty")
        if all(g.is_zero() for g in self.generators):
            raise DegreeLabError("generators must not all be zero")
        if self.twist < 0:
            raise DegreeLabError("twist must be a nonnegative integer")

    @property
    def nvars(self):
        return self.generators[0].nvars

    def sum_with(self, other):
        if self.twist != other.twist:
            raise DegreeLabError("summands must carry equal twists")
        return FractionalIdealGens(self.generators + other.generators, self.twist)

    def product_with(self, other):
        gens = tuple(a * b for a in self.generators for b in other.generators)
        return FractionalIdealGens(gens, self.twist + other.twist)


def L_functional(v, ideal):
    """min_i v(P_i) - mu * min_j v(x_j)."""
    vals = [eval_monomial(v, g) for g in ideal.generators if not g.is_zero()]
    return min(vals) - ideal.twist * min(v.weights)


def check_min_additivity(v, a, b):
    """L(A + B) = min(L(A), L(B)), exactly."""
    lhs = L_functional(v, a.sum_with(b))
    rhs = min(L_functional(v, a), L_functional(v, b))
    return lhs == rhs


@dataclass(frozen=True)
class GenericCombinationReport:
    trials: int
    equalities: int
    failures: tuple

    @property
    def fraction_equal(self):
        return self.equalities / self.trials if self.trials else 1.0


def generic_combination_check(v, polys, trials=100, seed=0):
    """v(sum a_i P_i) against min_i v(P_i) for random integer coefficients.

    Equality holds off a proper closed locus, so the report should show
    almost every trial agreeing; each failure records its coefficients.
    """
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        raise DegreeLabError("need at least one nonzero polynomial")
    rng = random.Random(seed)
    target = min(eval_monomial(v, p) for p in polys)
    eq = 0
    failures = []
    for _ in range(trials):
        coeffs = [rng.randint(-10, 10) for _ in polys]
        comb = MultiPoly.zero(polys[0].nvars)
        for c, p in zip(coeffs, polys):
            if c:
                comb = comb + p.scale(c)
        got = eval_monomial(v, comb)
        if got == target:
            eq += 1
        else:
            failures.append((tuple(coeffs), got))
    return GenericCombinationReport(trials, eq, tuple(failures))


@dataclass(frozen=True)
class PushforwardResult:
    valuation: MonomialValuation
    exact: bool  # False = heuristic (negative exponents in the map)


def pushforward_monomial(mono_map, v):
    """Weight vector of the pushforward: t -> A t.

    For a polynomial monomial map (nonnegative exponent matrix) this is
    exact: distinct monomials stay distinct under a nonsingular exponent
    substitution, so no cancellation can spoil the minimum.  With
    negative exponents the result is only an upper approximation and is
    flagged accordingly.
    """
    if mono_map.dimension != v.nvars:
        raise DimensionError("map and valuation ambients differ")
    new_weights = mono_map.matrix.apply(v.weights)
    return PushforwardResult(MonomialValuation(new_weights), mono_map.is_polynomial())


def eigen_weight_power_iteration(mono_map, iters=200, tol=Fraction(1, 10 ** 10)):
    """Fixed weight vector with A t = lambda t, normalized to min t = -1.

    Iterates t <- (A t) / |min(A t)| from t = (-1, ..., -1); the
    normalization factors converge to the dominant eigenvalue when it is
    simple.  Exact rational arithmetic with a dyadic rounding step per
    iteration to keep denominators bounded.
    """
    if not mono_map.is_polynomial():
        raise DegreeLabError("power iteration needs a nonnegative exponent matrix")
    a = mono_map.matrix
    d = a.rows
    grid = 1 << 80
    t = tuple(Fraction(-1) for _ in range(d))
    lam_prev = None
    for _ in range(iters):
        u = a.apply(t)
        m = min(u)
        if m >= 0:
            raise ConvergenceError("iteration left the negative cone", last=t)
        lam = -m
        t_next = tuple(
            Fraction(round(ui / lam * grid), grid) for ui in u
        )
        if lam_prev is not None and max(abs(x - y) for x, y in zip(t_next, t)) <= tol \
                and abs(lam - lam_prev) <= tol * lam:
            residual = max(abs(ui - lam * ti) for ui, ti in zip(a.apply(t_next), t_next))
            if residual <= tol:
                bits = max(32, Fraction(tol).denominator.bit_length())
                return MonomialValuation(t_next), BigFloat(lam, bits)
        t = t_next
        lam_prev = lam
    raise ConvergenceError(
        f"no fixed weight within {iters} iterations", last=t)


@dataclass(frozen=True)
class TableEntry:
    label: str
    degrees: tuple  # deg(P o f^n) for n = 0..N
    scaled: tuple  # -deg(P o f^n) / lambda^n, as mpf
    limit: object  # mpf or None when the sequence did not settle
    converged: bool


class ValuationTable:
    """Scaled-limit data for a pool of test polynomials.

    Rows exist for every requested polynomial and for its composition
    with the map, so the eigen-equation check has both sides available.
    Coordinate rows drive the normalization min_i v(x_i) = -1.
    """

    def __init__(self, entries, lambda1, coord_labels, final_iterate, tol):
        self.entries = entries  # dict label -> TableEntry
        self.lambda1 = lambda1
        self.coord_labels = coord_labels
        self.final_iterate = final_iterate
        self.tol = tol
        coords = [entries[lab] for lab in coord_labels]
        if any(e.limit is None for e in coords):
            raise ConvergenceError("coordinate rows did not converge")
        self.normalization = min(e.limit for e in coords)
        if not self.normalization < 0:
            raise DegreeLabError("expected a negative minimal coordinate value")

    def raw_limit(self, label):
        return self.entries[label].limit

    def normalized_limit(self, label):
        lim = self.entries[label].limit
        if lim is None:
            return None
        return lim / (-self.normalization)

    def normalized_coordinate_values(self):
        return tuple(self.normalized_limit(lab) for lab in self.coord_labels)

    def make_oracle(self, normalized=True):
        """P -> scaled value at the final computed iterate.

        Powers of the iterate's components are cached across calls, so
        fuzzing many polynomials against one oracle stays cheap.
        """
        comps = self.final_iterate
        n = len(self.entries[self.coord_labels[0]].degrees) - 1
        lam = self.lambda1.value
        scale = (-self.normalization) if normalized else mpmath.mpf(1)
        caches = [dict() for _ in comps]

        def oracle(poly):
            q = compose(poly, comps, power_caches=caches)
            d = q.total_degree()
            if d == NEG_INF_DEGREE:
                return INF
            return -mpmath.mpf(int(d)) / lam ** n / scale

        return oracle


NEG_INF_DEGREE = float("-inf")


def eigenvaluation_scaled_limit(f, testpolys, n_max, lambda1, tol=mpmath.mpf("1e-6"),
                                caps=DEFAULT_CAPS, coord_labels=None):
    """Table of v(P) ~ -deg(P o f^n) / lambda1^n with extrapolated limits.

    testpolys: iterable of (label, MultiPoly).  Coordinates are always
    included; each polynomial's composition with f gets its own row
    labelled "<label> o f".
    """
    lam = lambda1 if isinstance(lambda1, BigFloat) else BigFloat(lambda1)
    if lam.value < 1:
        raise DegreeLabError("need lambda1 >= 1")
    d = f.dimension
    if coord_labels is None:
        coord_labels = tuple(f"x{i+1}" for i in range(d))
    pool = {}
    for i, lab in enumerate(coord_labels):
        pool[lab] = MultiPoly.variable(d, i)
    for label, poly in testpolys:
        pool.setdefault(label, poly)
    for label, poly in list(pool.items()):
        partner = f"{label} o f"
        if partner not in pool:
            pool[partner] = compose(poly, f.components)

    degs = {label: [int(p.total_degree())] for label, p in pool.items()}
    final = f.components
    for _n, comps in iterate_components(f, n_max, caps):
        final = comps
        caches = [dict() for _ in comps]  # shared across the pool at this n
        for label, poly in pool.items():
            q = compose(poly, comps, power_caches=caches)
            degs[label].append(int(q.total_degree()))

    with mpmath.workprec(max(lam.precision, 64) + 16):
        lam_v = lam.value
        entries = {}
        for label, ds in degs.items():
            scaled = tuple(-mpmath.mpf(dn) / lam_v ** n for n, dn in enumerate(ds))
            limit, converged = _settle(scaled, tol)
            entries[label] = TableEntry(label, tuple(ds), scaled, limit, converged)
    return ValuationTable(entries, lam, tuple(coord_labels), final, tol)


def _settle(scaled, tol):
    """Declare a limit when the last three values agree within tolerance."""
    if len(scaled) < 3:
        return scaled[-1], False
    s = scaled[-3:]
    span = max(s) - min(s)
    scale = max(mpmath.mpf(1), abs(s[-1]))
    if span > tol * scale:
        return None, False
    d1, d2 = s[-2] - s[-3], s[-1] - s[-2]
    if d1 != 0 and abs(d2) < abs(d1):
        ratio = d2 / d1
        if abs(ratio) < 1:
            return s[-1] + d2 * ratio / (1 - ratio), True
    return s[-1], True


@dataclass(frozen=True)
class EigenEquationReport:
    violations: tuple  # (label, |v(P o f) - lambda v(P)|)
    max_violation: float
    tol: float

    @property
    def ok(self):
        return self.max_violation <= self.tol


def verify_eigen_equation(table, tol=1e-6):
    """Check v(P o f) = lambda1 * v(P) on every base row of the table."""
    lam = table.lambda1.value
    rows = []
    for label, entry in table.entries.items():
        if label.endswith(" o f"):
            continue
        partner = f"{label} o f"
        if partner not in table.entries:
            continue
        lhs = table.normalized_limit(partner)
        rhs = table.normalized_limit(label)
        if lhs is None or rhs is None:
            continue
        rows.append((label, abs(lhs - lam * rhs)))
    worst = max((float(v) for _, v in rows), default=0.0)
    return EigenEquationReport(tuple(rows), worst, float(tol))


@dataclass(frozen=True)
class AxiomReport:
    trials: int
    max_mult_violation: float
    min_superadd_margin: float
    constants_ok: bool
    tol: float

    @property
    def ok(self):
        return (self.max_mult_violation <= self.tol
                and self.min_superadd_margin >= -self.tol
                and self.constants_ok)


def random_poly(nvars, rng, max_degree=3, max_terms=4, coeff_range=5):
    """Small random polynomial with nonzero integer coefficients."""
    while True:
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            mono = [0] * nvars
            budget = rng.randint(0, max_degree)
            for _ in range(budget):
                mono[rng.randrange(nvars)] += 1
            c = rng.randint(-coeff_range, coeff_range)
            if c:
                terms[tuple(mono)] = terms.get(tuple(mono), 0) + c
        p = MultiPoly(nvars, {m: c for m, c in terms.items() if c})
        if not p.is_zero():
            return p


def verify_valuation_axioms(oracle, nvars, trials=200, tol=1e-6, seed=0):
    """Multiplicativity, min-superadditivity and v(const) = 0 under an oracle.

    Pairs are drawn from a seeded pool of degree <= 3 polynomials;
    engineered near-cancelling pairs (P, -P + lower order) are mixed in,
    since those are where superadditivity is genuinely strict.
    """
    rng = random.Random(seed)
    max_mult = 0.0
    min_margin = INF
    constants_ok = True
    for k in range(trials):
        p = random_poly(nvars, rng)
        if k % 5 == 4:
            low = random_poly(nvars, rng, max_degree=1)
            q = -p + low
        else:
            q = random_poly(nvars, rng)
        vp, vq = oracle(p), oracle(q)
        prod = p * q
        vpq = oracle(prod)
        if vpq != INF and vp != INF and vq != INF:
            max_mult = max(max_mult, abs(float(vpq - (vp + vq))))
        s = p + q
        vs = oracle(s)
        if vs != INF:
            floor = min(vp, vq)
            min_margin = min(min_margin, float(vs - floor))
        c = MultiPoly.constant(nvars, rng.randint(1, 9))
        if oracle(c) != 0:
            constants_ok = False
    if min_margin == INF:
        min_margin = 0.0
    return AxiomReport(trials, max_mult, min_margin, constants_ok, float(tol))


@dataclass(frozen=True)
class ValueGroupMatrix:
    labels: tuple
    q: tuple  # rows of rationals
    residual: float  # worst reconstruction error
    char_value: float  # |det(Q - lambda I)|

    def row(self, i):
        return self.q[i]


def value_group_matrix(table, precision_digits=40):
    """Rational Q with lambda1 v(x_i) = sum_j q_ij v(x_j), via LLL.

    The representation need not be unique; acceptance is that det(Q -
    lambda1 I) vanishes to the working precision.  Returns None when no
    rational dependency is found at the requested precision.
    """
    lam = table.lambda1
    labels = table.coord_labels
    d = len(labels)
    with mpmath.workprec(int(precision_digits * 3.33) + 64):
        v = [mpmath.mpf(table.normalized_limit(lab)) for lab in labels]
        w = [mpmath.mpf(table.normalized_limit(f"{lab} o f")) for lab in labels]
        rows = []
        worst = 0.0
        for i in range(d):
            rel = integer_relation([w[i]] + v, precision_digits, require_index=0)
            if rel is None:
                return None
            c0 = rel[0]
            row = tuple(Fraction(-cj, c0) for cj in rel[1:])
            recon = mpmath.fsum(
                mpmath.mpf(qj.numerator) / qj.denominator * vj for qj, vj in zip(row, v))
            worst = max(worst, abs(float(w[i] - recon)))
            rows.append(row)
        mat = mpmath.matrix(d, d)
        for i in range(d):
            for j in range(d):
                mat[i, j] = mpmath.mpf(rows[i][j].numerator) / rows[i][j].denominator
        for i in range(d):
            mat[i, i] -= lam.value
        char_value = abs(mpmath.det(mat))
        gate = mpmath.mpf(10) ** (-precision_digits / 2)
        if not char_value < gate:
            return None
    return ValueGroupMatrix(tuple(labels), tuple(rows), float(worst), float(char_value))


def certify_algebraicity(lambda1, dimension, precision_digits=60, automorphism=False):
    """Minimal-polynomial certificate for lambda1.

    Degree bound: the ambient dimension d, or 2d in automorphism mode
    (there either lambda1 or lambda1^2 is algebraic of degree <= d, so
    lambda1 has degree at most 2d).
    """
    if not isinstance(lambda1, BigFloat):
        raise PrecisionError("certify_algebraicity expects a BigFloat")
    bound = 2 * dimension if automorphism else dimension
    effective = max(40, precision_digits) if bound <= 3 else precision_digits
    lambda1.require_digits(effective)
    return lll_min_poly(lambda1, bound, effective)
