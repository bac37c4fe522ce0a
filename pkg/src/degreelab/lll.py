"""LLL lattice reduction and minimal-polynomial recovery.

The reduction is the textbook algorithm with exact rational
Gram-Schmidt data (delta = 0.99).  Minimal-polynomial candidates come
from the lattice spanned by rows [e_i | round(10^D * x^i)]; a candidate
is only returned when it passes the residual and height gates, so
transcendental-looking inputs are rejected rather than force-fitted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .bigfloat import BigFloat
from .errors import PrecisionError
from .intpoly import IntPoly

LLL_DELTA = Fraction(99, 100)


def lll_reduce(basis, delta=LLL_DELTA):
    """LLL-reduce integer basis rows in place semantics; returns a new list."""
    b = [list(map(int, row)) for row in basis]
    n = len(b)

    mu = [[Fraction(0)] * n for _ in range(n)]
    norm2 = [Fraction(0)] * n

    # recompute-everything Gram-Schmidt: the lattices here are tiny
    # (<= 8 rows), clarity beats the incremental update bookkeeping
    def recompute():
        star = []
        for i in range(n):
            vi = [Fraction(x) for x in b[i]]
            for j in range(i):
                if norm2[j] == 0:
                    mu[i][j] = Fraction(0)
                else:
                    mu[i][j] = Fraction(sum(Fraction(x) * y for x, y in zip(b[i], star[j])), norm2[j])
                vi = [a - mu[i][j] * c for a, c in zip(vi, star[j])]
            star.append(vi)
            norm2[i] = sum(a * a for a in vi)
        return star

    recompute()
    k = 1
    while k < n:
        # size reduction
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                b[k] = [a - q * c for a, c in zip(b[k], b[j])]
                recompute()
        # Lovasz condition
        if norm2[k] >= (delta - mu[k][k - 1] ** 2) * norm2[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            recompute()
            k = max(k - 1, 1)
    return b


@dataclass(frozen=True)
class MinPolyCertificate:
    """A minimal-polynomial candidate that passed the acceptance gates.

    residual = |candidate(x)| evaluated at the input value; the gate
    demands residual < 10^(-digits/2) and coefficient height
    < 10^(digits/4), with the candidate primitive and positively led.
    """

    candidate: IntPoly
    degree_bound: int
    residual: BigFloat
    precision_digits: int
    coefficient_height: int

    def __post_init__(self):
        gate = mpmath.mpf(10) ** (-Fraction(self.precision_digits, 2))
        if not self.residual.value < gate:
            raise PrecisionError("certificate residual exceeds the acceptance gate")
        if self.candidate.degree > self.degree_bound:
            raise PrecisionError("certificate degree exceeds the bound")


def _candidate_rows(reduced, dim, block_scale):
    rows = sorted(reduced, key=lambda r: sum(x * x for x in r))
    for row in rows:
        coeffs = [c // block_scale for c in row[:dim]]
        if any(coeffs):
            yield coeffs


def integer_relation(values, precision_digits=40, max_height=None, require_index=None):
    """Small integers c with sum c_i * values[i] ~ 0, or None.

    values are mpmath floats carrying precision_digits of accuracy.
    Same lattice shape and gates as the minimal-polynomial search.
    When require_index is given, only relations with a nonzero
    coefficient there qualify (several reduced rows are scanned).
    """
    scale = 10 ** precision_digits
    block_scale = 10 ** (precision_digits // 2)
    workbits = int(precision_digits * 3.33) + 64
    with mpmath.workprec(workbits):
        cols = [int(mpmath.nint(mpmath.mpf(v) * scale)) for v in values]
    dim = len(values)
    basis = []
    for i in range(dim):
        row = [0] * dim + [cols[i]]
        row[i] = block_scale
        basis.append(row)
    reduced = lll_reduce(basis)
    height_gate = max_height if max_height is not None else 10 ** (precision_digits // 4)
    residual_gate = mpmath.mpf(10) ** (-Fraction(precision_digits, 2))
    for coeffs in _candidate_rows(reduced, dim, block_scale):
        if require_index is not None and coeffs[require_index] == 0:
            continue
        if max(abs(c) for c in coeffs) >= height_gate:
            continue
        with mpmath.workprec(workbits):
            residual = abs(mpmath.fsum(c * mpmath.mpf(v) for c, v in zip(coeffs, values)))
        if residual < residual_gate:
            return coeffs
    return None


def lll_min_poly(x, degree_bound, precision_digits=60):
    """Search for an integer polynomial of degree <= degree_bound killing x.

    x must be a BigFloat declaring at least precision_digits decimal
    digits.  Returns a MinPolyCertificate, or None when no candidate
    passes the residual and height gates.

    The lattice rows are [10^(D/2) e_i | round(10^D x^i)] with
    D = precision_digits.  The identity-block scale forces every
    spurious short vector to leave a scaled residual of order at least
    10^(-D (k+1)/(2k+4)) for degree bound k, safely above the
    10^(-D/2) acceptance gate, while a genuine relation sits below
    10^(-3D/4); with unscaled unit vectors LLL happily produces
    height ~10^(D/4) pseudo-relations for transcendental inputs that
    would slip through both gates.
    """
    if degree_bound < 1:
        raise PrecisionError("degree bound must be at least 1")
    if not isinstance(x, BigFloat):
        raise PrecisionError("lll_min_poly expects a BigFloat with declared precision")
    x.require_digits(precision_digits)

    scale = 10 ** precision_digits
    block_scale = 10 ** (precision_digits // 2)
    workbits = int(precision_digits * 3.33) + 64
    with mpmath.workprec(workbits):
        powers = [mpmath.mpf(1)]
        for _ in range(degree_bound):
            powers.append(powers[-1] * x.value)
        cols = [int(mpmath.nint(p * scale)) for p in powers]

    dim = degree_bound + 1
    basis = []
    for i in range(dim):
        row = [0] * dim + [cols[i]]
        row[i] = block_scale
        basis.append(row)
    reduced = lll_reduce(basis)

    height_gate = 10 ** (precision_digits // 4)
    residual_gate = mpmath.mpf(10) ** (-Fraction(precision_digits, 2))
    for coeffs in _candidate_rows(reduced, dim, block_scale):
        cand = IntPoly(coeffs)
        if cand.degree < 1:
            continue
        cand = cand.primitive()
        height = max(abs(c) for c in cand.coeffs)
        if height >= height_gate:
            continue
        with mpmath.workprec(workbits):
            residual = abs(cand(x.value))
        if residual < residual_gate:
            return MinPolyCertificate(
                candidate=cand,
                degree_bound=degree_bound,
                residual=BigFloat(residual, x.precision),
                precision_digits=precision_digits,
                coefficient_height=height,
            )
    return None
