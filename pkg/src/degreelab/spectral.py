"""Certified spectral radii of integer matrices.

The spectral radius is the maximum modulus of the roots of the
characteristic polynomial p.  Writing a for the largest |real root| of
p and b for the largest real root of the pair-product polynomial (whose
roots are the products z_i * z_j over unordered pairs, obtained as the
characteristic polynomial of the second exterior power of a companion
matrix), one has rho^2 = max(a^2, b) exactly:

* every real root of the pair-product polynomial is a product of two
  roots of p, hence at most rho^2;
* if the dominant root is real, a = rho; if it is a strictly complex
  pair z, z-bar, then z * z-bar = rho^2 is a real root of the
  pair-product polynomial and dominates all other real roots.

Both quantities come with Sturm-certified rational brackets, so the
returned value is an exact enclosure at the requested precision; no
floating-point eigenvalue solver is involved.  A Schur-Cohn disk count
is provided as an independent cross-check.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .bigfloat import BigFloat
from .errors import InvariantError
from .intmatrix import IntMatrix, char_poly, exterior_power
from .intpoly import IntPoly, RootInterval, gcd_poly, isolate_real_roots, sturm_chain, sturm_count

_ZERO_CERT_POLY = IntPoly((0, 1))  # x; isolates the root 0


def _monic_scaled(p):
    """Monic integer polynomial whose roots are lc(p) * (roots of p)."""
    c = p.leading
    n = p.degree
    # coefficient of x^i becomes a_i * c^(n-1-i)
    return IntPoly(tuple(p.coeffs[i] * c ** (n - 1 - i) for i in range(n)) + (1,))


def pair_product_poly(p):
    """Squarefree integer polynomial vanishing on all z_i * z_j, i < j."""
    q = p.squarefree_part()
    n = q.degree
    if n < 2:
        return IntPoly.zero()
    c = q.leading
    comp = IntMatrix.companion(_monic_scaled(q))
    pp = char_poly(exterior_power(comp, 2))
    # roots currently are (c z_i)(c z_j); undo the scaling by c^2
    return pp.scale_arg(Fraction(c * c)).squarefree_part()


def even_part_of_products(p):
    """Integer polynomial s with s(x^2) = +/- p(x) * p(-x); roots z_i^2."""
    t = p * p.reflect()
    if any(t.coeffs[i] for i in range(1, len(t.coeffs), 2)):
        raise InvariantError("p(x) p(-x) should be even")
    return IntPoly(t.coeffs[::2])


def _abs_interval(iv):
    """Bracket of |root| as a positive (lo, hi) pair of rationals."""
    if iv.lower >= 0:
        return iv.lower, iv.upper
    if iv.upper <= 0:
        return -iv.upper, -iv.lower
    # interval straddles 0: the root could be 0 itself only if p(0) = 0,
    # which strip_zero_roots has removed before we get here
    return Fraction(0), max(-iv.lower, iv.upper)


def _max_abs_real_root(p, width):
    """(lo, hi, interval, positive) for the real root of p of largest modulus."""
    roots = isolate_real_roots(p, width=width)
    if not roots:
        return None
    # drop each negative root whose exact mirror is also a root: the positive
    # twin carries the same modulus, and removing ties makes all remaining
    # moduli pairwise distinct so the refinement loop below terminates
    qs = p.squarefree_part()
    refl = gcd_poly(qs, qs.reflect().primitive())
    if refl.degree >= 1:
        chain = sturm_chain(refl)
        roots = [iv for iv in roots
                 if not (iv.upper < 0 and sturm_count(chain, iv.lower, iv.upper) >= 1)]
    for _ in range(64):
        boxes = [_abs_interval(iv) for iv in roots]
        best = max(range(len(boxes)), key=lambda i: boxes[i][1])
        blo, bhi = boxes[best]
        contenders = [i for i in range(len(boxes)) if i != best and boxes[i][1] > blo]
        if not contenders:
            iv = roots[best]
            return blo, bhi, iv, iv.lower > 0
        width = width / 16
        roots = [iv.refine(width) for iv in roots]
    raise InvariantError("real-root moduli failed to separate")


def max_root_modulus(p, precision=256):
    """Certified (BigFloat, RootInterval) for max |root| of an IntPoly.

    The interval's polynomial has the returned modulus as a genuine real
    root: the characteristic polynomial itself when a real root attains
    the maximum, or q(x^2) for the pair-product polynomial q when a
    strictly complex pair dominates.
    """
    q, nzeros = p.strip_zero_roots()
    if q.degree < 1:
        if nzeros == 0:
            raise InvariantError("polynomial has no roots")
        return BigFloat(0, precision), RootInterval(Fraction(-1, 2), Fraction(1, 2), _ZERO_CERT_POLY)
    qs = q.squarefree_part()
    width = Fraction(1, 2 ** 24)
    real = _max_abs_real_root(qs, width)
    prod = pair_product_poly(qs)
    prod_roots = isolate_real_roots(prod, width=width) if not prod.is_zero() else []
    b_iv = prod_roots[-1] if prod_roots else None

    if b_iv is None:
        if real is None:
            raise InvariantError("a nonconstant polynomial must have roots")
        return _certify_real(real, precision)
    if real is None:
        return _certify_complex(qs, prod, b_iv, precision)

    # decide max(a^2, b) by interval refinement, with an exact tie-breaker
    a_lo, a_hi, a_iv, _pos = real
    squares = even_part_of_products(qs)
    squares_chain = sturm_chain(squares)
    tie_gcd = gcd_poly(squares, prod)
    tie_chain = sturm_chain(tie_gcd) if tie_gcd.degree >= 1 else None
    for _ in range(12):
        if b_iv.upper <= a_lo * a_lo:
            return _certify_real(real, precision)
        if b_iv.lower >= a_hi * a_hi:
            return _certify_complex(qs, prod, b_iv, precision)
        # the ranges overlap; a^2 = b exactly iff the (unique, once refined)
        # root of `squares` in the a^2-range coincides with the root of the
        # pair-product polynomial in the b-range, i.e. their gcd has a root
        # in the intersection of the two ranges
        if tie_chain is not None:
            sq_lo, sq_hi = a_lo * a_lo, a_hi * a_hi
            lo = max(sq_lo, b_iv.lower)
            hi = min(sq_hi, b_iv.upper)
            if lo < hi and squares(sq_lo) != 0 and squares(sq_hi) != 0 \
                    and tie_gcd(lo) != 0 and tie_gcd(hi) != 0 \
                    and sturm_count(squares_chain, sq_lo, sq_hi) == 1 \
                    and sturm_count(tie_chain, lo, hi) >= 1:
                # the maximum modulus is attained by the real root
                return _certify_real(real, precision)
        width = width / 2 ** 8
        a_iv = a_iv.refine(width)
        a_lo, a_hi = _abs_interval(a_iv)
        real = (a_lo, a_hi, a_iv, real[3])
        b_iv = b_iv.refine(width)
    raise InvariantError("could not separate real and complex dominant moduli")


def _certify_real(real, precision):
    _lo, _hi, iv, positive = real
    if not positive and iv.upper <= 0:
        refl = iv.polynomial.reflect().primitive()
        iv = RootInterval(-iv.upper, -iv.lower, refl)
    iv = iv.refine(Fraction(1, 2 ** precision))
    return iv.to_bigfloat(precision), iv


def _certify_complex(qs, prod, b_iv, precision):
    doubled = prod.compose_x_squared()
    roots = isolate_real_roots(doubled, width=Fraction(1, 2 ** 24))
    if not roots:
        raise InvariantError("q(x^2) lost its positive root")
    iv = roots[-1].refine(Fraction(1, 2 ** precision))
    return iv.to_bigfloat(precision), iv


def spectral_radius(m, precision=256):
    """Largest root modulus of char_poly(m), certified.

    Returns (value, interval).  The zero matrix yields exactly 0 with an
    isolating interval for the root 0 of x.
    """
    m.require_square()
    return max_root_modulus(char_poly(m), precision=precision)


def count_roots_in_disk(p, r):
    """Schur-Cohn count of roots of p with |z| < r, or None when degenerate.

    Used as an independent cross-check of the certified spectral radius;
    degenerate radii (roots on the circle |z| = r, or a self-reciprocal
    transform) return None and the caller picks a nearby radius.
    """
    r = Fraction(r)
    if r <= 0:
        return 0

    def rec(poly):
        n = poly.degree
        if n <= 0:
            return 0
        coeffs = poly.coeffs
        a0, an = coeffs[0], coeffs[-1]
        delta = a0 * a0 - an * an
        if delta == 0:
            return None
        rev = IntPoly(coeffs[::-1])
        t = (a0 * poly - an * rev).primitive_signed()
        if t.is_zero():
            return None
        sub = rec(t)
        if sub is None:
            return None
        return sub if delta > 0 else n - sub

    return rec(p.scale_arg(r))  # roots scaled by 1/r: count |z| < 1


def sqrt_interval(x, width=Fraction(1, 2 ** 40)):
    """Certified rational bracket (lo, hi) with lo <= sqrt(x) <= hi.

    Exact squares return a degenerate bracket.
    """
    x = Fraction(x)
    if x < 0:
        raise InvariantError("sqrt of a negative rational")
    if x == 0:
        return Fraction(0), Fraction(0)
    # integer sqrt seeds on numerator/denominator give a tight start
    lo = Fraction(math.isqrt(x.numerator), math.isqrt(x.denominator) + 1)
    hi = lo + 1
    while lo * lo > x:
        lo /= 2
    while hi * hi < x:
        hi *= 2
    while hi - lo > width:
        mid = (lo + hi) / 2
        if mid * mid == x:
            return mid, mid
        if mid * mid < x:
            lo = mid
        else:
            hi = mid
    return lo, hi
