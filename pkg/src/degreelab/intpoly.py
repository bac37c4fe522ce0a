"""Dense univariate integer polynomials, Sturm sequences and certified
real-root isolation.

Coefficients are stored low degree first.  Everything here is exact:
root intervals are rational brackets with a sign change, certified by a
Sturm count of exactly one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegreeLabError, InvariantError

DEFAULT_ROOT_WIDTH = Fraction(1, 2 ** 32)


def _strip(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


class IntPoly:
    """Univariate polynomial with arbitrary-size integer coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = tuple(_strip(int(c) for c in coeffs))

    @classmethod
    def zero(cls):
        return cls(())

    @classmethod
    def x(cls):
        return cls((0, 1))

    @property
    def degree(self):
        return len(self.coeffs) - 1  # zero polynomial -> -1

    def is_zero(self):
        return not self.coeffs

    @property
    def leading(self):
        if not self.coeffs:
            raise DegreeLabError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    def __neg__(self):
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly(tuple(c * other for c in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly.zero()
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return IntPoly(out)

    __rmul__ = __mul__

    def exact_div(self, other):
        """Divide by `other` over Z, raising if the division is not exact."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return IntPoly.zero()
        rem = list(self.coeffs)
        lead = other.leading
        n = len(rem) - len(other.coeffs) + 1
        if n <= 0:
            raise InvariantError("polynomial division expected to be exact")
        out = [0] * n
        for k in range(n - 1, -1, -1):
            top = rem[k + other.degree]
            if top % lead:
                raise InvariantError("polynomial division expected to be exact")
            q = top // lead
            out[k] = q
            if q:
                for j, c in enumerate(other.coeffs):
                    rem[k + j] -= q * c
        if any(rem):
            raise InvariantError("polynomial division expected to be exact")
        return IntPoly(out)

    def div_rational(self, other):
        """Exact division over Q; result rescaled to a primitive integer poly."""
        rem = [Fraction(c) for c in self.coeffs]
        lead = Fraction(other.leading)
        n = len(rem) - len(other.coeffs) + 1
        out = [Fraction(0)] * max(n, 0)
        for k in range(n - 1, -1, -1):
            q = rem[k + other.degree] / lead
            out[k] = q
            for j, c in enumerate(other.coeffs):
                rem[k + j] -= q * c
        if any(rem):
            raise InvariantError("expected exact rational division")
        den = math.lcm(*(f.denominator for f in out)) if out else 1
        return IntPoly(tuple(int(f * den) for f in out))

    def content(self):
        return math.gcd(*self.coeffs) if self.coeffs else 0

    def primitive(self):
        """Primitive part with positive leading coefficient."""
        if self.is_zero():
            return self
        c = self.content()
        if self.leading < 0:
            c = -c
        return IntPoly(tuple(x // c for x in self.coeffs))

    def primitive_signed(self):
        """Primitive part keeping the sign of the leading coefficient."""
        if self.is_zero():
            return self
        c = self.content()
        return IntPoly(tuple(x // c for x in self.coeffs))

    def derivative(self):
        return IntPoly(tuple(i * c for i, c in enumerate(self.coeffs))[1:])

    def __call__(self, x):
        """Evaluate by Horner.  Exact for int/Fraction arguments."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose_x_squared(self):
        """Return p(x^2)."""
        if self.is_zero():
            return self
        out = [0] * (2 * len(self.coeffs) - 1)
        for i, c in enumerate(self.coeffs):
            out[2 * i] = c
        return IntPoly(out)

    def reflect(self):
        """Return p(-x)."""
        return IntPoly(tuple(-c if i % 2 else c for i, c in enumerate(self.coeffs)))

    def scale_arg(self, r):
        """Primitive integer polynomial proportional to p(r*x)."""
        r = Fraction(r)
        scaled = [c * r.numerator ** i * r.denominator ** (self.degree - i)
                  for i, c in enumerate(self.coeffs)]
        return IntPoly(scaled).primitive()

    def strip_zero_roots(self):
        """Return (q, k) with p = x^k * q and q(0) != 0."""
        if self.is_zero():
            return self, 0
        k = 0
        while self.coeffs[k] == 0:
            k += 1
        return IntPoly(self.coeffs[k:]), k

    def squarefree_part(self):
        if self.degree < 1:
            return self.primitive() if not self.is_zero() else self
        g = gcd_poly(self, self.derivative())
        if g.degree <= 0:
            return self.primitive()
        return self.div_rational(g).primitive()

    def pretty(self, var="x"):
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = f"{mag}"
            elif i == 1:
                body = f"{var}" if mag == 1 else f"{mag}*{var}"
            else:
                body = f"{var}^{i}" if mag == 1 else f"{mag}*{var}^{i}"
            parts.append(("- " if c < 0 else "+ ") + body)
        head = parts[0][2:] if parts[0].startswith("+ ") else "-" + parts[0][2:]
        return " ".join([head] + parts[1:])

    def __repr__(self):
        return f"IntPoly({self.pretty()})"


def _exact_rem(a, b):
    """Remainder of a by b when every division step lands in Z.

    Callers premultiply `a` by an adequate power of lc(b) (pseudo-division),
    which guarantees exactness; a failed step is a bug.
    """
    rem = list(a.coeffs)
    lead = b.leading
    while True:
        rem = _strip(rem)
        if len(rem) < len(b.coeffs):
            break
        k = len(rem) - len(b.coeffs)
        top = rem[-1]
        if top % lead:
            raise InvariantError("pseudo-division step was not exact")
        q = top // lead
        for j, c in enumerate(b.coeffs):
            rem[k + j] -= q * c
        rem = rem[:-1]
    return IntPoly(rem)


def pseudo_rem(a, b):
    """prem(a, b) = remainder of lc(b)^(deg a - deg b + 1) * a by b."""
    d = a.degree - b.degree
    if d < 0:
        return a
    return _exact_rem(a * b.leading ** (d + 1), b)


def gcd_poly(a, b):
    """GCD over Q[x] returned as a primitive integer polynomial."""
    a, b = a.primitive(), b.primitive()
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        r = pseudo_rem(a, b)
        a, b = b, (r.primitive() if not r.is_zero() else IntPoly.zero())
    return a.primitive()


def cauchy_bound(p):
    """Rational bound: all complex roots have modulus <= bound."""
    if p.degree < 1:
        return Fraction(0)
    lead = abs(p.leading)
    m = max(abs(c) for c in p.coeffs[:-1])
    return 1 + Fraction(m, lead)


def sturm_chain(p):
    """Sturm chain of the squarefree part of p."""
    p0 = p.squarefree_part()
    chain = [p0, p0.derivative()]
    while not chain[-1].is_zero() and chain[-1].degree >= 1:
        nxt = _negated_positive_prem(chain[-2], chain[-1])
        if nxt.is_zero():
            break
        chain.append(nxt)
    return [q for q in chain if not q.is_zero()]


def _negated_positive_prem(a, b):
    """-(rem of c*a by b) for a positive constant c: Sturm-sign safe."""
    d = a.degree - b.degree
    mult = b.leading ** (d + 1)
    if mult < 0:
        mult *= b.leading  # one more power makes it positive
    r = _exact_rem(a * mult, b)
    return (-r).primitive_signed()


def _sign_variations(values):
    signs = [v for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def sturm_count(chain, lo, hi):
    """Number of distinct real roots in (lo, hi]; endpoints must not be roots."""
    at_lo = _sign_variations([q(lo) for q in chain])
    at_hi = _sign_variations([q(hi) for q in chain])
    return at_lo - at_hi


@dataclass(frozen=True)
class RootInterval:
    """A rational bracket certified to contain exactly one real root.

    Invariants, checked at construction: the polynomial changes sign
    across (lower, upper).  `isolate_real_roots` additionally certifies
    a Sturm count of one before building the interval.
    """

    lower: Fraction
    upper: Fraction
    polynomial: IntPoly

    def __post_init__(self):
        if not self.lower < self.upper:
            raise InvariantError("root interval must have lower < upper")
        lo, hi = self.polynomial(self.lower), self.polynomial(self.upper)
        if lo == 0 or hi == 0 or (lo > 0) == (hi > 0):
            raise InvariantError("polynomial must change sign across the interval")

    @property
    def width(self):
        return self.upper - self.lower

    def midpoint(self):
        return (self.lower + self.upper) / 2

    def refine(self, width):
        """Bisect down to the requested rational width."""
        lo, hi = self.lower, self.upper
        p = self.polynomial
        s_lo = p(lo) > 0
        while hi - lo > width:
            mid = (lo + hi) / 2
            v = p(mid)
            if v == 0:
                # mid is the root itself; pin a tiny sign-change box around it
                eps = (hi - lo) / 8
                while p(mid - eps) == 0 or p(mid + eps) == 0 or \
                        (p(mid - eps) > 0) == (p(mid + eps) > 0) or 2 * eps > width:
                    eps /= 2
                lo, hi = mid - eps, mid + eps
                break
            if (v > 0) == s_lo:
                lo = mid
            else:
                hi = mid
        return RootInterval(lo, hi, p)

    def to_bigfloat(self, precision):
        from .bigfloat import BigFloat

        target = Fraction(1, 2 ** precision)
        box = self if self.width <= target else self.refine(target)
        return BigFloat(box.midpoint(), precision)

    def __repr__(self):
        return (f"RootInterval([{self.lower}, {self.upper}] ~ "
                f"{float(self.midpoint()):.9f}, {self.polynomial.pretty()})")


def isolate_real_roots(p, width=DEFAULT_ROOT_WIDTH):
    """Disjoint rational isolating intervals, one per distinct real root."""
    if p.is_zero():
        raise DegreeLabError("cannot isolate roots of the zero polynomial")
    q = p.squarefree_part()
    if q.degree < 1:
        return []
    chain = sturm_chain(q)
    bound = cauchy_bound(q) + 1
    out = []

    def carve(mid, a, b):
        """mid is an exact root: return a certified box around it."""
        eps = (b - a) / 8
        while True:
            va, vb = q(mid - eps), q(mid + eps)
            if va != 0 and vb != 0 and (va > 0) != (vb > 0) and \
                    sturm_count(chain, mid - eps, mid + eps) == 1:
                return mid - eps, mid + eps
            eps /= 2

    def split(a, b, count):
        # invariant: q(a) != 0 and q(b) != 0
        if count == 0:
            return
        if count == 1 and (q(a) > 0) != (q(b) > 0):
            out.append(RootInterval(a, b, q).refine(width))
            return
        mid = (a + b) / 2
        if q(mid) == 0:
            ca, cb = carve(mid, a, b)
            out.append(RootInterval(ca, cb, q).refine(width))
            split(a, ca, sturm_count(chain, a, ca))
            split(cb, b, sturm_count(chain, cb, b))
            return
        left = sturm_count(chain, a, mid)
        split(a, mid, left)
        split(mid, b, count - left)

    split(-bound, bound, sturm_count(chain, -bound, bound))
    out.sort(key=lambda iv: iv.lower)
    return out


def count_real_roots(p, lo, hi):
    chain = sturm_chain(p)
    return sturm_count(chain, Fraction(lo), Fraction(hi))
