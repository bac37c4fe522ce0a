"""Sparse exact multivariate polynomials over the rationals.

Terms live in a dict keyed by exponent tuples; coefficients are
Fractions and nothing here ever touches floating point.  Products of
large dense-ish polynomials are routed through Kronecker substitution
(pack into one big integer per sign, multiply, unpack), which turns the
inner loop over term pairs into a single big-integer product; gmpy2 is
used for that product when importable.

The text format accepted by parse_poly is shared with the map files:
integers, rationals like 3/4, named variables, + - * ^ and parentheses.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

from .errors import DegreeLabError, DimensionError, ParseError, ResourceLimitError

try:  # pragma: no cover - exercised only when gmpy2 is absent
    from gmpy2 import mpz as _mpz

    def _bigmul(a, b):
        return int(_mpz(a) * _mpz(b))
except ImportError:  # pragma: no cover
    def _bigmul(a, b):
        return a * b

NEG_INF = float("-inf")

DEFAULT_TERM_CAP = 2_000_000
_KRONECKER_PAIR_THRESHOLD = 600_000  # term-pair count where packing wins
_KRONECKER_SLOT_CAP = 48_000_000


def grevlex_key(exps):
    """Sort key: ascending order is graded reverse lexicographic."""
    return (sum(exps), tuple(-e for e in reversed(exps)))


class MultiPoly:
    """Immutable-by-convention sparse polynomial in a fixed ambient."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        clean = {}
        if terms:
            for mono, coeff in terms.items():
                if len(mono) != nvars:
                    raise DimensionError("monomial length does not match ambient")
                c = coeff if isinstance(coeff, Fraction) else Fraction(coeff)
                if c:
                    clean[tuple(mono)] = c
        self.terms = clean

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def constant(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: Fraction(c)})

    @classmethod
    def one(cls, nvars):
        return cls.constant(nvars, 1)

    @classmethod
    def variable(cls, nvars, i):
        exps = [0] * nvars
        exps[i] = 1
        return cls(nvars, {tuple(exps): Fraction(1)})

    @classmethod
    def monomial(cls, nvars, exps, coeff=1):
        return cls(nvars, {tuple(exps): Fraction(coeff)})

    # -- basic queries ------------------------------------------------
    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(sum(m) == 0 for m in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def total_degree(self):
        """Max exponent sum; the zero polynomial maps to -infinity."""
        if not self.terms:
            return NEG_INF
        return max(sum(m) for m in self.terms)

    def degree_in(self, v):
        if not self.terms:
            return NEG_INF
        return max(m[v] for m in self.terms)

    def term_count(self):
        return len(self.terms)

    def leading(self):
        """(monomial, coefficient) maximal in grevlex."""
        if not self.terms:
            raise DegreeLabError("zero polynomial has no leading term")
        mono = max(self.terms, key=grevlex_key)
        return mono, self.terms[mono]

    def is_homogeneous(self):
        if not self.terms:
            return True
        degs = {sum(m) for m in self.terms}
        return len(degs) == 1

    def __eq__(self, other):
        return (isinstance(other, MultiPoly) and self.nvars == other.nvars
                and self.terms == other.terms)

    def __bool__(self):
        return bool(self.terms)

    # -- arithmetic ---------------------------------------------------
    def _check_ambient(self, other):
        if self.nvars != other.nvars:
            raise DimensionError("ambient variable counts differ")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.nvars, other)
        self._check_ambient(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return MultiPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return MultiPoly.zero(self.nvars)
        return MultiPoly(self.nvars, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check_ambient(other)
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise DegreeLabError("negative polynomial powers are not defined")
        acc = MultiPoly.one(self.nvars)
        base = self
        while n:
            if n & 1:
                acc = acc * base
            n >>= 1
            if n:
                base = base * base
        return acc

    def evaluate(self, point):
        if len(point) != self.nvars:
            raise DimensionError("evaluation point has wrong length")
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for x, e in zip(point, m):
                if e:
                    v *= Fraction(x) ** e
            total += v
        return total

    # -- monomial content, exact division -----------------------------
    def monomial_content(self):
        """Per-variable minimum exponents over all terms."""
        if not self.terms:
            return (0,) * self.nvars
        mins = [min(m[i] for m in self.terms) for i in range(self.nvars)]
        return tuple(mins)

    def divide_monomial(self, exps):
        out = {}
        for m, c in self.terms.items():
            newm = tuple(a - b for a, b in zip(m, exps))
            if any(e < 0 for e in newm):
                raise DegreeLabError("monomial does not divide every term")
            out[newm] = c
        return MultiPoly(self.nvars, out)

    def mul_monomial(self, exps, coeff=1):
        coeff = Fraction(coeff)
        return MultiPoly(self.nvars,
                         {tuple(a + b for a, b in zip(m, exps)): c * coeff
                          for m, c in self.terms.items()})

    def exact_div(self, g):
        """Exact division by g; raises if g does not divide self."""
        self._check_ambient(g)
        if g.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return self
        if g.is_constant():
            return self.scale(1 / g.constant_value())
        gm, gc = g.leading()
        rem = dict(self.terms)
        out = {}
        while rem:
            mono = max(rem, key=grevlex_key)
            coeff = rem[mono]
            t = tuple(a - b for a, b in zip(mono, gm))
            if any(e < 0 for e in t):
                raise DegreeLabError("division is not exact")
            q = coeff / gc
            out[t] = out.get(t, 0) + q
            for m2, c2 in g.terms.items():
                key = tuple(a + b for a, b in zip(t, m2))
                s = rem.get(key, 0) - q * c2
                if s:
                    rem[key] = s
                else:
                    rem.pop(key, None)
        return MultiPoly(self.nvars, out)

    # -- homogenization ------------------------------------------------
    def homogenize(self, target_degree):
        """Insert a fresh variable at index 0 padding each term to target."""
        deg = self.total_degree()
        if deg is NEG_INF:
            return MultiPoly.zero(self.nvars + 1)
        if target_degree < deg:
            raise DegreeLabError("target degree below the total degree")
        out = {}
        for m, c in self.terms.items():
            out[(target_degree - sum(m),) + m] = c
        return MultiPoly(self.nvars + 1, out)

    def dehomogenize(self, index):
        """Set the indexed variable to 1 and drop it from the ambient."""
        if not 0 <= index < self.nvars:
            raise DimensionError("dehomogenization index out of range")
        out = {}
        for m, c in self.terms.items():
            key = m[:index] + m[index + 1:]
            s = out.get(key, 0) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return MultiPoly(self.nvars - 1, out)

    # -- serialization --------------------------------------------------
    def to_text(self, varnames):
        """Canonical form: grevlex-descending terms joined by ' + ' / ' - '."""
        if len(varnames) != self.nvars:
            raise DimensionError("need one name per variable")
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=grevlex_key, reverse=True):
            c = self.terms[mono]
            factors = []
            for name, e in zip(varnames, mono):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            parts.append((c < 0, body))
        first_neg, first_body = parts[0]
        text = ("-" if first_neg else "") + first_body
        for neg, body in parts[1:]:
            text += (" - " if neg else " + ") + body
        return text

    def __repr__(self):
        names = [f"x{i+1}" for i in range(self.nvars)]
        return f"MultiPoly({self.to_text(names)})"


# ---------------------------------------------------------------------------
# multiplication

def poly_mul(p, q, term_cap=DEFAULT_TERM_CAP):
    if p.is_zero() or q.is_zero():
        return MultiPoly.zero(p.nvars)
    tp, tq = len(p.terms), len(q.terms)
    if tp > tq:
        p, q, tp, tq = q, p, tq, tp
    pairs = tp * tq
    if pairs > _KRONECKER_PAIR_THRESHOLD and p.nvars >= 1:
        slots = _kronecker_slots(p, q)
        if slots is not None and slots <= _KRONECKER_SLOT_CAP:
            out = _mul_kronecker(p, q, slots)
            if len(out.terms) > term_cap:
                raise ResourceLimitError(
                    f"product has {len(out.terms)} terms, over the cap {term_cap}")
            return out
        if pairs > 40 * _KRONECKER_PAIR_THRESHOLD:
            raise ResourceLimitError(
                f"refusing a product with ~{pairs} term pairs outside the packing box")
    out = {}
    for m1, c1 in p.terms.items():
        for m2, c2 in q.terms.items():
            key = tuple(a + b for a, b in zip(m1, m2))
            s = out.get(key, 0) + c1 * c2
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    if len(out) > term_cap:
        raise ResourceLimitError(f"product has {len(out)} terms, over the cap {term_cap}")
    return MultiPoly(p.nvars, out)


def _kronecker_slots(p, q):
    bounds = []
    total = 1
    for i in range(p.nvars):
        b = p.degree_in(i) + q.degree_in(i) + 1
        bounds.append(b)
        total *= b
        if total > _KRONECKER_SLOT_CAP:
            return None
    return total


def _int_coeffs(p):
    den = math.lcm(*(c.denominator for c in p.terms.values()))
    return {m: int(c * den) for m, c in p.terms.items()}, den


def _pack(int_terms, strides, digit_bytes, nslots):
    pos = bytearray(nslots * digit_bytes + 16)
    neg = bytearray(nslots * digit_bytes + 16)
    for mono, c in int_terms.items():
        idx = 0
        for e, s in zip(mono, strides):
            idx += e * s
        off = idx * digit_bytes
        if c > 0:
            b = c.to_bytes((c.bit_length() + 7) // 8, "little")
            pos[off:off + len(b)] = b
        else:
            c = -c
            b = c.to_bytes((c.bit_length() + 7) // 8, "little")
            neg[off:off + len(b)] = b
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _mul_kronecker(p, q, nslots):
    nv = p.nvars
    bounds = [p.degree_in(i) + q.degree_in(i) + 1 for i in range(nv)]
    strides = [1] * nv
    for i in range(1, nv):
        strides[i] = strides[i - 1] * bounds[i - 1]

    ip, dp = _int_coeffs(p)
    iq, dq = _int_coeffs(q)
    norm1 = sum(abs(c) for c in ip.values())
    norm_inf = max(abs(c) for c in iq.values())
    norm1_q = sum(abs(c) for c in iq.values())
    norm_inf_p = max(abs(c) for c in ip.values())
    bound = min(norm1 * norm_inf, norm1_q * norm_inf_p)
    digit_bits = bound.bit_length() + 2
    digit_bytes = (digit_bits + 7) // 8
    digit_bits = digit_bytes * 8
    half = 1 << (digit_bits - 1)
    half_chunk = half.to_bytes(digit_bytes, "little")

    a = _pack(ip, strides, digit_bytes, nslots)
    b = _pack(iq, strides, digit_bytes, nslots)
    prod = _bigmul(a, b)

    offset = int.from_bytes(half_chunk * nslots, "little")
    shifted = prod + offset
    raw = shifted.to_bytes(nslots * digit_bytes + 16, "little")

    den = Fraction(1, dp * dq)
    out = {}
    for idx in range(nslots):
        chunk = raw[idx * digit_bytes:(idx + 1) * digit_bytes]
        if chunk == half_chunk:
            continue
        c = int.from_bytes(chunk, "little") - half
        if not c:
            continue
        rem = idx
        mono = [0] * nv
        for i in range(nv - 1, 0, -1):
            mono[i], rem = divmod(rem, strides[i])
        mono[0] = rem
        out[tuple(mono)] = c * den
    return MultiPoly(nv, out)


# ---------------------------------------------------------------------------
# composition

def compose(p, components, power_caches=None):
    """Exact substitution x_i <- components[i].

    Powers of each component are cached and built by repeated squaring,
    so the large powers that dominate the cost are computed once.  A
    caches list may be passed in to share that work across calls against
    the same components.
    """
    if len(components) != p.nvars:
        raise DimensionError("need one component per ambient variable")
    if not components:
        raise DimensionError("empty ambient")
    nv = components[0].nvars
    for c in components:
        if c.nvars != nv:
            raise DimensionError("components live in different ambients")
    if power_caches is None:
        caches = [{0: MultiPoly.one(nv), 1: comp} for comp in components]
    else:
        caches = power_caches
        for i, comp in enumerate(components):
            caches[i].setdefault(0, MultiPoly.one(nv))
            caches[i].setdefault(1, comp)

    def power(i, k):
        cache = caches[i]
        got = cache.get(k)
        if got is not None:
            return got
        half = power(i, k // 2)
        res = half * half
        if k & 1:
            res = res * components[i]
        cache[k] = res
        return res

    acc = MultiPoly.zero(nv)
    for mono in sorted(p.terms, key=grevlex_key):
        coeff = p.terms[mono]
        term = MultiPoly.constant(nv, coeff)
        for i, e in enumerate(mono):
            if e:
                term = term * power(i, e)
        acc = acc + term
    return acc


# ---------------------------------------------------------------------------
# gcd

def _content_and_primitive(p, v):
    """Content (gcd of x_v-coefficient polys) and primitive part in x_v."""
    coeffs = {}
    for m, c in p.terms.items():
        key = m[v]
        rest = m[:v] + (0,) + m[v + 1:]
        bucket = coeffs.setdefault(key, {})
        bucket[rest] = bucket.get(rest, 0) + c
    polys = [MultiPoly(p.nvars, bucket) for bucket in coeffs.values()]
    content = polys[0]
    for q in polys[1:]:
        if content.is_constant():
            break
        content = _gcd_rec(content, q)
    if content.is_constant():
        content = MultiPoly.one(p.nvars)
    return content, p.exact_div(content)


def _lead_coeff_in(p, v):
    d = p.degree_in(v)
    bucket = {}
    for m, c in p.terms.items():
        if m[v] == d:
            bucket[m[:v] + (0,) + m[v + 1:]] = c
    return MultiPoly(p.nvars, bucket), d


def _prem_in(a, b, v):
    """Pseudo-remainder of a by b with respect to the variable x_v."""
    lcb, db = _lead_coeff_in(b, v)
    r = a
    e = a.degree_in(v) - db + 1
    while not r.is_zero() and r.degree_in(v) >= db:
        lcr, dr = _lead_coeff_in(r, v)
        shift = [0] * a.nvars
        shift[v] = dr - db
        r = lcb * r - lcr.mul_monomial(tuple(shift)) * b
        e -= 1
    if e > 0:
        r = r * (lcb ** e)
    return r


def _gcd_rec(p, q):
    if p.is_zero():
        return q
    if q.is_zero():
        return p
    if p.is_constant() or q.is_constant():
        return MultiPoly.one(p.nvars)
    v = max(i for i in range(p.nvars) if p.degree_in(i) > 0 or q.degree_in(i) > 0)
    dp, dq = p.degree_in(v), q.degree_in(v)
    if dp == 0:
        cont, _ = _content_and_primitive(q, v)
        return _gcd_rec(p, cont)
    if dq == 0:
        cont, _ = _content_and_primitive(p, v)
        return _gcd_rec(cont, q)
    cp, pp = _content_and_primitive(p, v)
    cq, pq = _content_and_primitive(q, v)
    cont = _gcd_rec(cp, cq)
    a, b = (pp, pq) if dp >= dq else (pq, pp)
    while not b.is_zero():
        r = _prem_in(a, b, v)
        if r.is_zero():
            a, b = b, r
            break
        _, rp = _content_and_primitive(r, v)
        a, b = b, rp
    _, a = _content_and_primitive(a, v)
    return cont * a


def normalize_primitive(p):
    """Integer coefficients with content 1, positive leading grevlex coeff."""
    if p.is_zero():
        return p
    den = math.lcm(*(c.denominator for c in p.terms.values()))
    nums = [int(c * den) for c in p.terms.values()]
    g = math.gcd(*nums)
    scale = Fraction(den, g)
    _, lead = p.leading()
    if lead < 0:
        scale = -scale
    return p.scale(scale)


def gcd_multi(p, q):
    """GCD over Q[x_1..x_d], normalized primitive with positive lead."""
    if p.is_zero() and q.is_zero():
        raise DegreeLabError("gcd of two zero polynomials")
    p._check_ambient(q)
    if p.is_zero():
        return normalize_primitive(q)
    if q.is_zero():
        return normalize_primitive(p)
    mc_p = p.monomial_content()
    mc_q = q.monomial_content()
    mc = tuple(min(a, b) for a, b in zip(mc_p, mc_q))
    p0 = p.divide_monomial(mc_p)
    q0 = q.divide_monomial(mc_q)
    core = _gcd_rec(p0, q0)
    return normalize_primitive(core.mul_monomial(mc))


def gcd_list(polys):
    nz = [p for p in polys if not p.is_zero()]
    if not nz:
        raise DegreeLabError("gcd of an all-zero family")
    acc = nz[0]
    for p in nz[1:]:
        if acc.is_constant():
            break
        acc = gcd_multi(acc, p)
    return normalize_primitive(acc)


def reduce_homogeneous_tuple(polys):
    """Divide a homogeneous equal-degree tuple by its gcd.

    Returns (reduced tuple, removed factor); idempotent, and the reduced
    tuple is again homogeneous of one common degree.
    """
    if not polys:
        raise DegreeLabError("empty tuple")
    degs = set()
    for p in polys:
        if p.is_zero():
            continue
        if not p.is_homogeneous():
            raise DegreeLabError("tuple entries must be homogeneous")
        degs.add(p.total_degree())
    if len(degs) != 1:
        raise DegreeLabError("tuple entries must share one total degree")
    g = gcd_list(polys)
    if g.is_constant():
        return tuple(polys), MultiPoly.one(polys[0].nvars)
    return tuple(p.exact_div(g) for p in polys), g


# ---------------------------------------------------------------------------
# parser

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([()+\-*/^]))")
_MAX_EXPONENT = 2 ** 31


class _Parser:
    def __init__(self, text, varnames):
        self.text = text
        self.vars = {name: i for i, name in enumerate(varnames)}
        self.nvars = len(varnames)
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if not m or m.end() == pos:
                stripped = text[pos:].lstrip()
                if not stripped:
                    break
                at = pos + len(text[pos:]) - len(stripped)
                raise ParseError(f"unexpected character {stripped[0]!r}", position=at)
            num, name, op = m.groups()
            tok_pos = m.start(1) if num else m.start(2) if name else m.start(3)
            if num:
                self.tokens.append(("num", int(num), tok_pos))
            elif name:
                self.tokens.append(("name", name, tok_pos))
            else:
                self.tokens.append(("op", op, tok_pos))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val, pos = self.next()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", position=pos)

    def parse(self):
        poly = self.expr()
        kind, val, pos = self.peek()
        if kind is not None:
            raise ParseError(f"trailing input {val!r}", position=pos)
        return poly

    def expr(self):
        kind, val, _pos = self.peek()
        negate = False
        if kind == "op" and val in "+-":
            self.next()
            negate = val == "-"
        acc = self.term()
        if negate:
            acc = -acc
        while True:
            kind, val, _pos = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                rhs = self.term()
                acc = acc - rhs if val == "-" else acc + rhs
            else:
                return acc

    def term(self):
        acc = self.factor()
        while True:
            kind, val, _pos = self.peek()
            if kind == "op" and val == "*":
                self.next()
                acc = acc * self.factor()
            else:
                return acc

    def factor(self):
        kind, val, pos = self.peek()
        if kind == "op" and val in "+-":
            self.next()
            f = self.factor()
            return -f if val == "-" else f
        base = self.atom()
        kind, val, _pos = self.peek()
        if kind == "op" and val == "^":
            self.next()
            kind2, val2, pos2 = self.next()
            if kind2 != "num":
                raise ParseError("exponent must be a nonnegative integer", position=pos2)
            if val2 > _MAX_EXPONENT:
                raise ParseError(f"exponent {val2} exceeds 2^31", position=pos2)
            return base ** val2
        return base

    def atom(self):
        kind, val, pos = self.next()
        if kind == "num":
            kind2, val2, _ = self.peek()
            if kind2 == "op" and val2 == "/":
                self.next()
                kind3, val3, pos3 = self.next()
                if kind3 != "num" or val3 == 0:
                    raise ParseError("malformed rational literal", position=pos3)
                return MultiPoly.constant(self.nvars, Fraction(val, val3))
            return MultiPoly.constant(self.nvars, val)
        if kind == "name":
            if val not in self.vars:
                raise ParseError(f"unknown variable {val!r}", position=pos)
            return MultiPoly.variable(self.nvars, self.vars[val])
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise ParseError(f"unexpected token {val!r}", position=pos)


def parse_poly(text, varnames):
    """Parse the shared polynomial grammar over the named variables."""
    return _Parser(text, list(varnames)).parse()
