"""Self-maps in three flavours and their exact iteration.

* PolyMap: polynomial endomorphism of affine d-space, optionally with a
  declared inverse (verified before anything relies on it).
* ProjRationalMap: homogeneous tuple on projective d-space, kept
  GCD-reduced so its common degree is the actual first degree.
* MonomialMap: an integer exponent matrix A, row i giving the exponents
  of component i; iteration is matrix powering.

Degrees of polynomial maps are max component total degrees of the
literally expanded iterate (the pullback of a generic hyperplane does
not cancel), cross-checkable against the projective pipeline.
"""

from __future__ import annotations

from dataclasses import dataclass

from .degrees import DegreeSequence
from .errors import DegreeLabError, DimensionError, ResourceLimitError
from .intmatrix import IntMatrix, exterior_power
from .multipoly import MultiPoly, compose, reduce_homogeneous_tuple
from .spectral import spectral_radius


@dataclass(frozen=True)
class Caps:
    """Resource limits for iterate expansion."""

    max_degree: int = 4096
    max_terms: int = 2_000_000


DEFAULT_CAPS = Caps()


class PolyMap:
    """Polynomial self-map of affine d-space."""

    def __init__(self, components, inverse=None, label=""):
        components = tuple(components)
        if not components:
            raise DimensionError("a map needs at least one component")
        d = len(components)
        for c in components:
            if c.nvars != d:
                raise DimensionError("components must live in d variables")
            if c.is_zero():
                raise DegreeLabError("zero component makes the map non-dominant")
        self.dimension = d
        self.components = components
        self.inverse_components = tuple(inverse) if inverse is not None else None
        if self.inverse_components is not None:
            for c in self.inverse_components:
                if c.nvars != d:
                    raise DimensionError("inverse components must live in d variables")
        self.label = label
        self._inverse_checked = None

    @classmethod
    def identity(cls, d, label="identity"):
        return cls(tuple(MultiPoly.variable(d, i) for i in range(d)), label=label)

    def degree(self):
        return max(int(c.total_degree()) for c in self.components)

    def inverse_map(self):
        if self.inverse_components is None:
            raise DegreeLabError("no declared inverse")
        if not verify_inverse(self):
            raise DegreeLabError("declared inverse failed verification")
        return PolyMap(self.inverse_components, inverse=self.components,
                       label=f"{self.label}^-1" if self.label else "inverse")

    def __repr__(self):
        return f"PolyMap(d={self.dimension}, label={self.label!r})"


class MonomialMap:
    """Monomial self-map encoded by its exponent matrix (rows = components)."""

    def __init__(self, matrix, label=""):
        matrix = matrix if isinstance(matrix, IntMatrix) else IntMatrix(matrix)
        matrix.require_square()
        from .intmatrix import det

        if det(matrix) == 0:
            raise DegreeLabError("exponent matrix is singular: the map is not dominant")
        self.matrix = matrix
        self.dimension = matrix.rows
        self.label = label

    def is_polynomial(self):
        return self.matrix.is_nonnegative()

    def to_poly_map(self):
        if not self.is_polynomial():
            raise DegreeLabError(
                "negative exponents: not a polynomial map, use the rational pipeline")
        d = self.dimension
        comps = []
        for i in range(d):
            comps.append(MultiPoly.monomial(d, tuple(self.matrix.entries[i])))
        return PolyMap(tuple(comps), label=self.label or "monomial")

    def __repr__(self):
        return f"MonomialMap({self.matrix!r})"


class ProjRationalMap:
    """Rational self-map of P^d as a reduced homogeneous tuple."""

    def __init__(self, components, label=""):
        components = tuple(components)
        if len(components) < 2:
            raise DimensionError("projective map needs at least two components")
        nv = components[0].nvars
        if nv != len(components):
            raise DimensionError("need d+1 components in d+1 homogeneous variables")
        for c in components:
            if c.nvars != nv:
                raise DimensionError("components must share the ambient")
            if c.is_zero():
                raise DegreeLabError("zero component in a projective map")
        reduced, removed = reduce_homogeneous_tuple(components)
        self.components = reduced
        self.removed_at_construction = removed
        self.dimension = nv - 1
        self.label = label

    @classmethod
    def identity(cls, d, label="identity"):
        return cls(tuple(MultiPoly.variable(d + 1, i) for i in range(d + 1)), label=label)

    def degree(self):
        return int(self.components[0].total_degree())

    def __repr__(self):
        return f"ProjRationalMap(d={self.dimension}, deg={self.degree()}, label={self.label!r})"


def _check_caps(components, caps, iterate):
    deg = max(int(c.total_degree()) for c in components)
    terms = sum(c.term_count() for c in components)
    if deg > caps.max_degree:
        raise ResourceLimitError(
            f"degree {deg} over cap {caps.max_degree}", iterate=iterate)
    if terms > caps.max_terms:
        raise ResourceLimitError(
            f"{terms} terms over cap {caps.max_terms}", iterate=iterate)


def compose_self(f, n, caps=DEFAULT_CAPS):
    """The literal n-fold composition of f, one new factor per step.

    The iterate is built incrementally (f^n from f^(n-1)), never by
    repeated squaring of maps, so peak memory holds one big iterate.
    """
    if n < 0:
        raise DegreeLabError("negative iterates need a declared inverse")
    if n == 0:
        return PolyMap.identity(f.dimension)
    cur = f.components
    for k in range(2, n + 1):
        try:
            cur = tuple(compose(c, cur) for c in f.components)
        except ResourceLimitError as exc:
            raise ResourceLimitError(str(exc), iterate=k) from exc
        _check_caps(cur, caps, k)
    return PolyMap(cur, label=f"{f.label}^{n}" if f.label else f"f^{n}")


def iterate_components(f, n_max, caps=DEFAULT_CAPS):
    """Yield (n, components of f^n) for n = 1..n_max, sharing the work."""
    cur = f.components
    yield 1, cur
    for k in range(2, n_max + 1):
        try:
            cur = tuple(compose(c, cur) for c in f.components)
        except ResourceLimitError as exc:
            raise ResourceLimitError(str(exc), iterate=k) from exc
        _check_caps(cur, caps, k)
        yield k, cur


def degree_sequence(f, n_max, caps=DEFAULT_CAPS):
    """Exact d_0..d_N with d_n = max_i deg (f^n)_i.

    On a resource cap the error carries the partial sequence, flagged
    truncated.
    """
    degs = [1]
    try:
        for _n, comps in iterate_components(f, n_max, caps):
            degs.append(max(int(c.total_degree()) for c in comps))
    except ResourceLimitError as exc:
        partial = DegreeSequence(tuple(degs), source=f.label or "polymap", truncated=True)
        raise ResourceLimitError(str(exc), iterate=exc.iterate, partial=partial) from exc
    return DegreeSequence(tuple(degs), source=f.label or "polymap")


def monomial_degree_sequence(mono, n_max):
    """d_n = max row sum of A^n, the exact fast path for polynomial
    monomial maps; agrees with degree_sequence of the induced PolyMap."""
    if not mono.is_polynomial():
        raise DegreeLabError(
            "negative exponents: use the generic rational-map path instead")
    a = mono.matrix
    degs = [1]
    power = IntMatrix.identity(a.rows)
    for _ in range(n_max):
        power = power @ a
        degs.append(max(power.row_sums()))
    return DegreeSequence(tuple(degs), source=mono.label or "monomial")


def lambda_k_monomial(mono, k, precision=256):
    """Certified lambda_k of a monomial map: the spectral radius of the
    k-th exterior power of its exponent matrix."""
    d = mono.dimension
    if not 0 <= k <= d:
        raise DimensionError(f"k = {k} out of range 0..{d}")
    return spectral_radius(exterior_power(mono.matrix, k), precision=precision)


def proj_iterate(fproj, n, caps=DEFAULT_CAPS):
    """Componentwise composition followed by GCD reduction.

    The common degree of the result is the first degree of F^n on P^d.
    """
    if n < 0:
        raise DegreeLabError("negative projective iterates not supported")
    if n == 0:
        return ProjRationalMap.identity(fproj.dimension)
    cur = fproj.components
    for k in range(2, n + 1):
        try:
            cur = tuple(compose(c, cur) for c in fproj.components)
        except ResourceLimitError as exc:
            raise ResourceLimitError(str(exc), iterate=k) from exc
        cur, _removed = reduce_homogeneous_tuple(cur)
        _check_caps(cur, caps, k)
    return ProjRationalMap(cur, label=f"{fproj.label}^{n}" if fproj.label else f"F^{n}")


def proj_degree_sequence(fproj, n_max, caps=DEFAULT_CAPS):
    degs = [1]
    cur = fproj.components
    degs.append(fproj.degree())
    for k in range(2, n_max + 1):
        cur = tuple(compose(c, cur) for c in fproj.components)
        cur, _removed = reduce_homogeneous_tuple(cur)
        _check_caps(cur, caps, k)
        degs.append(int(cur[0].total_degree()))
    return DegreeSequence(tuple(degs), source=fproj.label or "proj")


def verify_inverse(f):
    """True iff the declared inverse composes to the identity both ways."""
    if f.inverse_components is None:
        return False
    if f._inverse_checked is not None:
        return f._inverse_checked
    d = f.dimension
    idty = tuple(MultiPoly.variable(d, i) for i in range(d))
    try:
        fg = tuple(compose(c, f.inverse_components) for c in f.components)
        gf = tuple(compose(c, f.components) for c in f.inverse_components)
    except ResourceLimitError:
        f._inverse_checked = False
        return False
    ok = fg == idty and gf == idty
    f._inverse_checked = ok
    return ok


def lambda2_via_inverse(f, n_max, caps=DEFAULT_CAPS):
    """Degree sequence feeding lambda_2 estimates for automorphisms.

    For a plane automorphism the second degree is the topological degree
    1, so the constant sequence is returned with a note; in dimension 3
    lambda_2(f) = lambda_1(f^-1) and the inverse's degree sequence is
    the data.
    """
    if f.dimension not in (2, 3):
        raise DegreeLabError("inverse route implemented for dimensions 2 and 3 only")
    if not verify_inverse(f):
        raise DegreeLabError("a verified inverse is required")
    if f.dimension == 2:
        return DegreeSequence((1,) * (n_max + 1), source=f.label or "automorphism",
                              note="plane automorphism: lambda_2 is the topological degree 1")
    g = f.inverse_map()
    seq = degree_sequence(g, n_max, caps)
    return DegreeSequence(seq.degrees, source=seq.source,
                          note="degrees of the inverse; lambda_2(f) = lambda_1(f^-1)")
