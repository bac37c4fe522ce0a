"""Finite-rank models of the Picard-Manin space of a surface.

Classes are rational vectors in the basis (e_0; e_1, ..., e_k) with the
intersection form diag(1, -1, ..., -1).  Everything is exact rational
arithmetic; the one square root (in the Cauchy-Schwarz style bound) is
handled through certified rational brackets with an exact-square
tie-break.

The nef pool is constructive: nonnegative rational combinations of e_0
and the pullback classes (e_0 - e_i).  Membership is an exact linear
test (all exceptional coordinates <= 0 and their total absolute mass at
most the e_0 coordinate), which keeps every "big and nef" hypothesis
certifiable without any effective-cone computation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .bigfloat import BigFloat
from .degrees import DegreeSequence
from .errors import ConvergenceError, DegreeLabError, DimensionError, InvariantError
from .spectral import sqrt_interval


class PMClass:
    """Rational class a_0 e_0 + a_1 e_1 + ... + a_k e_k."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        coords = tuple(Fraction(c) for c in coords)
        if not coords:
            raise DimensionError("a class needs at least the e_0 coordinate")
        self.coords = coords

    @classmethod
    def e(cls, rank, i):
        v = [Fraction(0)] * rank
        v[i] = Fraction(1)
        return cls(v)

    @property
    def rank(self):
        return len(self.coords)

    def zero_extend(self, rank):
        if rank < self.rank:
            raise DimensionError("cannot shrink a class")
        return PMClass(self.coords + (Fraction(0),) * (rank - self.rank))

    def extend_with(self, extra):
        """Append new exceptional coordinates (a model refinement)."""
        return PMClass(self.coords + tuple(Fraction(t) for t in extra))

    def __add__(self, other):
        r = max(self.rank, other.rank)
        a, b = self.zero_extend(r), other.zero_extend(r)
        return PMClass(tuple(x + y for x, y in zip(a.coords, b.coords)))

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        return PMClass(tuple(c * x for x in self.coords))

    def is_zero(self):
        return all(c == 0 for c in self.coords)

    def __eq__(self, other):
        r = max(self.rank, other.rank)
        return self.zero_extend(r).coords == other.zero_extend(r).coords

    def __repr__(self):
        return f"PMClass({self.coords})"


def intersect(a, b):
    """a_0 b_0 - sum a_i b_i, lower-rank classes zero-extended."""
    r = max(a.rank, b.rank)
    x, y = a.zero_extend(r).coords, b.zero_extend(r).coords
    return x[0] * y[0] - sum(u * v for u, v in zip(x[1:], y[1:]))


def self_intersection(a):
    return intersect(a, a)


@dataclass(frozen=True)
class QBarReport:
    """Value of the positive form 2 (a.w)^2/(w.w) - (a.a) with its
    orthogonal-decomposition witness."""

    omega: PMClass
    alpha: PMClass
    value: Fraction
    projection_part: Fraction  # (a.w)^2 / (w.w)
    orthogonal_part: Fraction  # -(orthogonal component)^2

    def __post_init__(self):
        if self.value != self.projection_part + self.orthogonal_part:
            raise InvariantError("decomposition witness does not add up")


def qbar(omega, alpha):
    """Exact evaluation with the decomposition witness."""
    w2 = self_intersection(omega)
    if w2 <= 0:
        raise DegreeLabError("the reference class must have positive self-intersection")
    aw = intersect(alpha, omega)
    value = 2 * aw * aw / w2 - self_intersection(alpha)
    proj = aw * aw / w2
    ortho = alpha - omega.scale(Fraction(aw, w2))
    return QBarReport(omega, alpha, value, proj, -self_intersection(ortho))


def check_hodge_lower_bound(omega, alpha):
    """q(alpha) >= (alpha.omega)^2 / (omega.omega), exactly."""
    rep = qbar(omega, alpha)
    return rep.value >= rep.projection_part


# -- the constructive nef pool ------------------------------------------

def is_pool_nef(alpha):
    """Membership in the cone spanned by e_0 and the (e_0 - e_i).

    alpha = a e_0 + sum b_i (e_0 - e_i) with a, b_i >= 0 iff every
    exceptional coordinate is <= 0 and their total mass is at most the
    e_0 coefficient.
    """
    c = alpha.coords
    if any(x > 0 for x in c[1:]):
        return False
    return c[0] + sum(c[1:]) >= 0


def is_pool_big_nef(alpha):
    return is_pool_nef(alpha) and self_intersection(alpha) > 0


def require_pool_nef(alpha, name="class", big=False):
    if not is_pool_nef(alpha):
        raise DegreeLabError(f"{name} is not certified nef by the pool construction")
    if big and not self_intersection(alpha) > 0:
        raise DegreeLabError(f"{name} is not big (self-intersection <= 0)")


class NefPool:
    """Seeded sampler of certified nef (optionally big) classes."""

    def __init__(self, rank, seed=0):
        if rank < 2:
            raise DimensionError("pool needs rank >= 2")
        self.rank = rank
        self.rng = random.Random(seed)

    def _coeff(self):
        return Fraction(self.rng.randint(0, 8), self.rng.choice((1, 1, 2, 3)))

    def sample(self, big=True):
        while True:
            a = self._coeff()
            bs = [self._coeff() if self.rng.random() < 0.6 else Fraction(0)
                  for _ in range(self.rank - 1)]
            coords = [a + sum(bs)] + [-b for b in bs]
            alpha = PMClass(coords)
            if alpha.is_zero():
                continue
            if big and not self_intersection(alpha) > 0:
                continue
            return alpha

    def sample_class(self, spread=6):
        """Arbitrary rational class (not nef), for fuzzing inequalities."""
        coords = [Fraction(self.rng.randint(-spread, spread),
                           self.rng.choice((1, 1, 2, 3)))
                  for _ in range(self.rank)]
        alpha = PMClass(coords)
        return alpha if not alpha.is_zero() else self.sample_class(spread)


@dataclass(frozen=True)
class NormComparisonReport:
    holds: bool
    bound: Fraction  # 4 (w1.w2)^2 / ((w1.w1)(w2.w2))
    lhs: Fraction  # q_{w1}(alpha)
    rhs_scaled: Fraction  # bound * q_{w2}(alpha)


def check_norm_comparison(omega1, omega2, alpha):
    """Comparison of the two norms induced by big nef classes."""
    require_pool_nef(omega1, "omega1", big=True)
    require_pool_nef(omega2, "omega2", big=True)
    w11 = self_intersection(omega1)
    w22 = self_intersection(omega2)
    w12 = intersect(omega1, omega2)
    bound = 4 * w12 * w12 / (w11 * w22)
    lhs = qbar(omega1, alpha).value
    rhs = bound * qbar(omega2, alpha).value
    return NormComparisonReport(lhs <= rhs, bound, lhs, rhs)


def check_pairing_bound(omega, alpha, beta):
    """|(a.b)| <= 3 sqrt(q(a)) sqrt(q(b)) for a unit-volume reference.

    Decided by certified rational square-root brackets, with the exact
    comparison of squares as the tie-break when the brackets touch.
    """
    if self_intersection(omega) != 1:
        raise DegreeLabError("reference class must have self-intersection 1; "
                             "rescale q by its 0-homogeneity first")
    ab = abs(intersect(alpha, beta))
    qa = qbar(omega, alpha).value
    qb = qbar(omega, beta).value
    width = Fraction(1, 2 ** 40)
    for _ in range(3):
        lo_a, hi_a = sqrt_interval(qa, width)
        lo_b, hi_b = sqrt_interval(qb, width)
        if ab <= 3 * lo_a * lo_b:
            return True
        if ab > 3 * hi_a * hi_b:
            return False
        width /= 2 ** 20
    return ab * ab <= 9 * qa * qb


def truncation_monotonicity(alpha, extension):
    """-(alpha_ext^2) >= -(alpha^2) when new exceptional coordinates appear."""
    ext = alpha.extend_with(extension)
    return -self_intersection(ext) >= -self_intersection(alpha)


def siu_nef_check(omega, alpha, beta):
    """(a.b) <= 2 (a.w)(w.b)/(w.w) for pool-certified nef classes.

    The constant 2 is the surface case of the codimension-1 comparison
    (the constant may be taken to be the dimension).
    """
    require_pool_nef(omega, "omega", big=True)
    require_pool_nef(alpha, "alpha")
    require_pool_nef(beta, "beta")
    lhs = intersect(alpha, beta)
    rhs = 2 * intersect(alpha, omega) * intersect(omega, beta) / self_intersection(omega)
    return lhs <= rhs


# -- operators ------------------------------------------------------------

class PMOperator:
    """Rational matrix acting on PMClass vectors (columns are images)."""

    __slots__ = ("matrix", "label")

    def __init__(self, matrix, label="", check_form=False):
        rows = tuple(tuple(Fraction(x) for x in row) for row in matrix)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise DimensionError("operator matrix must be square")
        self.matrix = rows
        self.label = label
        if check_form and not self.preserves_form():
            raise InvariantError(f"operator {label!r} does not preserve the form")

    @property
    def rank(self):
        return len(self.matrix)

    def apply(self, cls):
        v = cls.zero_extend(self.rank).coords
        return PMClass(tuple(sum(row[j] * v[j] for j in range(self.rank))
                             for row in self.matrix))

    def compose(self, other):
        if self.rank != other.rank:
            raise DimensionError("rank mismatch")
        n = self.rank
        bt = tuple(zip(*other.matrix))
        prod = tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in bt)
                     for row in self.matrix)
        return PMOperator(prod, label=f"{self.label}*{other.label}")

    def power(self, n):
        acc = PMOperator.identity(self.rank)
        base = self
        while n:
            if n & 1:
                acc = acc.compose(base)
            n >>= 1
            if n:
                base = base.compose(base)
        return acc

    @classmethod
    def identity(cls, rank, label="id"):
        return cls(tuple(tuple(1 if i == j else 0 for j in range(rank))
                         for i in range(rank)), label=label)

    def preserves_form(self):
        """Exact check of M^T G M = G for G = diag(1, -1, ..., -1)."""
        n = self.rank
        m = self.matrix
        for i in range(n):
            for j in range(i, n):
                # (col_i . col_j) under G
                v = m[0][i] * m[0][j] - sum(m[k][i] * m[k][j] for k in range(1, n))
                want = (1 if i == 0 else -1) if i == j else 0
                if v != want:
                    return False
        return True

    def __eq__(self, other):
        return isinstance(other, PMOperator) and self.matrix == other.matrix

    def __repr__(self):
        return f"PMOperator({self.label!r}, rank={self.rank})"


def cremona_operator(rank=4):
    """Pullback of the standard quadratic involution on (e_0, e_1, e_2, e_3).

    e_0 -> 2e_0 - e_1 - e_2 - e_3 and e_i -> e_0 - e_j - e_l; identity on
    any further coordinates.  Satisfies M^2 = I and preserves the form.
    """
    if rank < 4:
        raise DimensionError("the quadratic involution needs rank >= 4")
    cols = {
        0: (2, -1, -1, -1),
        1: (1, 0, -1, -1),
        2: (1, -1, 0, -1),
        3: (1, -1, -1, 0),
    }
    m = [[Fraction(0)] * rank for _ in range(rank)]
    for j, col in cols.items():
        for i, v in enumerate(col):
            m[i][j] = Fraction(v)
    for j in range(4, rank):
        m[j][j] = Fraction(1)
    op = PMOperator(m, label="cremona", check_form=True)
    if op.compose(op) != PMOperator.identity(rank):
        raise InvariantError("the quadratic involution must square to the identity")
    return op


def exceptional_permutation(rank, perm, label="perm"):
    """Operator permuting the exceptional classes: e_i -> e_perm[i] (1-based
    indices into the exceptional part), identity on e_0."""
    m = [[Fraction(0)] * rank for _ in range(rank)]
    m[0][0] = Fraction(1)
    for src_pos, dst in enumerate(perm, start=1):
        m[dst][src_pos] = Fraction(1)
    for j in range(len(perm) + 1, rank):
        m[j][j] = Fraction(1)
    return PMOperator(m, label=label, check_form=True)


def pell_operator(rank=4):
    """Hyperbolic isometry with spectral radius 3 + 2*sqrt(2).

    Block [[3,2,2],[2,1,2],[2,2,1]] on (e_0, e_1, e_2) preserves
    x^2 - y^2 - z^2 exactly; extended by the identity.  Its dominant
    eigenvalue is simple and the two other eigenvalues are -1 and the
    reciprocal, so power iterates converge and the limit class is
    isotropic.
    """
    if rank < 3:
        raise DimensionError("need rank >= 3")
    block = ((3, 2, 2), (2, 1, 2), (2, 2, 1))
    m = [[Fraction(0)] * rank for _ in range(rank)]
    for i in range(3):
        for j in range(3):
            m[i][j] = Fraction(block[i][j])
    for j in range(3, rank):
        m[j][j] = Fraction(1)
    return PMOperator(m, label="pell", check_form=True)


def pm_degree_sequence(op, n_max):
    """d_n = (M^n e_0 . e_0), exact; integral operators give integers."""
    e0 = PMClass.e(op.rank, 0)
    v = e0
    degs = [1]
    for _ in range(n_max):
        v = op.apply(v)
        d = intersect(v, e0)
        if d.denominator != 1:
            raise DegreeLabError("non-integral degree: the declared model is inconsistent")
        degs.append(int(d))
    return DegreeSequence(tuple(degs), source=op.label or "pm-operator")


@dataclass(frozen=True)
class EigenclassResult:
    theta: PMClass | None
    lam: BigFloat | None
    self_intersections: tuple  # (theta_n . theta_n) as Fractions
    converged: bool
    flag: str = ""


def pm_eigenclass(op, iters=200, tol=Fraction(1, 10 ** 8)):
    """Normalized power iterates theta_n = M^n e_0 / (M^n e_0 . e_0).

    Under a spectral gap the self-intersections (theta_n . theta_n) must
    decay to zero: the limit eigenclass is isotropic.  Periodic or
    non-expanding operators are flagged rather than forced.
    """
    e0 = PMClass.e(op.rank, 0)
    v = e0
    trace = []
    lam_prev = None
    d_prev = Fraction(1)
    theta = None
    for n in range(1, iters + 1):
        v = op.apply(v)
        d = intersect(v, e0)
        if d <= 0:
            return EigenclassResult(None, None, tuple(trace), False,
                                    flag="degree sequence left the positive cone")
        theta = v.scale(Fraction(1, d))
        trace.append(intersect(theta, theta))
        lam = d / d_prev
        d_prev = d
        if n >= 3 and lam_prev is not None:
            if abs(lam - lam_prev) <= tol * lam and abs(trace[-1]) <= tol:
                if lam <= 1 + tol:
                    return EigenclassResult(None, None, tuple(trace), False,
                                            flag="spectral radius is not > 1")
                return EigenclassResult(theta, BigFloat(lam, 64), tuple(trace), True)
        lam_prev = lam
    if lam_prev is not None and lam_prev <= 1 + tol:
        return EigenclassResult(None, None, tuple(trace), False,
                                flag="spectral radius is not > 1 (periodic or bounded)")
    raise ConvergenceError(f"no eigenclass within {iters} iterations", last=trace)


@dataclass(frozen=True)
class DualPathReport:
    operator_degrees: tuple
    map_degrees: tuple
    agree: bool

    @property
    def first_mismatch(self):
        for i, (a, b) in enumerate(zip(self.operator_degrees, self.map_degrees)):
            if a != b:
                return i
        return None


def dual_path_check(op, proj_map, n_max=4, caps=None):
    """Degrees from the declared operator against the polynomial pipeline.

    This is the empirical stability gate: a declared composite is only
    trusted when (M^n e_0 . e_0) matches the reduced projective degrees
    on the computed range.
    """
    from .dynmaps import DEFAULT_CAPS, proj_degree_sequence

    pm = pm_degree_sequence(op, n_max)
    pd = proj_degree_sequence(proj_map, n_max, caps or DEFAULT_CAPS)
    agree = pm.degrees[:n_max + 1] == pd.degrees[:n_max + 1]
    return DualPathReport(pm.degrees[:n_max + 1], pd.degrees[:n_max + 1], agree)
