import math
import random
from fractions import Fraction

from degreelab.intmatrix import IntMatrix, char_poly, exterior_power
from degreelab.intpoly import IntPoly, sturm_chain, sturm_count
from degreelab.spectral import (count_roots_in_disk, max_root_modulus, spectral_radius,
                                sqrt_interval)
from conftest import bisect_root


def test_golden_ratio():
    value, iv = spectral_radius(IntMatrix([[1, 1], [1, 0]]), precision=128)
    phi = bisect_root([-1, -1, 1], 1, 2)
    assert iv.lower < phi < iv.upper
    assert abs(value.to_fraction() - phi) < Fraction(1, 2 ** 100)


def test_phi_squared_like_value():
    value, _ = spectral_radius(IntMatrix([[2, 1], [1, 1]]), precision=96)
    root = bisect_root([1, -3, 1], 2, 3)
    assert abs(value.to_fraction() - root) < Fraction(1, 2 ** 90)


def test_identity_and_zero():
    v, iv = spectral_radius(IntMatrix.identity(3), precision=64)
    assert v.to_fraction() == Fraction(1) or abs(v.to_fraction() - 1) < Fraction(1, 2 ** 60)
    assert iv.lower < 1 < iv.upper
    v0, iv0 = spectral_radius(IntMatrix.zero(2, 2), precision=64)
    assert v0 == 0
    assert iv0.lower < 0 < iv0.upper


def test_complex_dominant_pair():
    # ext^2 of the companion of x^3 - x - 1: dominant eigenvalues are the
    # complex pair of modulus sqrt(rho), with rho the real root of x^3-x-1
    a = IntMatrix([[0, 1, 0], [0, 0, 1], [1, 1, 0]])
    e2 = exterior_power(a, 2)
    value, iv = spectral_radius(e2, precision=128)
    rho = bisect_root([-1, -1, 0, 1], 1, 2)
    sq = value.to_fraction() ** 2
    assert abs(sq - rho) < Fraction(1, 2 ** 60)
    # the certificate interval brackets the modulus itself
    assert iv.lower < value.to_fraction() < iv.upper
    assert sturm_count(sturm_chain(iv.polynomial), iv.lower, iv.upper) == 1


def test_negative_dominant_root():
    # char poly (x+2)(x-1): dominant root is -2, modulus 2
    m = IntMatrix([[-2, 0], [0, 1]])
    value, iv = spectral_radius(m, precision=64)
    assert abs(value.to_fraction() - 2) < Fraction(1, 2 ** 60)
    assert iv.lower < 2 < iv.upper


def test_plus_minus_tie_picks_real_certificate():
    # roots +2 and -2: equal moduli, certificate still pins 2
    m = IntMatrix([[0, 2], [2, 0]])
    value, iv = spectral_radius(m, precision=64)
    assert abs(value.to_fraction() - 2) < Fraction(1, 2 ** 60)
    assert iv.lower < 2 < iv.upper


def test_root_of_unity_tie():
    # cyclic permutation matrix: eigenvalues are the cube roots of unity
    m = IntMatrix([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
    value, iv = spectral_radius(m, precision=64)
    assert abs(value.to_fraction() - 1) < Fraction(1, 2 ** 60)


def test_schur_cohn_cross_check():
    # independent count of |z| < r against float roots of random cubics
    rng = random.Random(2024)
    trials = 0
    while trials < 20:
        coeffs = [rng.randint(-5, 5) for _ in range(3)] + [rng.randint(1, 5)]
        p = IntPoly(coeffs)
        if p.degree != 3:
            continue
        import numpy as np

        roots = np.roots(list(reversed(p.coeffs)))
        for r in (Fraction(1, 2), Fraction(3, 2), Fraction(7, 3)):
            got = count_roots_in_disk(p, r)
            if got is None:
                continue  # degenerate radius, the caller would perturb
            expect = sum(1 for z in roots if abs(z) < float(r) - 1e-9)
            expect_hi = sum(1 for z in roots if abs(z) < float(r) + 1e-9)
            assert expect <= got <= expect_hi
        trials += 1


def test_schur_cohn_agrees_with_certified_radius():
    for rows in ([[1, 1], [1, 0]], [[2, 1], [1, 1]], [[0, 1, 0], [0, 0, 1], [1, 1, 0]]):
        m = IntMatrix(rows)
        p = char_poly(m)
        value, iv = spectral_radius(m, precision=64)
        n = p.degree
        below = count_roots_in_disk(p, iv.lower * Fraction(99, 100))
        above = count_roots_in_disk(p, iv.upper * Fraction(101, 100))
        if above is not None:
            assert above == n
        if below is not None:
            assert below < n


def test_log_concavity_of_monomial_spectral_radii():
    # log rho(ext^k) is concave in k, within 2^-20
    for rows in ([[1, 1], [1, 0]], [[2, 1], [1, 1]], [[0, 1, 0], [0, 0, 1], [1, 1, 0]]):
        m = IntMatrix(rows)
        d = m.rows
        logs = []
        for k in range(d + 1):
            v, _ = spectral_radius(exterior_power(m, k), precision=96)
            logs.append(math.log(float(v.value)))
        for k in range(1, d):
            assert logs[k] >= (logs[k - 1] + logs[k + 1]) / 2 - 2 ** -20


def test_sqrt_interval():
    lo, hi = sqrt_interval(Fraction(2), Fraction(1, 2 ** 50))
    assert lo * lo <= 2 <= hi * hi and hi - lo <= Fraction(1, 2 ** 50)
    assert sqrt_interval(Fraction(9, 4)) == (Fraction(3, 2), Fraction(3, 2))
    assert sqrt_interval(0) == (0, 0)


def test_max_root_modulus_multiple_roots():
    p = IntPoly([-1, 1]) * IntPoly([-1, 1]) * IntPoly([2, 1])
    value, iv = max_root_modulus(p, precision=64)
    assert abs(value.to_fraction() - 2) < Fraction(1, 2 ** 60)


def test_certified_radius_against_float_eigenvalues():
    # independent oracle: float eigenvalues on random matrices up to 5x5
    import numpy as np

    rng = random.Random(99)
    for n in (2, 3, 4, 5):
        for _ in range(8):
            m = IntMatrix([[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)])
            value, iv = spectral_radius(m, precision=64)
            expect = max(abs(z) for z in
                         np.linalg.eigvals(np.array(m.entries, dtype=float)))
            assert abs(float(value.value) - expect) < 1e-9
            assert iv.lower <= value.to_fraction() <= iv.upper
            assert sturm_count(sturm_chain(iv.polynomial), iv.lower, iv.upper) == 1


def test_exact_tie_real_and_complex_moduli():
    # x^3 - 1: the real root 1 ties with the complex pair; certificate is real
    v, iv = max_root_modulus(IntPoly([-1, 0, 0, 1]), precision=64)
    assert abs(v.to_fraction() - 1) < Fraction(1, 2 ** 60)
    # +-2 real and a complex pair of the same modulus
    p = IntPoly([-4, 0, 1]) * IntPoly([4, 0, 1])
    v, _ = max_root_modulus(p, precision=64)
    assert abs(v.to_fraction() - 2) < Fraction(1, 2 ** 60)
