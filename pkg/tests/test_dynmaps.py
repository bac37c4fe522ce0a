from fractions import Fraction

import pytest

from degreelab.degrees import check_submultiplicative
from degreelab.dynmaps import (Caps, MonomialMap, PolyMap, ProjRationalMap, compose_self,
                               degree_sequence, lambda2_via_inverse, lambda_k_monomial,
                               monomial_degree_sequence, proj_degree_sequence, proj_iterate,
                               verify_inverse)
from degreelab.errors import DegreeLabError, ResourceLimitError
from degreelab.multipoly import parse_poly
from conftest import bisect_root

VS2 = ["x", "y"]
VS3 = ["x", "y", "z"]


def henon():
    return PolyMap([parse_poly("y", VS2), parse_poly("y^2 - x", VS2)],
                   inverse=[parse_poly("x^2 - y", VS2), parse_poly("x", VS2)],
                   label="henon")


def test_compose_self_identity_and_henon():
    idm = PolyMap.identity(2)
    assert compose_self(idm, 5).components == idm.components
    h2 = compose_self(henon(), 2)
    assert [c.to_text(VS2) for c in h2.components] == \
        ["y^2 - x", "y^4 - 2*x*y^2 + x^2 - y"]


def test_fibonacci_monomial_iterates():
    f = MonomialMap([[1, 1], [1, 0]], label="fib").to_poly_map()
    f3 = compose_self(f, 3)
    assert [c.to_text(VS2) for c in f3.components] == ["x^3*y^2", "x^2*y"]


def test_henon_degrees_are_powers_of_two():
    seq = degree_sequence(henon(), 8)
    assert seq.degrees == tuple(2 ** n for n in range(9))
    assert check_submultiplicative(seq).ok


def test_linear_map_degrees_all_one():
    lin = PolyMap([parse_poly("x + y", VS2), parse_poly("y", VS2)], label="linear")
    assert degree_sequence(lin, 6).degrees == (1,) * 7


def test_monomial_degree_sequences():
    assert monomial_degree_sequence(MonomialMap([[1, 1], [1, 0]]), 5).degrees \
        == (1, 2, 3, 5, 8, 13)
    assert monomial_degree_sequence(MonomialMap([[1, 0], [0, 1]]), 4).degrees == (1,) * 5
    plastic = MonomialMap([[0, 1, 0], [0, 0, 1], [1, 1, 0]])
    seq = monomial_degree_sequence(plastic, 4)
    assert seq.degrees[1] == 2  # row sums of A are (1, 1, 2)


def test_monomial_agrees_with_generic_path():
    for rows in ([[1, 1], [1, 0]], [[2, 1], [1, 1]], [[0, 1, 0], [0, 0, 1], [1, 1, 0]]):
        mono = MonomialMap(rows)
        fast = monomial_degree_sequence(mono, 10)
        slow = degree_sequence(mono.to_poly_map(), 10,
                               Caps(max_degree=10 ** 6, max_terms=10 ** 5))
        assert fast.degrees == slow.degrees


def test_negative_exponent_matrix_rejected_for_polynomial_path():
    mono = MonomialMap([[1, -1], [1, 0]])
    with pytest.raises(DegreeLabError):
        monomial_degree_sequence(mono, 3)


def test_singular_matrix_rejected():
    with pytest.raises(DegreeLabError):
        MonomialMap([[1, 1], [1, 1]])


def test_lambda_k_monomial_values():
    fib = MonomialMap([[1, 1], [1, 0]])
    phi = bisect_root([-1, -1, 1], 1, 2)
    v1, _ = lambda_k_monomial(fib, 1, precision=96)
    assert abs(v1.to_fraction() - phi) < Fraction(1, 2 ** 90)
    v2, _ = lambda_k_monomial(fib, 2, precision=64)
    assert abs(v2.to_fraction() - 1) < Fraction(1, 2 ** 60)

    m21 = MonomialMap([[2, 1], [1, 1]])
    r = bisect_root([1, -3, 1], 2, 3)
    v, _ = lambda_k_monomial(m21, 1, precision=96)
    assert abs(v.to_fraction() - r) < Fraction(1, 2 ** 90)

    plastic = MonomialMap([[0, 1, 0], [0, 0, 1], [1, 1, 0]])
    rho = bisect_root([-1, -1, 0, 1], 1, 2)
    v1, _ = lambda_k_monomial(plastic, 1, precision=96)
    assert abs(v1.to_fraction() - rho) < Fraction(1, 2 ** 90)
    v2, _ = lambda_k_monomial(plastic, 2, precision=96)
    # complex pair of modulus sqrt(rho): lambda_2^2 = rho since det = 1
    assert abs(v2.to_fraction() ** 2 - rho) < Fraction(1, 2 ** 60)

    # dominant rational monomial map (negative exponent allowed here):
    # eigenvalues of [[2,-1],[1,1]] are a complex pair of modulus sqrt(3)
    mixed = MonomialMap([[2, -1], [1, 1]])
    v, _ = lambda_k_monomial(mixed, 1, precision=96)
    assert abs(v.to_fraction() ** 2 - 3) < Fraction(1, 2 ** 60)


def test_proj_iterate_cremona():
    sigma = ProjRationalMap([parse_poly(s, VS3) for s in ("y*z", "x*z", "x*y")],
                            label="cremona")
    assert sigma.degree() == 2
    s2 = proj_iterate(sigma, 2)
    assert s2.degree() == 1
    assert [c.to_text(VS3) for c in s2.components] == ["x", "y", "z"]


def test_proj_degrees_submultiplicative_and_shear_value():
    # sigma composed with the shear (x, y-x, z-y): second degree drops to 3
    comps = [parse_poly(s, VS3) for s in
             ("(y-x)*(z-y)", "x*(z-y)", "x*(y-x)")]
    g = ProjRationalMap(comps, label="sigmaL")
    seq = proj_degree_sequence(g, 4)
    assert seq.degrees[1] == 2
    assert seq.degrees[2] == 3  # common factor (z - y) divides out
    assert check_submultiplicative(seq).ok


def test_verify_inverse():
    assert verify_inverse(henon())
    bad = PolyMap([parse_poly("x^2", VS2), parse_poly("y", VS2)],
                  inverse=[parse_poly("x", VS2), parse_poly("y", VS2)])
    assert not verify_inverse(bad)
    lin = PolyMap([parse_poly("x + y", VS2), parse_poly("y", VS2)],
                  inverse=[parse_poly("x - y", VS2), parse_poly("y", VS2)])
    assert verify_inverse(lin)
    # symmetry: swapping map and inverse verifies too
    swapped = PolyMap(lin.inverse_components, inverse=lin.components)
    assert verify_inverse(swapped)


def test_lambda2_via_inverse_plane_automorphism():
    seq = lambda2_via_inverse(henon(), 6)
    assert seq.degrees == (1,) * 7
    assert "topological degree" in seq.note


def test_lambda2_via_inverse_triangular():
    f = PolyMap([parse_poly(s, VS3) for s in ("y", "z", "x + y*z")],
                inverse=[parse_poly(s, VS3) for s in ("z - x*y", "x", "y")],
                label="triangular")
    assert verify_inverse(f)
    seq = lambda2_via_inverse(f, 6)
    assert seq.degrees == (1, 2, 3, 5, 8, 13, 21)  # inverse grows like Fibonacci


def test_lambda2_requires_verified_inverse():
    f = PolyMap([parse_poly("y", VS2), parse_poly("y^2 - x", VS2)])
    with pytest.raises(DegreeLabError):
        lambda2_via_inverse(f, 4)


def test_resource_caps_raise_with_partial():
    tight = Caps(max_degree=8, max_terms=10 ** 6)
    with pytest.raises(ResourceLimitError) as exc:
        degree_sequence(henon(), 6, tight)
    assert exc.value.iterate == 4  # degree 16 exceeds the cap there
    assert exc.value.partial is not None
    assert exc.value.partial.truncated
    assert exc.value.partial.degrees == (1, 2, 4, 8)


def test_submultiplicativity_of_all_example_maps():
    maps = [henon(),
            MonomialMap([[1, 1], [1, 0]]).to_poly_map(),
            PolyMap([parse_poly(s, VS3) for s in ("y", "z", "x + y*z")])]
    for f in maps:
        seq = degree_sequence(f, 7)
        assert check_submultiplicative(seq).ok
