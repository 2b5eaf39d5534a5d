import math
from fractions import Fraction
from itertools import product

import pytest

from maxip import core, orpoly
from maxip.core import max_ip_exact


def test_single_bit_polynomial_is_exact():
    poly = orpoly.build_or_approx_poly(1, Fraction(1, 3))
    assert poly.values == (Fraction(1), Fraction(0))
    assert poly.degree == 1


def test_weight_errors_within_budget():
    for d, eps in ((4, Fraction(1, 3)), (16, Fraction(1, 8)), (10, Fraction(1, 5))):
        poly = orpoly.build_or_approx_poly(d, eps)
        assert poly.values[0] >= 1 - eps
        assert all(v <= eps for v in poly.values[1:])
        assert all(0 <= v <= 1 for v in poly.values)


def test_degree_envelope():
    for d, eps in ((4, Fraction(1, 3)), (16, Fraction(1, 8)), (25, Fraction(1, 10))):
        poly = orpoly.build_or_approx_poly(d, eps)
        cap = math.ceil(2 * math.sqrt(d * math.log(1 / eps)))
        assert poly.degree <= min(d, max(cap, 1))


def test_eps_bounds_rejected():
    with pytest.raises(ValueError):
        orpoly.build_or_approx_poly(4, Fraction(1, 2))
    with pytest.raises(ValueError):
        orpoly.build_or_approx_poly(4, 0)


def test_fourier_single_bit():
    poly = orpoly.build_or_approx_poly(1, Fraction(1, 4))
    coeffs = orpoly.fourier_transform(poly)
    assert coeffs.coeffs == (Fraction(1, 2), Fraction(1, 2))


def test_fourier_constant_polynomial():
    poly = orpoly.SymmetricPoly(3, 0, (Fraction(1),) * 4)
    coeffs = orpoly.fourier_transform(poly)
    assert coeffs.coeffs[0] == 1
    assert all(c == 0 for c in coeffs.coeffs[1:])


def test_fourier_reconstruction_exact():
    for d in range(1, 11):
        poly = orpoly.build_or_approx_poly(d, Fraction(1, 5))
        coeffs = orpoly.fourier_transform(poly)
        for w in range(d + 1):
            assert orpoly.parity_reconstruction(coeffs, w) == poly.values[w]
        assert all(c == 0 for c in coeffs.coeffs[poly.degree + 1 :])


def test_fourier_reconstruction_literal_cube():
    d = 6
    poly = orpoly.build_or_approx_poly(d, Fraction(1, 4))
    coeffs = orpoly.fourier_transform(poly)
    subsets = [
        frozenset(s)
        for k in range(d + 1)
        for s in __import__("itertools").combinations(range(d), k)
    ]
    for x in product((0, 1), repeat=d):
        value = sum(
            coeffs.coeffs[len(s)] * (-1) ** sum(x[i] for i in s) for s in subsets
        )
        assert value == poly.values[sum(x)]


def test_compile_example_single_bit():
    poly = orpoly.build_or_approx_poly(1, Fraction(1, 3))
    coeffs = orpoly.fourier_transform(poly)
    std = orpoly.compile_standard_coeffs(coeffs, Fraction(1, 3))
    assert std.scale == 12
    assert std.hat == (6, 6)
    assert std.tilde == (12, -12)
    # the discretized polynomial is exactly 12 * (1 - z)
    assert orpoly.discretized_value(std, 0) == 12
    assert orpoly.discretized_value(std, 1) == 0


def test_compile_zero_polynomial():
    poly = orpoly.SymmetricPoly(2, 0, (Fraction(0),) * 3)
    std = orpoly.compile_standard_coeffs(orpoly.fourier_transform(poly), Fraction(1, 3))
    assert all(c == 0 for c in std.hat) and all(c == 0 for c in std.tilde)


def test_discretization_error_bound():
    for d, eps in ((4, Fraction(1, 3)), (8, Fraction(1, 5))):
        poly = orpoly.build_or_approx_poly(d, eps)
        std = orpoly.compile_standard_coeffs(orpoly.fourier_transform(poly), eps)
        for w in range(d + 1):
            approx = Fraction(orpoly.discretized_value(std, w)) / std.scale
            assert abs(approx - poly.values[w]) <= eps


def test_basis_change_identity_exhaustive():
    for d in (3, 6):
        poly = orpoly.build_or_approx_poly(d, Fraction(1, 4))
        coeffs = orpoly.fourier_transform(poly)
        std = orpoly.compile_standard_coeffs(coeffs, Fraction(1, 4))
        for z in product((0, 1), repeat=d):
            weight = sum(z)
            monomial_side = orpoly.discretized_value(std, weight)
            parity_side = sum(
                std.hat[s] * orpoly._weight_parity_count(d, weight, s)
                for s in range(std.degree + 1)
            )
            assert monomial_side == parity_side


def test_gadget_identity_all_nine_pairs():
    gadget = orpoly.find_sign_gadget()
    assert gadget.width % 2 == 0 and gadget.width <= 8
    assert gadget.scale > 0
    for a in (-1, 0, 1):
        for b in (-1, 0, 1):
            dot = sum(u * v for u, v in zip(gadget.x_map[a], gadget.y_map[b]))
            assert dot == gadget.scale * a * b
    assert all(set(v) <= {1, -1} for v in gadget.x_map.values())
    assert all(set(v) <= {1, -1} for v in gadget.y_map.values())


def test_explicit_and_implicit_dots_agree_exhaustively():
    d = 2
    eps = Fraction(1, 3)
    poly = orpoly.build_or_approx_poly(d, eps)
    std = orpoly.compile_standard_coeffs(orpoly.fourier_transform(poly), eps)
    gadget = orpoly.find_sign_gadget()
    dim = orpoly.pm1_dimension(std, gadget)
    for x in product((0, 1), repeat=d):
        lhs = orpoly.pm1_encode_lhs(x, std, gadget)
        assert len(lhs) == dim and set(lhs) <= {1, -1}
        for y in product((0, 1), repeat=d):
            rhs = orpoly.pm1_encode_rhs(y, std, gadget)
            explicit = sum(a * b for a, b in zip(lhs, rhs))
            assert explicit == orpoly.implicit_pm1_dot(x, y, std, gadget)


def test_gap_instance_thresholds_planted_and_negative():
    eps = Fraction(1, 3)
    planted = core.gen_planted_orthogonal(4, 2, 7)
    gi = orpoly.ov_to_pm1_gap(planted, eps)
    assert gi.dimension == gi.gadget.width * gi.std.coefficient_bound * gi.std.monomials
    assert gi.explicit is not None
    opt, _ = max_ip_exact(gi.explicit)
    assert opt >= gi.threshold

    negative = core.Instance(
        core.boolean_set([(1, 1), (1, 0)]), core.boolean_set([(1, 1), (1, 0)])
    )
    gi = orpoly.ov_to_pm1_gap(negative, eps)
    dots = [gi.pair_dot(i, j) for i in range(2) for j in range(2)]
    assert max(abs(v) for v in dots) <= gi.threshold * eps


def test_gap_eps_domain():
    inst = core.gen_planted_orthogonal(2, 2, 0)
    with pytest.raises(ValueError):
        orpoly.ov_to_pm1_gap(inst, Fraction(2, 3))


def test_large_d_is_implicit_only():
    inst = core.gen_planted_orthogonal(2, 3, 1)
    gi = orpoly.ov_to_pm1_gap(inst, Fraction(1, 3))
    assert gi.explicit is None
    dots = [gi.pair_dot(i, j) for i in range(2) for j in range(2)]
    assert max(dots) >= gi.threshold
