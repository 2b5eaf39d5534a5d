"""From an approximate OR-complement polynomial to sign-vector gap instances.

A symmetric polynomial close to the indicator of the all-zero input is built
from scaled Chebyshev values (exact rationals), expanded over the parity
basis, discretized to integers, and rewritten over plain monomials. Each
integer coefficient becomes a signed unary block, and a sign gadget lifts the
three-valued encoding to plus-minus-one vectors whose pairwise dot products
scale the polynomial evaluated on the coordinatewise product of the inputs.
Orthogonal source pairs therefore land above a threshold and all other pairs
near zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product

from .core import BOOLEAN, Instance, VectorSet, integer_set
from .numeric import dot


@dataclass(frozen=True)
class SymmetricPoly:
    """Values on Hamming weights 0..d of a degree-bounded symmetric polynomial.

    Approximates the complement of OR: close to one at weight zero, close to
    zero everywhere else, always inside [0, 1].
    """

    d: int
    degree: int
    values: tuple[Fraction, ...]


def _chebyshev_at(u: Fraction, degree: int) -> Fraction:
    prev, cur = Fraction(1), u
    if degree == 0:
        return prev
    for _ in range(degree - 1):
        prev, cur = cur, 2 * u * cur - prev
    return cur


def build_or_approx_poly(d: int, eps) -> SymmetricPoly:
    """Symmetric polynomial with value >= 1 - eps at weight 0 and <= eps at 1..d.

    Uses the scaled Chebyshev growth point outside [-1, 1]: weights 1..d map
    into the bounded interval and weight 0 maps outside it, so the normalized
    polynomial is 1 at zero and tiny elsewhere; an affine shift then pins the
    range inside [0, 1]. The degree satisfies ceil(2 * sqrt(d * ln(1/eps)))
    for every eps below one half, and the exact weight-0 indicator (degree d)
    is used instead whenever it is the cheaper polynomial.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    eps = Fraction(eps)
    if not 0 < eps < Fraction(1, 2):
        raise ValueError("eps must lie in (0, 1/2)")
    if d == 1:
        return SymmetricPoly(1, 1, (Fraction(1), Fraction(0)))
    half = eps / 2
    u0 = Fraction(d + 1, d - 1)
    target = 1 / half
    degree = 1
    top = _chebyshev_at(u0, 1)
    while top < target and degree < d:
        degree += 1
        top = _chebyshev_at(u0, degree)
    if top < target:
        values = (Fraction(1),) + (Fraction(0),) * d
        return SymmetricPoly(d, d, values)
    values = []
    for w in range(d + 1):
        u = Fraction(2 * (d - w), d - 1) - 1
        base = _chebyshev_at(u, degree) / top
        values.append((base + half) / (1 + 2 * half))
    poly = SymmetricPoly(d, degree, tuple(values))
    assert all(0 <= v <= 1 for v in poly.values)
    assert poly.values[0] >= 1 - eps
    assert all(v <= eps for v in poly.values[1:])
    return poly


@lru_cache(maxsize=None)
def _weight_parity_count(d: int, s: int, w: int) -> int:
    """Sum of parity characters of level s over all inputs of weight w."""
    return sum(
        (-1) ** j * math.comb(s, j) * math.comb(d - s, w - j)
        for j in range(max(0, s + w - d), min(s, w) + 1)
    )


@dataclass(frozen=True)
class FourierCoeffs:
    """Level coefficients of the parity-basis expansion; symmetric, so one
    rational per level 0..d (zero above the degree)."""

    d: int
    degree: int
    coeffs: tuple[Fraction, ...]


def fourier_transform(poly: SymmetricPoly) -> FourierCoeffs:
    """Exact parity-basis coefficients by weight-grouped summation."""
    d = poly.d
    scale = Fraction(1, 2 ** d)
    coeffs = []
    for s in range(d + 1):
        total = sum(
            poly.values[w] * _weight_parity_count(d, s, w) for w in range(d + 1)
        )
        coeffs.append(total * scale)
    out = FourierCoeffs(d, poly.degree, tuple(coeffs))
    assert all(abs(c) <= 1 for c in out.coeffs)
    return out


def parity_reconstruction(coeffs: FourierCoeffs, weight: int) -> Fraction:
    """Value of the parity expansion on any input of the given weight.

    The count of level-s parities evaluating to each sign on a fixed input of
    weight w is the (w, s)-swapped form of the summation used in the forward
    transform.
    """
    return sum(
        coeffs.coeffs[s] * _weight_parity_count(coeffs.d, weight, s)
        for s in range(coeffs.d + 1)
    )


@dataclass(frozen=True)
class StandardCoeffs:
    """Integer coefficients over monomials after discretization.

    hat[s] floors each parity coefficient times scale = 2 * M / eps; tilde[t]
    rewrites the expansion over monomial blocks (tilde depends only on the
    monomial size). coefficient_bound caps every |tilde| and fixes the unary
    block width of the sign encoding.
    """

    d: int
    degree: int
    monomials: int
    scale: Fraction
    hat: tuple[int, ...]
    tilde: tuple[int, ...]
    coefficient_bound: int


def compile_standard_coeffs(coeffs: FourierCoeffs, eps) -> StandardCoeffs:
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    d, degree = coeffs.d, coeffs.degree
    assert all(c == 0 for c in coeffs.coeffs[degree + 1 :])
    m_count = sum(math.comb(d, k) for k in range(degree + 1))
    scale = 2 * m_count / eps
    hat = tuple(
        math.floor(coeffs.coeffs[s] * scale) for s in range(degree + 1)
    )
    tilde = []
    for t in range(degree + 1):
        total = sum(
            math.comb(d - t, s - t) * hat[s] for s in range(t, degree + 1)
        )
        tilde.append((-2) ** t * total)
    bound_f = Fraction(m_count * m_count * 2 ** degree * 2) / eps
    bound = math.ceil(bound_f)
    out = StandardCoeffs(d, degree, m_count, scale, hat, tuple(tilde), bound)
    assert all(abs(c) <= bound for c in out.tilde)
    return out


def discretized_value(std: StandardCoeffs, weight: int) -> int:
    """Integer polynomial value on any input of the given weight: the monomial
    expansion collapses to binomial counts of monomials inside the support."""
    return sum(
        std.tilde[t] * math.comb(weight, t) for t in range(std.degree + 1)
    )


@dataclass(frozen=True)
class SignGadget:
    """Width, scale, and the two trit-to-sign maps with dot(x_map[a], y_map[b])
    equal to scale * a * b for all nine trit pairs, the zero pairs included."""

    width: int
    scale: int
    x_map: dict
    y_map: dict


def _vec_dot(u, v):
    return sum(a * b for a, b in zip(u, v))


@lru_cache(maxsize=1)
def find_sign_gadget(max_width: int = 8) -> SignGadget:
    """Exhaustive search over even widths for a sound sign gadget.

    Coordinatewise sign flips applied to both maps preserve all dot products,
    so the x-image of 1 can be fixed to all ones without loss of generality.
    The two-wide candidate fails on the (0, 0) pair, so the search is the
    oracle for the minimal sound width.
    """
    for g in range(2, max_width + 1, 2):
        vectors = list(product((1, -1), repeat=g))
        x_one = (1,) * g
        for y_one in vectors:
            lam = _vec_dot(x_one, y_one)
            if lam <= 0:
                continue
            for y_minus in vectors:
                if _vec_dot(x_one, y_minus) != -lam:
                    continue
                for x_minus in vectors:
                    if (
                        _vec_dot(x_minus, y_one) != -lam
                        or _vec_dot(x_minus, y_minus) != lam
                    ):
                        continue
                    for x_zero in vectors:
                        if _vec_dot(x_zero, y_one) or _vec_dot(x_zero, y_minus):
                            continue
                        for y_zero in vectors:
                            if (
                                _vec_dot(y_zero, x_one)
                                or _vec_dot(y_zero, x_minus)
                                or _vec_dot(x_zero, y_zero)
                            ):
                                continue
                            return SignGadget(
                                g,
                                lam,
                                {1: x_one, 0: x_zero, -1: x_minus},
                                {1: y_one, 0: y_zero, -1: y_minus},
                            )
    raise RuntimeError(f"no sound sign gadget of width <= {max_width} exists")


def _monomial_blocks(d: int, degree: int):
    subsets = []
    for k in range(degree + 1):
        subsets.extend(combinations(range(d), k))
    return subsets


def _trit_blocks_x(x, std: StandardCoeffs):
    """Three-valued encoding: per monomial, a signed unary block of the tilde
    coefficient, zeroed unless the monomial lies inside the support of x."""
    blocks = []
    for subset in _monomial_blocks(std.d, std.degree):
        coeff = std.tilde[len(subset)]
        active = all(x[i] for i in subset)
        sign = (1 if coeff > 0 else -1) if (active and coeff) else 0
        fill = abs(coeff) if active else 0
        blocks.append((sign, fill))
    return blocks


def _trit_blocks_y(y, std: StandardCoeffs):
    blocks = []
    for subset in _monomial_blocks(std.d, std.degree):
        active = all(y[i] for i in subset)
        blocks.append((1 if active else 0, std.coefficient_bound if active else 0))
    return blocks


def pm1_dimension(std: StandardCoeffs, gadget: SignGadget | None = None) -> int:
    gadget = gadget or find_sign_gadget()
    return gadget.width * std.coefficient_bound * std.monomials


def pm1_encode_lhs(x, std: StandardCoeffs, gadget: SignGadget | None = None):
    """Explicit sign vector for an A-side row."""
    gadget = gadget or find_sign_gadget()
    out = []
    for sign, fill in _trit_blocks_x(x, std):
        for pos in range(std.coefficient_bound):
            trit = sign if pos < fill else 0
            out.extend(gadget.x_map[trit])
    return tuple(out)


def pm1_encode_rhs(y, std: StandardCoeffs, gadget: SignGadget | None = None):
    """Explicit sign vector for a B-side row."""
    gadget = gadget or find_sign_gadget()
    out = []
    for sign, fill in _trit_blocks_y(y, std):
        for pos in range(std.coefficient_bound):
            trit = sign if pos < fill else 0
            out.extend(gadget.y_map[trit])
    return tuple(out)


def implicit_pm1_dot(x, y, std: StandardCoeffs, gadget: SignGadget | None = None) -> int:
    """Dot product of the encodings without materializing them: the gadget
    scale times the discretized polynomial on the coordinatewise product."""
    gadget = gadget or find_sign_gadget()
    weight = sum(a & b for a, b in zip(x, y))
    return gadget.scale * discretized_value(std, weight)


@dataclass(frozen=True)
class PM1GapInstance:
    """Sign-vector gap instance, explicit when the dimension budget allows."""

    dimension: int
    threshold: Fraction
    ratio: Fraction
    eps: Fraction
    source: Instance
    std: StandardCoeffs
    gadget: SignGadget
    explicit: Instance | None

    def pair_dot(self, i: int, j: int) -> int:
        return implicit_pm1_dot(
            self.source.a.rows[i], self.source.b.rows[j], self.std, self.gadget
        )


def ov_to_pm1_gap(
    instance: Instance, eps, explicit_budget: int = 100_000
) -> PM1GapInstance:
    """Reduce a boolean orthogonality instance to one sign-vector gap instance.

    With internal accuracy a third of eps: an orthogonal pair forces some dot
    product to at least threshold = scale * gadget-scale * (1 - two thirds
    eps); with no orthogonal pair every |dot| stays within threshold * eps.
    The stated bound requires eps <= 1/2. Explicit vectors are materialized
    only when the dimension fits the budget; the implicit evaluator is always
    available.
    """
    if instance.kind != BOOLEAN:
        raise ValueError("expects a boolean instance")
    eps = Fraction(eps)
    if not 0 < eps <= Fraction(1, 2):
        raise ValueError("eps must lie in (0, 1/2]")
    inner = eps / 3
    poly = build_or_approx_poly(instance.d, inner)
    coeffs = fourier_transform(poly)
    std = compile_standard_coeffs(coeffs, inner)
    gadget = find_sign_gadget()
    dim = pm1_dimension(std, gadget)
    threshold = gadget.scale * std.scale * (1 - 2 * inner)
    explicit = None
    if dim * (instance.a.n + instance.b.n) <= explicit_budget * 4 and dim <= explicit_budget:
        rows_a = [pm1_encode_lhs(row, std, gadget) for row in instance.a.rows]
        rows_b = [pm1_encode_rhs(row, std, gadget) for row in instance.b.rows]
        explicit = Instance(integer_set(rows_a, d=dim), integer_set(rows_b, d=dim))
    return PM1GapInstance(
        dimension=dim,
        threshold=threshold,
        ratio=1 / eps,
        eps=eps,
        source=instance,
        std=std,
        gadget=gadget,
        explicit=explicit,
    )
