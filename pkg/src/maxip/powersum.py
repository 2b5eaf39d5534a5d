"""Deterministic multiplicative approximation of Max-IP.

The r-th powers of all pairwise dot products inside a pair of row blocks are
summed with one vector product in monomial space, and the r-th root of the
block maximum brackets the true optimum within the requested ratio. All
arithmetic is exact: the matrix product runs in int64 only when a rigorous
bound shows it cannot overflow, and falls back to Python ints otherwise.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement

import numpy as np

from .core import BOOLEAN, REAL, ArgPair, Instance, VectorSet
from .numeric import exact_kth_root, int_kth_root

DEFAULT_MONOMIAL_BUDGET = 1 << 22

_INT64_LIMIT = 1 << 62


@dataclass(frozen=True)
class PowerSumCoefficients:
    """Multilinearized coefficients of (z_1 + ... + z_d) ** r over {0,1}^d.

    by_size[s] counts the surjections from an r-element set onto an s-element
    set: after replacing every z_i**k (k >= 2) by z_i, the monomial indexed by
    a coordinate subset S carries coefficient by_size[len(S)].
    """

    d: int
    r: int
    by_size: dict[int, int]


def compute_power_coeffs(d: int, r: int) -> PowerSumCoefficients:
    if d < 1 or r < 1:
        raise ValueError("d and r must be >= 1")
    by_size = {}
    for s in range(1, min(r, d) + 1):
        c = sum((-1) ** j * math.comb(s, j) * (s - j) ** r for j in range(s + 1))
        by_size[s] = c
    return PowerSumCoefficients(d, r, by_size)


@lru_cache(maxsize=64)
def _subset_columns(d: int, r: int):
    """Canonical enumeration of coordinate subsets with 1 <= |S| <= min(r, d)."""
    index = {}
    sizes = []
    for k in range(1, min(r, d) + 1):
        for combo in combinations(range(d), k):
            index[combo] = len(sizes)
            sizes.append(k)
    return index, tuple(sizes)


def boolean_monomial_count(d: int, r: int) -> int:
    return sum(math.comb(d, k) for k in range(1, min(r, d) + 1))


def real_monomial_count(d: int, r: int) -> int:
    return math.comb(d + r - 1, r)


def _row_support_columns(row, index, r):
    support = [i for i, e in enumerate(row) if e]
    cols = []
    sizes = []
    for k in range(1, min(r, len(support)) + 1):
        for combo in combinations(support, k):
            cols.append(index[combo])
            sizes.append(k)
    return cols, sizes


def _block_ranges(n: int, b: int):
    return [(lo, min(lo + b, n)) for lo in range(0, n, b)]


def batch_power_sums(a: VectorSet, b_set: VectorSet, r: int, b: int):
    """Matrix whose (i, j) entry is sum of (x . y)**r over block i of A and block j of B.

    Blocks are consecutive runs of at most b rows. Entry (i, j) equals the dot
    product of the block-summed monomial embeddings of the two blocks; the
    result is exact.
    """
    if a.kind != BOOLEAN or b_set.kind != BOOLEAN:
        raise ValueError("batch_power_sums expects boolean sides")
    if r < 1 or b < 1:
        raise ValueError("r and b must be >= 1")
    d = a.d
    coeffs = compute_power_coeffs(d, r)
    index, _ = _subset_columns(d, r)
    m = len(index)
    blocks_a = _block_ranges(a.n, b)
    blocks_b = _block_ranges(b_set.n, b)
    bound = b * b * max(d, 1) ** r
    if m and bound < _INT64_LIMIT:
        ma = np.zeros((len(blocks_a), m), dtype=np.int64)
        mb = np.zeros((len(blocks_b), m), dtype=np.int64)
        for bi, (lo, hi) in enumerate(blocks_a):
            for row in a.rows[lo:hi]:
                cols, sizes = _row_support_columns(row, index, r)
                if cols:
                    ma[bi, cols] += np.array(
                        [coeffs.by_size[s] for s in sizes], dtype=np.int64
                    )
        for bj, (lo, hi) in enumerate(blocks_b):
            for row in b_set.rows[lo:hi]:
                cols, _ = _row_support_columns(row, index, r)
                if cols:
                    mb[bj, cols] += 1
        prod = ma @ mb.T
        return [[int(v) for v in line] for line in prod]
    # Arbitrary-precision path with sparse block embeddings.
    emb_a = []
    for lo, hi in blocks_a:
        acc: dict[int, int] = {}
        for row in a.rows[lo:hi]:
            cols, sizes = _row_support_columns(row, index, r)
            for c, s in zip(cols, sizes):
                acc[c] = acc.get(c, 0) + coeffs.by_size[s]
        emb_a.append(acc)
    emb_b = []
    for lo, hi in blocks_b:
        acc = {}
        for row in b_set.rows[lo:hi]:
            cols, _ = _row_support_columns(row, index, r)
            for c in cols:
                acc[c] = acc.get(c, 0) + 1
        emb_b.append(acc)
    out = []
    for ea in emb_a:
        line = []
        for eb in emb_b:
            small, big = (ea, eb) if len(ea) <= len(eb) else (eb, ea)
            line.append(sum(v * big.get(c, 0) for c, v in small.items()))
        out.append(line)
    return out


def _floor_power(t: Fraction, half_exponent_num: int) -> int:
    """floor(t ** (half_exponent_num / 2)) for rational t > 0, exact."""
    if half_exponent_num % 2 == 0:
        p = t ** (half_exponent_num // 2)
        return p.numerator // p.denominator
    num = t.numerator ** half_exponent_num
    den = t.denominator ** half_exponent_num
    return int_kth_root(num * den, 2) // den


def block_size_for_ratio(t: Fraction, r: int) -> int:
    """Largest block size whose squared count stays within the ratio: floor(t**(r/2))."""
    return max(1, _floor_power(t, r))


def _root_at_most_true(p_sum: Fraction, r: int):
    """Rational v with v**r <= p_sum, close enough that v can never fall below
    any integer (or instance-scaled rational) optimum whose r-th power is <= p_sum.

    Exact when p_sum is a perfect r-th power; otherwise a floor on a grid finer
    than the minimal gap 1 / (r * p_sum) between p_sum and the nearest smaller
    integer r-th power.
    """
    if p_sum == 0:
        return Fraction(0)
    exact = exact_kth_root(p_sum, r)
    if exact is not None:
        return exact
    assert p_sum.denominator == 1
    p_int = p_sum.numerator
    grid_bits = max(32, (2 * r * p_int).bit_length())
    grid = 1 << grid_bits
    return Fraction(int_kth_root(p_int * grid ** r, r), grid)


def _pad(rows, width):
    return [tuple(row) + (0,) * (width - len(row)) for row in rows]


def _real_scale(vs: VectorSet) -> tuple[list[tuple[int, ...]], int]:
    """Clear denominators: integer rows plus the common scale factor."""
    scale = 1
    for row in vs.rows:
        for e in row:
            scale = scale * e.denominator // math.gcd(scale, e.denominator)
    rows = [tuple(int(e * scale) for e in row) for row in vs.rows]
    return rows, scale


def _real_embed_block(rows, d, r, with_multinomial):
    """Dense degree-exactly-r multiset embedding, summed over the block."""
    monos = list(combinations_with_replacement(range(d), r))
    acc = [0] * len(monos)
    for row in rows:
        for ci, mono in enumerate(monos):
            v = 1
            for i in mono:
                v *= row[i]
                if v == 0:
                    break
            if v == 0:
                continue
            if with_multinomial:
                counts = {}
                for i in mono:
                    counts[i] = counts.get(i, 0) + 1
                coef = math.factorial(r)
                for c in counts.values():
                    coef //= math.factorial(c)
                v *= coef
            acc[ci] += v
    return acc


def _power_sums_real(rows_a, rows_b, d, r, b):
    blocks_a = _block_ranges(len(rows_a), b)
    blocks_b = _block_ranges(len(rows_b), b)
    emb_a = [_real_embed_block(rows_a[lo:hi], d, r, True) for lo, hi in blocks_a]
    emb_b = [_real_embed_block(rows_b[lo:hi], d, r, False) for lo, hi in blocks_b]
    return [[sum(x * y for x, y in zip(ea, eb)) for eb in emb_b] for ea in emb_a]


def default_power(instance: Instance, t: Fraction) -> int:
    """Default power r: the analytic choice when the dimension meaningfully
    exceeds log n, otherwise a small tunable constant. Callers may override."""
    n = max(instance.a.n, instance.b.n, 2)
    logn = math.log2(n)
    c = instance.d / logn if logn > 0 else float("inf")
    if c > 2:
        eps = min(math.log2(float(t)) / math.log2(c), 1.0)
        k = 0.31 / (1 + 0.155 * eps)
        return max(1, round(k * logn / math.log2(c)))
    return 3


def _capped_power(d: int, r: int, budget: int, real_mode: bool) -> int:
    count = real_monomial_count if real_mode else boolean_monomial_count
    while r > 1 and count(d, r) > budget:
        r -= 1
    if count(d, r) > budget:
        raise ValueError("monomial budget too small even for r = 1")
    return r


def approx_mult(
    instance: Instance,
    t,
    r: int | None = None,
    monomial_budget: int = DEFAULT_MONOMIAL_BUDGET,
):
    """Value v with OPT <= v <= t * OPT, deterministic; v = 0 exactly when OPT = 0.

    Boolean instances use the multilinear subset embedding; non-negative real
    instances use the degree-r multiset embedding on denominator-cleared
    integers. The root of the best block-pair power sum is taken on a grid
    fine enough that it cannot drop below the optimum.
    """
    t = Fraction(t)
    if t <= 1:
        raise ValueError("ratio t must exceed 1")
    if instance.a.n == 0 or instance.b.n == 0:
        raise ValueError("empty instance")
    real_mode = instance.kind == REAL
    if instance.kind not in (BOOLEAN, REAL):
        raise ValueError("approx_mult expects boolean or non-negative real entries")
    if r is None:
        r = default_power(instance, t)
    r_eff = _capped_power(instance.d, r, monomial_budget, real_mode)
    if r_eff != r:
        warnings.warn(
            f"power lowered from {r} to {r_eff} to respect the monomial budget",
            RuntimeWarning,
        )
    r = r_eff
    b = block_size_for_ratio(t, r)
    if real_mode:
        rows_a, scale_a = _real_scale(instance.a)
        rows_b, scale_b = _real_scale(instance.b)
        sums = _power_sums_real(rows_a, rows_b, instance.d, r, b)
        best = max(max(line) for line in sums)
        return _root_at_most_true(Fraction(best), r) / (scale_a * scale_b)
    sums = batch_power_sums(instance.a, instance.b, r, b)
    best = max(max(line) for line in sums)
    return _root_at_most_true(Fraction(best), r)


def all_pair_approx_mult(
    instance: Instance,
    t,
    r: int | None = None,
    monomial_budget: int = DEFAULT_MONOMIAL_BUDGET,
):
    """Per-row values v_x with OPT(x, B) <= v_x <= t * OPT(x, B).

    Only the B side is blocked; each row of A is embedded on its own, so the
    block power sum over counts b gives the even tighter factor b**(1/r) <= sqrt(t).
    """
    t = Fraction(t)
    if t <= 1:
        raise ValueError("ratio t must exceed 1")
    if instance.a.n == 0 or instance.b.n == 0:
        raise ValueError("empty instance")
    real_mode = instance.kind == REAL
    if instance.kind not in (BOOLEAN, REAL):
        raise ValueError("expects boolean or non-negative real entries")
    if r is None:
        r = default_power(instance, t)
    r = _capped_power(instance.d, r, monomial_budget, real_mode)
    b = block_size_for_ratio(t, r)
    if real_mode:
        rows_a, scale_a = _real_scale(instance.a)
        rows_b, scale_b = _real_scale(instance.b)
        blocks_b = _block_ranges(len(rows_b), b)
        emb_b = [_real_embed_block(rows_b[lo:hi], instance.d, r, False) for lo, hi in blocks_b]
        out = []
        for row in rows_a:
            ea = _real_embed_block([row], instance.d, r, True)
            best = max(sum(x * y for x, y in zip(ea, eb)) for eb in emb_b)
            out.append(_root_at_most_true(Fraction(best), r) / (scale_a * scale_b))
        return out
    d = instance.d
    coeffs = compute_power_coeffs(d, r)
    index, _ = _subset_columns(d, r)
    m = len(index)
    blocks_b = _block_ranges(instance.b.n, b)
    bound = b * max(d, 1) ** r
    if m and bound < _INT64_LIMIT:
        ma = np.zeros((instance.a.n, m), dtype=np.int64)
        for i, row in enumerate(instance.a.rows):
            cols, sizes = _row_support_columns(row, index, r)
            if cols:
                ma[i, cols] = np.array(
                    [coeffs.by_size[s] for s in sizes], dtype=np.int64
                )
        mb = np.zeros((len(blocks_b), m), dtype=np.int64)
        for bj, (lo, hi) in enumerate(blocks_b):
            for row in instance.b.rows[lo:hi]:
                cols, _ = _row_support_columns(row, index, r)
                if cols:
                    mb[bj, cols] += 1
        prod = ma @ mb.T
        return [
            _root_at_most_true(Fraction(int(max(line))), r) for line in prod
        ]
    emb_b = []
    for lo, hi in blocks_b:
        acc: dict[int, int] = {}
        for row in instance.b.rows[lo:hi]:
            cols, _ = _row_support_columns(row, index, r)
            for c in cols:
                acc[c] = acc.get(c, 0) + 1
        emb_b.append(acc)
    out = []
    for row in instance.a.rows:
        cols, sizes = _row_support_columns(row, index, r)
        ea = {c: coeffs.by_size[s] for c, s in zip(cols, sizes)}
        best = 0
        for eb in emb_b:
            small, big = (ea, eb) if len(ea) <= len(eb) else (eb, ea)
            best = max(best, sum(v * big.get(c, 0) for c, v in small.items()))
        out.append(_root_at_most_true(Fraction(best), r))
    return out
