"""Instance types, exact quadratic-time oracles, and seeded instance generators.

Everything here is deliberately simple and exact: entries are ints or
Fractions, oracles enumerate all pairs, and every generator is a pure
function of its arguments (seed included). The rest of the library is
verified against these functions.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .numeric import dot, exact_kth_root, int_kth_root

BOOLEAN = "boolean"
INTEGER = "integer"
REAL = "real"

_KINDS = (BOOLEAN, INTEGER, REAL)


class ArgPair(NamedTuple):
    index_a: int
    index_b: int


@dataclass(frozen=True)
class VectorSet:
    """n row vectors of shared dimension d with a declared entry kind.

    boolean: entries in {0, 1}; integer: arbitrary-precision ints;
    real: non-negative exact rationals.
    """

    kind: str
    d: int
    rows: tuple[tuple, ...]

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown vector kind {self.kind!r}")
        for row in self.rows:
            if len(row) != self.d:
                raise ValueError("row length differs from declared dimension")
            for entry in row:
                if self.kind == BOOLEAN:
                    if entry not in (0, 1):
                        raise ValueError("boolean entries must be 0 or 1")
                elif self.kind == INTEGER:
                    if not isinstance(entry, int):
                        raise ValueError("integer entries must be int")
                else:
                    if not isinstance(entry, (int, Fraction)) or entry < 0:
                        raise ValueError("real entries must be non-negative rationals")

    @property
    def n(self) -> int:
        return len(self.rows)


def boolean_set(rows: Sequence[Sequence[int]], d: int | None = None) -> VectorSet:
    rows = tuple(tuple(int(e) for e in row) for row in rows)
    if d is None:
        d = len(rows[0]) if rows else 0
    return VectorSet(BOOLEAN, d, rows)


def integer_set(rows: Sequence[Sequence[int]], d: int | None = None) -> VectorSet:
    rows = tuple(tuple(int(e) for e in row) for row in rows)
    if d is None:
        d = len(rows[0]) if rows else 0
    return VectorSet(INTEGER, d, rows)


def rational_set(rows: Sequence[Sequence], d: int | None = None) -> VectorSet:
    rows = tuple(tuple(Fraction(e) for e in row) for row in rows)
    if d is None:
        d = len(rows[0]) if rows else 0
    return VectorSet(REAL, d, rows)


@dataclass(frozen=True)
class Instance:
    """Two vector sets over the same dimension; the two sides of a search problem."""

    a: VectorSet
    b: VectorSet

    def __post_init__(self):
        if self.a.d != self.b.d:
            raise ValueError("sides must share the dimension")
        if self.a.kind != self.b.kind:
            raise ValueError("sides must share the entry kind")

    @property
    def d(self) -> int:
        return self.a.d

    @property
    def kind(self) -> str:
        return self.a.kind


def row_masks(vs: VectorSet) -> list[int]:
    """Boolean rows packed into int bitmasks (bit i = coordinate i)."""
    if vs.kind != BOOLEAN:
        raise ValueError("row_masks requires a boolean set")
    out = []
    for row in vs.rows:
        m = 0
        for i, e in enumerate(row):
            if e:
                m |= 1 << i
        out.append(m)
    return out


def gen_random(n: int, d: int, density: float, seed: int) -> VectorSet:
    """Boolean set with each bit independently 1 with probability density."""
    if not 0 <= density <= 1:
        raise ValueError("density must lie in [0, 1]")
    rng = random.Random(seed)
    rows = tuple(
        tuple(1 if rng.random() < density else 0 for _ in range(d)) for _ in range(n)
    )
    return VectorSet(BOOLEAN, d, rows)


def gen_random_instance(n: int, d: int, density: float, seed: int) -> Instance:
    """Random boolean instance; both sides drawn from one seeded stream."""
    if not 0 <= density <= 1:
        raise ValueError("density must lie in [0, 1]")
    rng = random.Random(seed)
    def side():
        return tuple(
            tuple(1 if rng.random() < density else 0 for _ in range(d))
            for _ in range(n)
        )
    return Instance(VectorSet(BOOLEAN, d, side()), VectorSet(BOOLEAN, d, side()))


def gen_planted_orthogonal(n: int, d: int, seed: int) -> Instance:
    """Random boolean instance with one orthogonal pair planted at a seeded position.

    The planted B-row is zero wherever the planted A-row is one, so their dot
    product is exactly zero regardless of the remaining random bits.
    """
    if n < 1 or d < 1:
        raise ValueError("n and d must be >= 1")
    rng = random.Random(seed)
    a_rows = [[1 if rng.random() < 0.5 else 0 for _ in range(d)] for _ in range(n)]
    b_rows = [[1 if rng.random() < 0.5 else 0 for _ in range(d)] for _ in range(n)]
    ia = rng.randrange(n)
    ib = rng.randrange(n)
    for i in range(d):
        if a_rows[ia][i]:
            b_rows[ib][i] = 0
    return Instance(
        VectorSet(BOOLEAN, d, tuple(tuple(r) for r in a_rows)),
        VectorSet(BOOLEAN, d, tuple(tuple(r) for r in b_rows)),
    )


def _require_nonempty(instance: Instance):
    if instance.a.n == 0 or instance.b.n == 0:
        raise ValueError("empty instance")


def max_ip_exact(instance: Instance):
    """Exhaustive maximum pairwise dot product.

    Returns (value, ArgPair); ties broken by the lexicographically smallest
    index pair. O(n^2 d) by design: this is the oracle everything else is
    checked against.
    """
    _require_nonempty(instance)
    best = None
    best_pair = None
    if instance.kind == BOOLEAN:
        ma = row_masks(instance.a)
        mb = row_masks(instance.b)
        for i, x in enumerate(ma):
            for j, y in enumerate(mb):
                v = (x & y).bit_count()
                if best is None or v > best:
                    best, best_pair = v, ArgPair(i, j)
    else:
        for i, x in enumerate(instance.a.rows):
            for j, y in enumerate(instance.b.rows):
                v = dot(x, y)
                if best is None or v > best:
                    best, best_pair = v, ArgPair(i, j)
    return best, best_pair


def orthogonal_decide(instance: Instance):
    """Does some cross pair have dot product exactly zero?

    Returns (True, witness ArgPair) for the first such pair in index order,
    or (False, None).
    """
    _require_nonempty(instance)
    if instance.kind == REAL:
        raise ValueError("orthogonality oracle expects boolean or integer entries")
    if instance.kind == BOOLEAN:
        ma = row_masks(instance.a)
        mb = row_masks(instance.b)
        for i, x in enumerate(ma):
            for j, y in enumerate(mb):
                if (x & y) == 0:
                    return True, ArgPair(i, j)
    else:
        for i, x in enumerate(instance.a.rows):
            for j, y in enumerate(instance.b.rows):
                if dot(x, y) == 0:
                    return True, ArgPair(i, j)
    return False, None


def power_sum_estimate(values: Sequence, k: int):
    """(sum of x**k) ** (1/k) as an exact rational lower bound of the true root.

    For non-negative inputs the result always lies in [max, max * m**(1/k)]
    where m is the multiset size: the root is computed on an integer grid and
    clamped from below at the maximum, so rounding can never leave the bracket.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    vals = [Fraction(v) for v in values]
    if not vals:
        raise ValueError("values must be non-empty")
    if any(v < 0 for v in vals):
        raise ValueError("values must be non-negative")
    total = sum(v ** k for v in vals)
    vmax = max(vals)
    if total == 0:
        return Fraction(0)
    exact = exact_kth_root(total, k)
    if exact is not None:
        return max(exact, vmax)
    grid = 1 << 32
    scaled = (total.numerator * grid ** k) // total.denominator
    return max(Fraction(int_kth_root(scaled, k), grid), vmax)
