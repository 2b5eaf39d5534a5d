"""Exact-arithmetic reductions from integer instances to Euclidean extremes.

The tensor squaring step turns an integer orthogonality instance into an
integer Max-IP instance whose optimum is zero exactly when an orthogonal pair
exists. The geometric step appends one of two radical coordinates to each
point so that every point has the same squared norm W and every cross-class
squared distance is the exact integer 2W +- 2(x . y). No floating point is
used anywhere: radicals stay formal, and within-class distances are bracketed
by integer-square-root intervals.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .core import INTEGER, ArgPair, Instance, VectorSet, integer_set
from .numeric import ceil_log2

FURTHEST = "furthest"
CLOSEST = "closest"


def zov_to_zmaxip_tensor(instance: Instance) -> Instance:
    """Square an integer instance: x -> x (x) x, y -> -(y (x) y).

    Every cross dot product becomes -(x . y)**2, so the emitted optimum is at
    most zero and equals zero exactly when the source has an orthogonal pair.
    """
    if instance.kind != INTEGER:
        raise ValueError("tensor reduction expects an integer instance")
    d = instance.d
    rows_a = [
        tuple(x[i] * x[j] for i in range(d) for j in range(d))
        for x in instance.a.rows
    ]
    rows_b = [
        tuple(-(y[i] * y[j]) for i in range(d) for j in range(d))
        for y in instance.b.rows
    ]
    return Instance(integer_set(rows_a, d=d * d), integer_set(rows_b, d=d * d))


@dataclass(frozen=True)
class SqrtExtPoint:
    """Integer head plus one formal radical tail in one of two slots.

    tail_a and tail_b hold radicands; at most one is nonzero, so products of
    tails across the two classes always vanish and squared norms stay integer.
    """

    head: tuple[int, ...]
    tail_a: int
    tail_b: int

    def __post_init__(self):
        if self.tail_a < 0 or self.tail_b < 0:
            raise ValueError("radicands must be non-negative")
        if self.tail_a and self.tail_b:
            raise ValueError("at most one tail slot may be used")

    @property
    def sq_norm(self) -> int:
        return sum(h * h for h in self.head) + self.tail_a + self.tail_b


@dataclass(frozen=True)
class GeometryInstance:
    a_points: tuple[SqrtExtPoint, ...]
    b_points: tuple[SqrtExtPoint, ...]
    w: int
    k: int
    mode: str


def _entry_length_exponent(instance: Instance, n_eff: int) -> int:
    max_abs = max(
        (abs(e) for rows in (instance.a.rows, instance.b.rows) for r in rows for e in r),
        default=0,
    )
    bits_per_unit = ceil_log2(n_eff)
    k = 1
    while max_abs >= 1 << (k * bits_per_unit):
        k += 1
    return k


def zmaxip_to_geometry(instance: Instance, mode: str) -> GeometryInstance:
    """Embed an integer Max-IP instance as points with two radical coordinates.

    Cross squared distances are exactly 2W + 2(x . y) in furthest mode (B side
    negated) and 2W - 2(x . y) in closest mode. W = n**(5k) with k the minimal
    exponent for which all entries fit below 2**(k * log n); n of 0 or 1 is
    treated as 2 so the bound is meaningful.
    """
    if mode not in (FURTHEST, CLOSEST):
        raise ValueError("mode must be 'furthest' or 'closest'")
    if instance.kind != INTEGER:
        raise ValueError("geometry embedding expects an integer instance")
    n_eff = max(instance.a.n, instance.b.n, 2)
    k = _entry_length_exponent(instance, n_eff)
    w = n_eff ** (5 * k)
    a_points = []
    for x in instance.a.rows:
        rad = w - sum(e * e for e in x)
        assert rad >= 0, "norm exceeds W; entry-length precondition violated"
        a_points.append(SqrtExtPoint(tuple(x), rad, 0))
    b_points = []
    sign = -1 if mode == FURTHEST else 1
    for y in instance.b.rows:
        rad = w - sum(e * e for e in y)
        assert rad >= 0, "norm exceeds W; entry-length precondition violated"
        b_points.append(SqrtExtPoint(tuple(sign * e for e in y), 0, rad))
    return GeometryInstance(tuple(a_points), tuple(b_points), w, k, mode)


def cross_sq_dist(p: SqrtExtPoint, q: SqrtExtPoint) -> int:
    """Exact squared distance between points using different tail slots."""
    if (p.tail_b and q.tail_b) or (p.tail_a and q.tail_a):
        raise ValueError("points share a tail slot; distance is not integer")
    base = sum((a - b) ** 2 for a, b in zip(p.head, q.head))
    return base + p.tail_a + p.tail_b + q.tail_a + q.tail_b


def within_sq_dist_interval(p: SqrtExtPoint, q: SqrtExtPoint) -> tuple[int, int]:
    """(lo, hi] integer bracket of the squared distance within one class."""
    base = sum((a - b) ** 2 for a, b in zip(p.head, q.head))
    ra = p.tail_a + p.tail_b
    rb = q.tail_a + q.tail_b
    s = isqrt(ra * rb)
    hi = base + ra + rb - 2 * s
    return hi - 2, hi


class AmbiguousExtremeError(RuntimeError):
    """A within-class distance interval reaches the extreme cross distance."""


def geometry_extreme_pair(geom: GeometryInstance):
    """Extreme pair, its exact squared distance, and the decoded optimum.

    Furthest mode searches all pairs among the 2n points: the cross maximum
    must exceed every within-class upper bracket, otherwise the construction's
    dominance precondition failed and AmbiguousExtremeError is raised. Closest
    mode is bichromatic, so only cross pairs compete. Decoding inverts the
    exact distance identity: (dist - 2W) / 2 or (2W - dist) / 2.
    """
    best = None
    best_pair = None
    for i, p in enumerate(geom.a_points):
        for j, q in enumerate(geom.b_points):
            dist = cross_sq_dist(p, q)
            if geom.mode == FURTHEST:
                better = best is None or dist > best
            else:
                better = best is None or dist < best
            if better:
                best, best_pair = dist, ArgPair(i, j)
    if best is None:
        raise ValueError("empty instance")
    if geom.mode == FURTHEST:
        for points in (geom.a_points, geom.b_points):
            for i in range(len(points)):
                for j in range(i + 1, len(points)):
                    _, hi = within_sq_dist_interval(points[i], points[j])
                    if hi >= best:
                        raise AmbiguousExtremeError(
                            "a within-class pair may reach the cross maximum"
                        )
        decoded_num = best - 2 * geom.w
    else:
        decoded_num = 2 * geom.w - best
    assert decoded_num % 2 == 0
    return best_pair, best, decoded_num // 2


def dominance_holds(geom: GeometryInstance) -> bool:
    """Every cross squared distance strictly exceeds every within-class bracket."""
    min_cross = min(
        cross_sq_dist(p, q) for p in geom.a_points for q in geom.b_points
    )
    for points in (geom.a_points, geom.b_points):
        for i in range(len(points)):
            for j in range(i + 1, len(points)):
                _, hi = within_sq_dist_interval(points[i], points[j])
                if hi >= min_cross:
                    return False
    return True


def ov_to_geometry_decide(instance: Instance, ell: int, mode: str) -> bool:
    """Chain boolean orthogonality through integers, tensors, and geometry.

    Yes iff some emitted geometry instance decodes an optimum of zero; agrees
    with the quadratic orthogonality oracle on the source instance.
    """
    from .crt import ov_to_zov

    for zov in ov_to_zov(instance, ell):
        tensor = zov_to_zmaxip_tensor(zov)
        geom = zmaxip_to_geometry(tensor, mode)
        _, _, decoded = geometry_extreme_pair(geom)
        if decoded == 0:
            return True
    return False
