"""Recursive Chinese-remainder dimensionality reduction for bit vectors.

A vector of block_bits * groups bits maps to one integer per group, each a
stacked CRR encoding, so that the single dot product of two encoded vectors
determines the dot product of the originals: residue by residue, integer
multiplication simulates coordinate-wise multiplication. Small block sizes
use one level of encoding; larger ones recurse through micro-blocks whose
encodings fit below the next level's primes, so residues never wrap.

Also here: the certificate sets of dot-product values that witness
orthogonality, level sets witnessing each exact dot value, the emission of
integer orthogonality instances from boolean ones, and the brute-force
search/validation of candidate reductions over tiny domains.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import prod as _prod
from typing import Callable, Mapping, Sequence

from .core import INTEGER, Instance, VectorSet, integer_set
from .numeric import crr, log_star, primes_in_range

DEFAULT_ENUM_BUDGET = 1_000_000
DEFAULT_SEARCH_BUDGET = 5_000_000


def bound_exponent(block_bits: int) -> int:
    """Exponent e with coordinates provably below groups**e: 6**log*(b) * b."""
    return 6 ** log_star(block_bits) * block_bits


@dataclass(frozen=True)
class CrtReduction:
    """One level of the reduction: primes plus an optional inner reduction.

    inner is None for the direct arm (block_bits < groups, one prime per bit).
    In the recursive arm each block splits into len(primes) micro-blocks of
    inner.block_bits bits; coordinate i is the CRR of the inner encodings'
    i-th coordinates. coord_bound (the prime product) exclusively bounds
    every output coordinate.
    """

    block_bits: int
    groups: int
    primes: tuple[int, ...]
    inner: "CrtReduction | None"
    coord_bound: int

    @property
    def input_bits(self) -> int:
        return self.block_bits * self.groups

    @property
    def reachable_coord_bound(self) -> int:
        """Exclusive bound on coordinates actually reachable from bit inputs.

        A one-bit direct encoding is the identity on {0, 1}, so its reachable
        bound is 2 even though the prime product is larger; everywhere else
        the prime product is the bound.
        """
        if self.inner is None and self.block_bits == 1:
            return 2
        return self.coord_bound

    @property
    def max_dot(self) -> int:
        """Inclusive upper bound on dot products of encoded vectors."""
        return self.groups * (self.coord_bound - 1) ** 2

    @property
    def loose_dot_bound(self) -> int:
        """The analytic (astronomically loose) range bound groups**(2e+1)."""
        return self.groups ** (2 * bound_exponent(self.block_bits) + 1)


def _micro_bits(block_bits: int, groups: int) -> int:
    """Largest m >= 1 with groups**bound_exponent(m) <= block_bits."""
    m = 1
    while groups ** bound_exponent(m + 1) <= block_bits:
        m += 1
    return m


def build_reduction(block_bits: int, groups: int) -> CrtReduction:
    """Construct the reduction for the given block size and group count.

    Direct arm when block_bits < groups: the block_bits smallest primes in
    [groups + 1, groups**2]. Recursive arm otherwise: the smallest primes in
    [block_bits**2 * groups, (block_bits**2 * groups)**2], one per micro-block.
    Raises ValueError when the mandated interval holds too few primes, which
    can happen for tiny parameters.
    """
    if block_bits < 1:
        raise ValueError("block_bits must be >= 1")
    if groups < 2:
        raise ValueError("groups must be >= 2")
    if block_bits < groups:
        primes = primes_in_range(groups + 1, groups * groups, count=block_bits)
        if len(primes) < block_bits:
            raise ValueError(
                f"insufficient primes in [{groups + 1}, {groups * groups}] "
                f"for {block_bits} blocks"
            )
        red = CrtReduction(block_bits, groups, tuple(primes), None, _prod(primes))
    else:
        micro = _micro_bits(block_bits, groups)
        inner = build_reduction(micro, groups)
        assert inner.reachable_coord_bound <= block_bits
        count = -(-block_bits // micro)
        lo = block_bits * block_bits * groups
        hi = lo * lo
        primes = primes_in_range(lo, hi, count=count)
        if len(primes) < count:
            raise ValueError(
                f"insufficient primes in [{lo}, {hi}] for {count} micro-blocks"
            )
        # residues never wrap: every inner dot product stays below each prime
        assert primes[0] > groups * (inner.reachable_coord_bound - 1) ** 2
        red = CrtReduction(block_bits, groups, tuple(primes), inner, _prod(primes))
    assert red.reachable_coord_bound <= groups ** bound_exponent(block_bits)
    return red


def _padded_bits(bits: Sequence[int], length: int) -> list[int]:
    bits = list(bits)
    if len(bits) > length:
        raise ValueError(f"input has {len(bits)} bits, more than {length}")
    return bits + [0] * (length - len(bits))


def apply_reduction(red: CrtReduction, bits: Sequence[int]) -> tuple[int, ...]:
    """Encode a bit vector of length <= block_bits * groups (zero-padded)."""
    x = _padded_bits(bits, red.input_bits)
    b = red.block_bits
    blocks = [x[i * b : (i + 1) * b] for i in range(red.groups)]
    if red.inner is None:
        return tuple(crr(block, red.primes) for block in blocks)
    micro = red.inner.block_bits
    count = len(red.primes)
    padded = [block + [0] * (count * micro - b) for block in blocks]
    inner_vecs = []
    for j in range(count):
        piece = []
        for block in padded:
            piece.extend(block[j * micro : (j + 1) * micro])
        inner_vecs.append(apply_reduction(red.inner, piece))
    return tuple(
        crr([vec[i] for vec in inner_vecs], red.primes) for i in range(red.groups)
    )


def witnesses_orthogonality(red: CrtReduction, value: int) -> bool:
    """Implicit membership test of the orthogonality certificate set.

    A realizable encoded dot product passes iff the source vectors are
    orthogonal. The range test uses the tight realizable bound
    groups * (coord_bound - 1)**2 rather than the loose analytic one.
    """
    if value < 0 or value > red.max_dot:
        return False
    if red.inner is None:
        return all(value % q == 0 for q in red.primes)
    return all(witnesses_orthogonality(red.inner, value % p) for p in red.primes)


@dataclass(frozen=True)
class CertificateSet:
    """Explicit orthogonality certificate: accepted values within [0, bound]."""

    bound: int
    members: tuple[int, ...]

    def __contains__(self, value: int) -> bool:
        lo, hi = 0, len(self.members)
        while lo < hi:
            mid = (lo + hi) // 2
            if self.members[mid] < value:
                lo = mid + 1
            else:
                hi = mid
        return lo < len(self.members) and self.members[lo] == value

    def __len__(self) -> int:
        return len(self.members)


def _certificate_size_estimate(red: CrtReduction, budget: int) -> int:
    if red.inner is None:
        return red.max_dot // red.coord_bound + 1
    inner_size = _certificate_size_estimate(red.inner, budget)
    if inner_size > budget:
        return inner_size
    tuples = inner_size ** len(red.primes)
    if tuples > budget:
        return tuples
    return tuples * (red.max_dot // red.coord_bound + 1)


def certificate_values(
    red: CrtReduction, budget: int = DEFAULT_ENUM_BUDGET
) -> CertificateSet:
    """Explicit enumeration of the certificate set, ascending.

    Direct arm: multiples of the prime product within range. Recursive arm:
    CRT lifts of every tuple of inner certificate values, shifted through the
    range. Raises ValueError when the estimated size exceeds the budget; use
    witnesses_orthogonality instead in that regime.
    """
    estimate = _certificate_size_estimate(red, budget)
    if estimate > budget:
        raise ValueError(
            f"certificate enumeration would produce about {estimate} values, "
            f"over the budget of {budget}; use the implicit membership test"
        )
    if red.inner is None:
        members = tuple(range(0, red.max_dot + 1, red.coord_bound))
        return CertificateSet(red.max_dot, members)
    inner_members = certificate_values(red.inner, budget).members
    out = []
    for combo in product(inner_members, repeat=len(red.primes)):
        base = crr(combo, red.primes)
        out.extend(range(base, red.max_dot + 1, red.coord_bound))
    out.sort()
    return CertificateSet(red.max_dot, tuple(out))


def decode_dot(red: CrtReduction, value: int) -> int:
    """Recover the source dot product from an encoded one.

    Equals x . y whenever value = apply(x) . apply(y). On values that are not
    realizable dot products the function still returns the sum of recursively
    decoded residues, with no further meaning.
    """
    if red.inner is None:
        return sum(value % q for q in red.primes)
    return sum(decode_dot(red.inner, value % p) for p in red.primes)


@dataclass(frozen=True)
class LevelSets:
    """Partition of [0, bound] by decoded dot value k = 0 .. block_bits*groups."""

    bound: int
    sets: tuple[tuple[int, ...], ...]


def level_sets(red: CrtReduction, budget: int = DEFAULT_ENUM_BUDGET) -> LevelSets:
    """Explicit level sets: values decoding to each k, by range scan."""
    if red.max_dot + 1 > budget:
        raise ValueError(
            f"level-set scan over {red.max_dot + 1} values exceeds budget {budget}"
        )
    top = red.input_bits
    sets: list[list[int]] = [[] for _ in range(top + 1)]
    for v in range(red.max_dot + 1):
        k = decode_dot(red, v)
        if 0 <= k <= top:
            sets[k].append(v)
    return LevelSets(red.max_dot, tuple(tuple(s) for s in sets))


def reduction_for_dimension(d: int, ell: int) -> CrtReduction:
    """The reduction used for d-dimensional boolean inputs with ell groups."""
    if not 1 <= ell <= d:
        raise ValueError("need 1 <= ell <= d")
    if ell < 2:
        raise ValueError("groups must be >= 2")
    return build_reduction(-(-d // ell), ell)


def ov_to_zov(
    instance: Instance, ell: int, budget: int = DEFAULT_ENUM_BUDGET
) -> list[Instance]:
    """Reduce a boolean orthogonality instance to integer ones of dimension ell + 1.

    Each certificate value t yields one instance: A rows become
    (encoded u, 1), B rows (encoded v, -t). The source has an orthogonal pair
    iff some emitted instance does.
    """
    if instance.kind != "boolean":
        raise ValueError("ov_to_zov expects a boolean instance")
    red = reduction_for_dimension(instance.d, ell)
    cert = certificate_values(red, budget)
    enc_a = [apply_reduction(red, row) for row in instance.a.rows]
    enc_b = [apply_reduction(red, row) for row in instance.b.rows]
    out = []
    for t in cert.members:
        side_a = integer_set([vec + (1,) for vec in enc_a], d=ell + 1)
        side_b = integer_set([vec + (-t,) for vec in enc_b], d=ell + 1)
        out.append(Instance(side_a, side_b))
    return out


def maxip_via_crt_queries(
    instance: Instance,
    ell: int,
    zmaxip_solver: Callable[[Instance], bool],
    budget: int = DEFAULT_ENUM_BUDGET,
) -> int:
    """Exact boolean Max-IP through integer zero-tests only.

    Descends k from d to 0; for each level-set value t the candidate pair
    instance is squared through the tensor reduction and handed to the
    solver, which answers whether that integer Max-IP optimum is zero. The
    first hit is the answer.
    """
    from .geometry import zov_to_zmaxip_tensor

    if instance.kind != "boolean":
        raise ValueError("expects a boolean instance")
    if instance.a.n == 0 or instance.b.n == 0:
        raise ValueError("empty instance")
    red = reduction_for_dimension(instance.d, ell)
    levels = level_sets(red, budget)
    enc_a = [apply_reduction(red, row) for row in instance.a.rows]
    enc_b = [apply_reduction(red, row) for row in instance.b.rows]
    for k in range(min(instance.d, red.input_bits), -1, -1):
        for t in levels.sets[k]:
            side_a = integer_set([vec + (1,) for vec in enc_a], d=ell + 1)
            side_b = integer_set([vec + (-t,) for vec in enc_b], d=ell + 1)
            query = zov_to_zmaxip_tensor(Instance(side_a, side_b))
            if zmaxip_solver(query):
                return k
    raise RuntimeError("no level matched; the supplied solver is inconsistent")


def validate_candidate_reduction(
    table: Mapping[tuple[int, ...], tuple[int, ...]]
) -> CertificateSet | None:
    """Check a candidate encoding table for certificate separability.

    Collects encoded dot products of orthogonal source pairs (D0) and
    non-orthogonal ones (D1); the table is valid iff they are disjoint, in
    which case D0 is the certificate set.
    """
    keys = list(table.keys())
    if not keys:
        raise ValueError("empty table")
    n_bits = len(keys[0])
    if len(keys) != 1 << n_bits or len(set(keys)) != len(keys):
        raise ValueError("table must be total over all bit vectors of its length")
    zero_dots: set[int] = set()
    nonzero_dots: set[int] = set()
    for x in keys:
        fx = table[x]
        for y in keys:
            fy = table[y]
            enc = sum(a * b for a, b in zip(fx, fy))
            if sum(a * b for a, b in zip(x, y)) == 0:
                zero_dots.add(enc)
            else:
                nonzero_dots.add(enc)
    if zero_dots & nonzero_dots:
        return None
    members = tuple(sorted(zero_dots))
    return CertificateSet(max(members), members)


def brute_force_search_reduction(
    block_bits: int,
    groups: int,
    coord_limit: int,
    budget: int = DEFAULT_SEARCH_BUDGET,
):
    """Exhaustive search for a valid encoding table into [0, coord_limit)**groups.

    Returns the first (table, certificate) in deterministic enumeration order,
    or None if no table separates. Raises ValueError when the search space
    coord_limit**(groups * 2**(block_bits*groups)) exceeds the budget.
    """
    n_bits = block_bits * groups
    domain = list(product((0, 1), repeat=n_bits))
    images = list(product(range(coord_limit), repeat=groups))
    total = len(images) ** len(domain)
    if total > budget:
        raise ValueError(f"search space of {total} tables exceeds budget {budget}")
    for assignment in product(images, repeat=len(domain)):
        table = dict(zip(domain, assignment))
        cert = validate_candidate_reduction(table)
        if cert is not None:
            return table, cert
    return None
