"""Integer and modular arithmetic helpers: roots, primes, CRT lifting, iterated log."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


def ceil_log2(n: int) -> int:
    """Smallest k with 2**k >= n, for n >= 1."""
    if n < 1:
        raise ValueError("ceil_log2 requires n >= 1")
    return (n - 1).bit_length()


def log_star(n: int) -> int:
    """Iterated ceiling base-2 logarithm: applications of ceil_log2 until <= 1."""
    count = 0
    while n > 1:
        n = ceil_log2(n)
        count += 1
    return count


def int_kth_root(n: int, k: int) -> int:
    """floor(n ** (1/k)) computed exactly with integer arithmetic."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return 0
    if k == 1:
        return n
    # Newton iteration from an upper bound; final adjust guards the floor.
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def exact_kth_root(value: Fraction, k: int) -> Fraction | None:
    """The exact rational k-th root of value, or None if irrational."""
    if value < 0:
        raise ValueError("value must be >= 0")
    rn = int_kth_root(value.numerator, k)
    rd = int_kth_root(value.denominator, k)
    if rn ** k == value.numerator and rd ** k == value.denominator:
        return Fraction(rn, rd)
    return None


def kth_root_lower(value: Fraction, k: int, bits: int = 32) -> Fraction:
    """Rational lower bound on value ** (1/k), within 2**-bits of the true root."""
    if value < 0:
        raise ValueError("value must be >= 0")
    exact = exact_kth_root(value, k)
    if exact is not None:
        return exact
    grid = 1 << bits
    scaled = (value.numerator * grid ** k) // value.denominator
    return Fraction(int_kth_root(scaled, k), grid)


def is_prime(n: int) -> bool:
    """Deterministic trial division; intended for desk-scale magnitudes."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def sieve_primes(limit: int) -> list[int]:
    """All primes <= limit via Eratosthenes."""
    if limit < 2:
        return []
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    p = 2
    while p * p <= limit:
        if flags[p]:
            flags[p * p :: p] = bytearray(len(flags[p * p :: p]))
        p += 1
    return [i for i, f in enumerate(flags) if f]


def _sieve_window(lo: int, hi: int, base: list[int]) -> list[int]:
    flags = bytearray([1]) * (hi - lo + 1)
    for p in base:
        start = max(p * p, ((lo + p - 1) // p) * p)
        if start > hi:
            continue
        step = len(range(start - lo, len(flags), p))
        flags[start - lo :: p] = bytearray(step)
    return [lo + i for i, f in enumerate(flags) if f and lo + i >= 2]


def primes_in_range(lo: int, hi: int, count: int | None = None) -> list[int]:
    """Primes p with lo <= p <= hi ascending; at most `count` if given.

    Segmented sieve; when a count is requested the scan proceeds window by
    window and stops early, so hi may be astronomically large.
    """
    lo = max(lo, 2)
    if hi < lo:
        return []
    if count is None:
        return _sieve_window(lo, hi, sieve_primes(int_kth_root(hi, 2) + 1))
    window = max(1 << 16, count * 64)
    out: list[int] = []
    chunk_lo = lo
    while chunk_lo <= hi and len(out) < count:
        chunk_hi = min(hi, chunk_lo + window - 1)
        base = sieve_primes(int_kth_root(chunk_hi, 2) + 1)
        out.extend(_sieve_window(chunk_lo, chunk_hi, base))
        chunk_lo = chunk_hi + 1
    return out[:count]


def primes_from(lo: int, count: int) -> list[int]:
    """The first `count` primes >= lo (window grows until enough are found)."""
    lo = max(lo, 2)
    hi = lo + max(64, count * (ceil_log2(max(lo, 4)) + 2) * 2)
    while True:
        found = primes_in_range(lo, hi, count=count)
        if len(found) == count:
            return found
        hi *= 2


def crr(residues: Sequence[int], moduli: Sequence[int]) -> int:
    """The unique t in [0, prod(moduli)) with t = residues[i] (mod moduli[i]).

    Moduli must be pairwise coprime.
    """
    if len(residues) != len(moduli):
        raise ValueError("residues and moduli must have equal length")
    value = 0
    prod = 1
    for r, q in zip(residues, moduli):
        delta = (r - value) % q
        value += prod * (delta * pow(prod % q, -1, q) % q)
        prod *= q
    return value


def dot(u: Iterable, v: Iterable):
    """Plain inner product, exact for ints and Fractions."""
    return sum(a * b for a, b in zip(u, v))
