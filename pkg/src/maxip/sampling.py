"""Randomized additive approximation of Max-IP by uniform coordinate sampling.

A seeded multiset of coordinates is drawn once, the instance is restricted to
it, the small instance is solved exactly, and the result is rescaled. With
the exact sub-solve the error budget is half the requested bound whenever the
sampling concentration event holds, which happens with probability at least
1 - 1/n by a Chernoff and union bound.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .core import BOOLEAN, Instance, VectorSet, max_ip_exact

CHERNOFF_CONSTANT = 2


@dataclass(frozen=True)
class SamplePlan:
    """Coordinate multiset for one sampling round.

    sampled_dim = ceil(2 * epsilon1**-2 * ln n) coordinates drawn uniformly
    with replacement; epsilon1 is half the per-coordinate relative error
    budget t / d.
    """

    sampled_dim: int
    indices: tuple[int, ...]
    epsilon1: Fraction


def make_sample_plan(d: int, t, n: int, seed: int) -> SamplePlan:
    t = Fraction(t)
    if t <= 0:
        raise ValueError("t must be positive for a sample plan")
    eps1 = t / (2 * d)
    ln_n = math.log(max(n, 2))
    d1 = max(1, math.ceil(CHERNOFF_CONSTANT * float(eps1) ** -2 * ln_n))
    rng = random.Random(seed)
    indices = tuple(rng.randrange(d) for _ in range(d1))
    return SamplePlan(d1, indices, eps1)


def _restrict(vs: VectorSet, indices) -> VectorSet:
    rows = tuple(tuple(row[i] for i in indices) for row in vs.rows)
    return VectorSet(vs.kind, len(indices), rows)


def _weight_upper_bound(instance: Instance) -> int:
    wa = max(sum(row) for row in instance.a.rows)
    wb = max(sum(row) for row in instance.b.rows)
    return min(wa, wb)


def approx_additive(instance: Instance, t, seed: int):
    """Value v with |v - OPT| <= t, with probability >= 1 - 1/n over the seed.

    Trivial cases are answered directly: a budget of t >= d admits any value
    in [0, d] (the cheapest sound one is the row-weight upper bound), and a
    sample at least as long as d is replaced by an exact solve.
    """
    t = Fraction(t)
    if t < 0:
        raise ValueError("t must be >= 0")
    if instance.kind != BOOLEAN:
        raise ValueError("approx_additive expects a boolean instance")
    if instance.a.n == 0 or instance.b.n == 0:
        raise ValueError("empty instance")
    d = instance.d
    if t >= d:
        return Fraction(_weight_upper_bound(instance))
    n = max(instance.a.n, instance.b.n)
    if t == 0:
        value, _ = max_ip_exact(instance)
        return Fraction(value)
    plan = make_sample_plan(d, t, n, seed)
    if plan.sampled_dim >= d:
        value, _ = max_ip_exact(instance)
        return Fraction(value)
    small = Instance(_restrict(instance.a, plan.indices), _restrict(instance.b, plan.indices))
    sampled_opt, _ = max_ip_exact(small)
    return Fraction(sampled_opt * d, plan.sampled_dim)


def all_pair_additive(instance: Instance, t, seed: int):
    """Per-row values with |v_x - OPT(x, B)| <= t for every x simultaneously,
    failure probability <= 1/n over the shared sample plan."""
    t = Fraction(t)
    if t < 0:
        raise ValueError("t must be >= 0")
    if instance.kind != BOOLEAN:
        raise ValueError("all_pair_additive expects a boolean instance")
    if instance.a.n == 0 or instance.b.n == 0:
        raise ValueError("empty instance")
    d = instance.d
    if t >= d:
        wb = max(sum(row) for row in instance.b.rows)
        return [Fraction(min(sum(row), wb)) for row in instance.a.rows]
    n = max(instance.a.n, instance.b.n)
    exact_needed = t == 0
    plan = None
    if not exact_needed:
        plan = make_sample_plan(d, t, n, seed)
        exact_needed = plan.sampled_dim >= d
    if exact_needed:
        mb = instance.b
        out = []
        for row in instance.a.rows:
            single = Instance(VectorSet(BOOLEAN, d, (row,)), mb)
            value, _ = max_ip_exact(single)
            out.append(Fraction(value))
        return out
    small_b = _restrict(instance.b, plan.indices)
    out = []
    for row in instance.a.rows:
        small_row = tuple(row[i] for i in plan.indices)
        single = Instance(
            VectorSet(BOOLEAN, plan.sampled_dim, (small_row,)), small_b
        )
        sampled_opt, _ = max_ip_exact(single)
        out.append(Fraction(sampled_opt * d, plan.sampled_dim))
    return out


def pair_failure_probability_bound(plan: SamplePlan) -> float:
    """Chernoff tail bound 2 * exp(-2 * d1 * eps1**2) for one fixed pair."""
    return 2 * math.exp(-2 * plan.sampled_dim * float(plan.epsilon1) ** 2)
