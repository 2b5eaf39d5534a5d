import random
from fractions import Fraction

import pytest

from maxip import core, sampling


def test_all_ones_is_exact():
    d = 6
    inst = core.Instance(
        core.boolean_set([(1,) * d] * 2), core.boolean_set([(1,) * d] * 2)
    )
    assert sampling.approx_additive(inst, 2, 0) == d


def test_budget_of_dimension_is_vacuous():
    inst = core.gen_random_instance(4, 8, 0.5, 1)
    opt, _ = core.max_ip_exact(inst)
    value = sampling.approx_additive(inst, 8, 0)
    assert abs(value - opt) <= 8


def test_zero_budget_exact_fallback():
    inst = core.gen_random_instance(6, 10, 0.5, 2)
    opt, _ = core.max_ip_exact(inst)
    assert sampling.approx_additive(inst, 0, 3) == opt


def test_small_dimension_exact_fallback():
    # the plan length exceeds d, so the solve is exact
    inst = core.gen_random_instance(4, 8, 0.6, 4)
    opt, _ = core.max_ip_exact(inst)
    for seed in range(50):
        assert sampling.approx_additive(inst, 4, seed) == opt


def test_deterministic_given_seed():
    inst = core.gen_random_instance(8, 4096, 0.5, 7)
    t = 2048
    a = sampling.approx_additive(inst, t, 11)
    b = sampling.approx_additive(inst, t, 11)
    assert a == b


def test_sampled_path_respects_bound():
    # big d, large budget: the plan is shorter than d, so sampling really runs
    inst = core.gen_random_instance(8, 4096, 0.5, 3)
    t = Fraction(2048)
    plan = sampling.make_sample_plan(inst.d, t, 8, 0)
    assert plan.sampled_dim < inst.d
    opt, _ = core.max_ip_exact(inst)
    failures = sum(
        abs(sampling.approx_additive(inst, t, seed) - opt) > t for seed in range(40)
    )
    assert failures == 0


def test_negative_budget_rejected():
    inst = core.gen_random_instance(2, 4, 0.5, 0)
    with pytest.raises(ValueError):
        sampling.approx_additive(inst, -1, 0)


def test_chernoff_bound_within_factor_two():
    # fixed pair with relative overlap 1/2; compare empirical tail frequency
    # against 2 * exp(-2 * d1 * eps1^2)
    d = 200
    x = tuple(1 if i % 2 == 0 else 0 for i in range(d))
    y = tuple(1 for _ in range(d))
    overlap = Fraction(sum(a * b for a, b in zip(x, y)), d)
    d1 = 60
    eps1 = Fraction(3, 20)
    bound = sampling.pair_failure_probability_bound(
        sampling.SamplePlan(d1, (), eps1)
    )
    trials = 10_000
    rng = random.Random(123)
    failures = 0
    for _ in range(trials):
        idx = [rng.randrange(d) for _ in range(d1)]
        sampled = Fraction(sum(x[i] * y[i] for i in idx), d1)
        if abs(sampled - overlap) >= eps1:
            failures += 1
    assert failures / trials < 2 * bound


def test_all_pair_additive_contains_self():
    # the all-ones row meets itself on every sampled coordinate, so its
    # estimate is exactly d
    d = 4096
    ones = (1,) * d
    side_a = core.boolean_set([ones] + list(core.gen_random(3, d, 0.5, 5).rows))
    side_b = core.boolean_set([ones] + list(core.gen_random(3, d, 0.5, 6).rows))
    inst = core.Instance(side_a, side_b)
    values = sampling.all_pair_additive(inst, 2048, 9)
    assert values[0] == d


def test_all_pair_additive_bounds():
    inst = core.gen_random_instance(8, 64, 0.5, 6)
    t = Fraction(16)
    good = 0
    trials = 24
    for seed in range(trials):
        values = sampling.all_pair_additive(inst, t, seed)
        ok = True
        for i, row in enumerate(inst.a.rows):
            row_opt = max(sum(a * b for a, b in zip(row, y)) for y in inst.b.rows)
            if abs(values[i] - row_opt) > t:
                ok = False
        good += ok
    assert good >= trials * 7 // 8


def test_all_pair_additive_exact_fallback():
    inst = core.gen_random_instance(5, 6, 0.5, 8)
    values = sampling.all_pair_additive(inst, 0, 0)
    for i, row in enumerate(inst.a.rows):
        row_opt = max(sum(a * b for a, b in zip(row, y)) for y in inst.b.rows)
        assert values[i] == row_opt
