from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maxip import core


def test_gen_random_extreme_densities():
    zeros = core.gen_random(2, 3, 0.0, 7)
    assert all(row == (0, 0, 0) for row in zeros.rows)
    ones = core.gen_random(2, 3, 1.0, 7)
    assert all(row == (1, 1, 1) for row in ones.rows)


def test_gen_random_deterministic():
    a = core.gen_random(8, 6, 0.5, 1)
    b = core.gen_random(8, 6, 0.5, 1)
    assert a == b
    c = core.gen_random(8, 6, 0.5, 2)
    assert a != c


def test_planted_instance_has_orthogonal_pair():
    for seed in range(20):
        inst = core.gen_planted_orthogonal(16, 8, seed)
        yes, witness = core.orthogonal_decide(inst)
        assert yes
        x = inst.a.rows[witness.index_a]
        y = inst.b.rows[witness.index_b]
        assert sum(a * b for a, b in zip(x, y)) == 0


def test_planted_single_pair():
    inst = core.gen_planted_orthogonal(1, 2, 0)
    assert sum(a * b for a, b in zip(inst.a.rows[0], inst.b.rows[0])) == 0


def test_planted_deterministic():
    assert core.gen_planted_orthogonal(16, 8, 3) == core.gen_planted_orthogonal(16, 8, 3)


def test_max_ip_exact_examples():
    inst = core.Instance(core.boolean_set([(1, 1, 0)]), core.boolean_set([(1, 0, 1)]))
    assert core.max_ip_exact(inst) == (1, (0, 0))
    zero = core.Instance(core.boolean_set([(0, 0)]), core.boolean_set([(0, 0)]))
    assert core.max_ip_exact(zero) == (0, (0, 0))


def test_max_ip_matches_recomputation():
    inst = core.gen_random_instance(8, 6, 0.5, 1)
    value, pair = core.max_ip_exact(inst)
    dots = {}
    for i, x in enumerate(inst.a.rows):
        for j, y in enumerate(inst.b.rows):
            dots[(i, j)] = sum(a * b for a, b in zip(x, y))
    assert value == max(dots.values())
    assert dots[tuple(pair)] == value
    assert all(value >= v for v in dots.values())
    # lexicographic tie break: no earlier pair attains the maximum
    for key in sorted(dots):
        if dots[key] == value:
            assert key == tuple(pair)
            break


def test_max_ip_integer_and_rational():
    inst = core.Instance(
        core.integer_set([(-3, 5), (2, 2)]), core.integer_set([(4, 1), (0, -7)])
    )
    value, pair = core.max_ip_exact(inst)
    assert value == 10 and tuple(pair) == (1, 0)
    rinst = core.Instance(
        core.rational_set([(Fraction(1, 2), 1)]), core.rational_set([(2, Fraction(1, 3))])
    )
    value, _ = core.max_ip_exact(rinst)
    assert value == Fraction(4, 3)


def test_empty_instance_errors():
    empty = core.Instance(core.boolean_set([], d=3), core.boolean_set([(1, 0, 1)]))
    with pytest.raises(ValueError, match="empty"):
        core.max_ip_exact(empty)
    with pytest.raises(ValueError, match="empty"):
        core.orthogonal_decide(empty)


def test_orthogonal_decide_examples():
    yes = core.Instance(core.boolean_set([(1, 0)]), core.boolean_set([(0, 1)]))
    assert core.orthogonal_decide(yes) == (True, (0, 0))
    no = core.Instance(core.boolean_set([(1, 1)]), core.boolean_set([(1, 1)]))
    assert core.orthogonal_decide(no) == (False, None)


def test_orthogonal_decide_matches_enumeration():
    for seed in range(30):
        inst = core.gen_random_instance(10, 4, 0.4, seed)
        yes, witness = core.orthogonal_decide(inst)
        found = [
            (i, j)
            for i, x in enumerate(inst.a.rows)
            for j, y in enumerate(inst.b.rows)
            if sum(a * b for a, b in zip(x, y)) == 0
        ]
        assert yes == bool(found)
        if found:
            assert tuple(witness) == found[0]


def test_sides_may_differ_in_count():
    inst = core.Instance(core.boolean_set([(1, 0)]), core.boolean_set([(1, 1), (0, 1)]))
    value, pair = core.max_ip_exact(inst)
    assert value == 1 and tuple(pair) == (0, 0)


def test_vector_set_validation():
    with pytest.raises(ValueError):
        core.VectorSet("boolean", 2, ((0, 2),))
    with pytest.raises(ValueError):
        core.VectorSet("real", 1, ((Fraction(-1, 2),),))
    with pytest.raises(ValueError):
        core.Instance(core.boolean_set([(1,)]), core.boolean_set([(1, 0)]))


def test_power_sum_estimate_examples():
    assert core.power_sum_estimate([3], 5) == 3
    assert core.power_sum_estimate([2, 2, 2, 2], 2) == 4
    assert core.power_sum_estimate([0, 0], 3) == 0
    with pytest.raises(ValueError):
        core.power_sum_estimate([1, 2], 0)


@settings(max_examples=200, deadline=None)
@given(
    st.lists(st.integers(min_value=0, max_value=50), min_size=1, max_size=12),
    st.integers(min_value=1, max_value=6),
)
def test_power_sum_estimate_bracket(values, k):
    est = core.power_sum_estimate(values, k)
    vmax = max(values)
    assert est >= vmax
    assert est ** k <= Fraction(len(values)) * Fraction(vmax) ** k


def test_power_sum_estimate_bracket_many_seeds():
    import random

    for seed in range(1000):
        rng = random.Random(seed)
        m = rng.randint(1, 10)
        values = [Fraction(rng.randint(0, 40), rng.randint(1, 5)) for _ in range(m)]
        k = rng.randint(1, 5)
        est = core.power_sum_estimate(values, k)
        vmax = max(values)
        assert vmax <= est
        assert est ** k <= m * vmax ** k
