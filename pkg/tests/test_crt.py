from itertools import product

import pytest

from maxip import core, crt
from maxip.core import max_ip_exact, orthogonal_decide


def test_build_direct_examples():
    red = crt.build_reduction(2, 3)
    assert red.inner is None and red.primes == (5, 7)
    red = crt.build_reduction(1, 2)
    assert red.inner is None and red.primes == (3,)
    red = crt.build_reduction(3, 4)
    assert red.primes == (5, 7, 11)


def test_build_recursive_example():
    red = crt.build_reduction(4, 2)
    assert red.inner is not None
    assert red.inner.block_bits == 1
    assert red.primes == (37, 41, 43, 47)
    assert red.inner.primes == (3,)


def test_build_deep_recursion_structure():
    red = crt.build_reduction(4096, 2)
    assert red.inner is not None and red.inner.inner is not None
    assert red.inner.block_bits == 2
    assert red.inner.inner.block_bits == 1
    assert red.inner.inner.inner is None
    assert crt.apply_reduction(red, [0] * red.input_bits) == (0, 0)


def test_build_rejects_bad_parameters():
    with pytest.raises(ValueError):
        crt.build_reduction(0, 3)
    with pytest.raises(ValueError):
        crt.build_reduction(2, 1)


def test_apply_example_by_hand_crt():
    red = crt.build_reduction(2, 3)
    assert crt.apply_reduction(red, (1, 0, 0, 1, 1, 1)) == (21, 15, 1)
    assert crt.apply_reduction(red, [0] * 6) == (0, 0, 0)
    # shorter inputs are zero padded on the right
    assert crt.apply_reduction(red, (1, 0)) == (21, 0, 0)
    with pytest.raises(ValueError):
        crt.apply_reduction(red, [0] * 7)


def test_membership_examples():
    red = crt.build_reduction(2, 3)
    assert crt.witnesses_orthogonality(red, 35)
    assert crt.witnesses_orthogonality(red, 0)
    assert not crt.witnesses_orthogonality(red, 21)
    assert not crt.witnesses_orthogonality(red, -5)
    assert not crt.witnesses_orthogonality(red, red.max_dot + 35)


def test_certificate_counts():
    red = crt.build_reduction(2, 3)
    cert = crt.certificate_values(red)
    assert red.max_dot == 3 * 34 ** 2 == 3468
    assert len(cert) == 3468 // 35 + 1 == 100
    assert crt.certificate_values(crt.build_reduction(1, 2)).members == (0, 3, 6)


def test_certificate_agrees_with_membership_over_range():
    for block_bits, groups in ((2, 3), (1, 4), (1, 2), (3, 4)):
        red = crt.build_reduction(block_bits, groups)
        cert = crt.certificate_values(red)
        explicit = set(cert.members)
        for v in range(red.max_dot + 1):
            assert (v in explicit) == crt.witnesses_orthogonality(red, v)
        # binary-search containment agrees with the set
        for v in (0, 1, cert.members[-1], red.max_dot):
            assert (v in cert) == (v in explicit)


def test_certificate_budget_error():
    red = crt.build_reduction(4, 2)
    with pytest.raises(ValueError, match="budget"):
        crt.certificate_values(red, budget=1000)


def test_decode_example():
    red = crt.build_reduction(2, 3)
    assert crt.decode_dot(red, 667) == 4
    assert crt.decode_dot(red, 0) == 0


def exhaustive_check(block_bits, groups):
    red = crt.build_reduction(block_bits, groups)
    bound = red.groups ** crt.bound_exponent(red.block_bits)
    encodings = {}
    for bits in product((0, 1), repeat=red.input_bits):
        enc = crt.apply_reduction(red, bits)
        assert all(0 <= c < red.coord_bound for c in enc)
        assert all(c < bound for c in enc)
        encodings[bits] = enc
    for x, ex in encodings.items():
        for y, ey in encodings.items():
            bit_dot = sum(a * b for a, b in zip(x, y))
            v = sum(a * b for a, b in zip(ex, ey))
            assert (bit_dot == 0) == crt.witnesses_orthogonality(red, v)
            assert crt.decode_dot(red, v) == bit_dot


def test_equivalence_and_decode_exhaustive_small():
    exhaustive_check(2, 3)
    exhaustive_check(1, 4)


def test_equivalence_recursive_exhaustive():
    exhaustive_check(4, 2)


def test_recursive_residues_never_wrap():
    red = crt.build_reduction(4, 2)
    inner = red.inner
    for x in product((0, 1), repeat=inner.input_bits):
        ex = crt.apply_reduction(inner, x)
        for y in product((0, 1), repeat=inner.input_bits):
            ey = crt.apply_reduction(inner, y)
            assert sum(a * b for a, b in zip(ex, ey)) < min(red.primes)


def test_level_sets_partition_and_decode():
    red = crt.build_reduction(2, 3)
    levels = crt.level_sets(red)
    seen = set()
    for k, values in enumerate(levels.sets):
        for v in values:
            assert crt.decode_dot(red, v) == k
            assert v not in seen
            seen.add(v)
    # every realizable encoded dot product lands in its level set
    for x in product((0, 1), repeat=red.input_bits):
        ex = crt.apply_reduction(red, x)
        for y in product((0, 1), repeat=red.input_bits):
            ey = crt.apply_reduction(red, y)
            v = sum(a * b for a, b in zip(ex, ey))
            k = sum(a * b for a, b in zip(x, y))
            assert v in levels.sets[k]


def test_ov_to_zov_counts_and_answers():
    inst = core.gen_planted_orthogonal(8, 6, 3)
    emitted = crt.ov_to_zov(inst, 3)
    assert len(emitted) == 100
    assert all(e.d == 4 for e in emitted)
    assert any(orthogonal_decide(e)[0] for e in emitted)

    ones = core.Instance(core.boolean_set([(1,) * 6] * 4), core.boolean_set([(1,) * 6] * 4))
    assert not any(orthogonal_decide(e)[0] for e in crt.ov_to_zov(ones, 3))


def test_ov_to_zov_answer_preserving_sweep():
    for seed in range(40):
        if seed % 2:
            inst = core.gen_planted_orthogonal(6, 6, seed)
        else:
            inst = core.gen_random_instance(6, 6, 0.5, seed)
        want, _ = orthogonal_decide(inst)
        got = any(orthogonal_decide(e)[0] for e in crt.ov_to_zov(inst, 3))
        assert got == want


def test_maxip_via_crt_queries():
    def solver(query):
        value, _ = max_ip_exact(query)
        return value == 0

    zeros = core.Instance(core.boolean_set([(0,) * 6] * 2), core.boolean_set([(0,) * 6] * 2))
    assert crt.maxip_via_crt_queries(zeros, 3, solver) == 0
    ones = core.Instance(core.boolean_set([(1,) * 6] * 2), core.boolean_set([(1,) * 6] * 2))
    assert crt.maxip_via_crt_queries(ones, 3, solver) == 6
    inst = core.gen_random_instance(6, 6, 0.5, 2)
    want, _ = max_ip_exact(inst)
    assert crt.maxip_via_crt_queries(inst, 3, solver) == want


def test_validate_candidate_reduction():
    identity = {x: x for x in product((0, 1), repeat=2)}
    cert = crt.validate_candidate_reduction(identity)
    assert cert is not None and cert.members == (0,)
    collapsed = {x: (0, 0) for x in product((0, 1), repeat=2)}
    assert crt.validate_candidate_reduction(collapsed) is None


def test_validate_accepts_real_reduction_table():
    red = crt.build_reduction(2, 3)
    table = {
        bits: crt.apply_reduction(red, bits)
        for bits in product((0, 1), repeat=red.input_bits)
    }
    cert = crt.validate_candidate_reduction(table)
    assert cert is not None
    assert all(crt.witnesses_orthogonality(red, v) for v in cert.members)


def test_brute_force_search():
    found = crt.brute_force_search_reduction(1, 2, 2)
    assert found is not None
    table, cert = found
    assert crt.validate_candidate_reduction(table) is not None
    assert crt.brute_force_search_reduction(1, 2, 1) is None
    with pytest.raises(ValueError, match="budget"):
        crt.brute_force_search_reduction(2, 2, 3, budget=1000)
